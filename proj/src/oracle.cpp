#include "braidwalk/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace braidwalk {

ExactDistribution brute_force_distribution(const StepMeasure& m, int n) {
  if (n < 0 || n > 10) throw std::invalid_argument("brute_force_distribution: n must be in [0, 10]");
  ExactDistribution out;
  out.n = n;
  out.alphabet = m.alphabet;
  out.tree = std::make_shared<NormalFormTree>();
  const auto gens = generators(m.alphabet);

  std::map<std::pair<NodeId, std::int64_t>, Rational> acc;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    Rational w = 1;
    BraidWord word(m.alphabet);
    for (int i = 0; i < n; ++i, c >>= 2) {
      w *= m.weights[c & 3];
      word.append(gens[c & 3]);
    }
    if (w == 0) continue;
    const CentralPair p = central_decompose(word);
    acc[{out.tree->intern(p.gamma), p.flux}] += w;
  }
  for (auto& [key, w] : acc) out.entries.push_back({key.first, key.second, w});
  return out;
}

namespace {

std::map<std::pair<Psl2NormalForm, std::int64_t>, Rational> keyed(const ExactDistribution& d) {
  std::map<std::pair<Psl2NormalForm, std::int64_t>, Rational> out;
  for (const auto& e : d.entries)
    if (e.weight != 0) out[{d.gamma(e), e.flux}] += e.weight;
  return out;
}

}  // namespace

OracleComparison compare_distributions(const ExactDistribution& left,
                                       const ExactDistribution& right) {
  const auto l = keyed(left);
  const auto r = keyed(right);
  OracleComparison out;
  out.entries_left = l.size();
  out.entries_right = r.size();
  auto note = [&](const auto& key, const Rational& a, const Rational& b) {
    ++out.mismatches;
    if (out.first_mismatch.empty())
      out.first_mismatch = key.first.to_string() + " f=" + std::to_string(key.second) + ": " +
                           a.str() + " vs " + b.str();
  };
  for (const auto& [key, w] : l) {
    auto it = r.find(key);
    const Rational other = it == r.end() ? Rational(0) : it->second;
    if (other != w) note(key, w, other);
  }
  for (const auto& [key, w] : r)
    if (!l.count(key)) note(key, Rational(0), w);
  out.match = out.mismatches == 0;
  return out;
}

}  // namespace braidwalk
