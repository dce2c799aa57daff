#include "braidwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "braidwalk/errors.hpp"
#include "braidwalk/psl_geodesic.hpp"

namespace braidwalk {

StepMeasure StepMeasure::uniform(Alphabet a) {
  const Rational q(1, 4);
  return {a, {q, q, q, q}};
}

StepMeasure StepMeasure::from_weights(Alphabet a, std::array<Rational, 4> w) {
  Rational sum = 0;
  for (const auto& x : w) {
    if (x < 0) throw std::invalid_argument("StepMeasure: negative weight");
    sum += x;
  }
  if (sum != 1) throw std::invalid_argument("StepMeasure: weights must sum to 1");
  return {a, std::move(w)};
}

namespace {

template <class W>
W from_rational(const Rational& r) {
  if constexpr (std::is_same_v<W, Rational>) return r;
  else return to_double(r);
}

// Dense run of weights over consecutive flux values at one node.
template <class W>
struct FluxRow {
  std::int64_t lo = 0;
  std::vector<W> w;

  void add_scaled(const FluxRow& src, std::int64_t shift, const W& scale) {
    const std::int64_t slo = src.lo + shift;
    const std::int64_t shi = slo + static_cast<std::int64_t>(src.w.size());
    if (w.empty()) {
      lo = slo;
      w.assign(src.w.size(), W(0));
    } else {
      const std::int64_t hi = lo + static_cast<std::int64_t>(w.size());
      if (slo < lo) {
        w.insert(w.begin(), static_cast<std::size_t>(lo - slo), W(0));
        lo = slo;
      }
      if (shi > hi) w.resize(static_cast<std::size_t>(shi - lo), W(0));
    }
    const auto off = static_cast<std::size_t>(slo - lo);
    for (std::size_t i = 0; i < src.w.size(); ++i)
      if (src.w[i] != 0) w[off + i] += src.w[i] * scale;
  }
};

template <class W>
FluxedDistribution<W> evolve(const StepMeasure& m, int n, EvolveOptions opt, bool prune) {
  if (n < 0) throw std::invalid_argument("exact_evolve: negative step count");
  FluxedDistribution<W> out;
  out.n = n;
  out.alphabet = m.alphabet;
  out.scope = prune ? Scope::ReturnOnly : Scope::Full;
  out.tree = std::make_shared<NormalFormTree>();
  NormalFormTree& tree = *out.tree;

  const auto gens = projected_generators(m.alphabet);
  std::array<W, 4> weight;
  for (std::size_t i = 0; i < 4; ++i) weight[i] = from_rational<W>(m.weights[i]);

  std::optional<PslGeodesicTable> lengths;
  if (prune && m.alphabet == Alphabet::S) {
    lengths.emplace(tree, Alphabet::S);
    lengths->ensure_radius((n + 1) / 2);
  }
  auto too_far = [&](NodeId x, int remaining) {
    if (m.alphabet == Alphabet::Sprime) return static_cast<int>(tree.depth(x)) > remaining;
    const auto d = lengths->distance(x);
    return !d || *d > remaining;
  };

  using Map = std::unordered_map<NodeId, FluxRow<W>>;
  Map cur;
  cur[NormalFormTree::kIdentity] = FluxRow<W>{0, {W(1)}};
  for (int k = 0; k < n; ++k) {
    const int remaining = n - k - 1;
    const bool check = prune && k + 1 > remaining;
    Map next;
    next.reserve(cur.size() * 2);
    std::size_t entries = 0;
    for (const auto& [node, row] : cur) {
      for (std::size_t i = 0; i < 4; ++i) {
        if (weight[i] == 0) continue;
        const TreeStep s = step(tree, node, gens[i]);
        if (check && too_far(s.node, remaining)) continue;
        FluxRow<W>& dest = next[s.node];
        const std::size_t before = dest.w.size();
        dest.add_scaled(row, s.flux_delta, weight[i]);
        entries += dest.w.size() - before;
      }
      if (entries > opt.max_states)
        throw ResourceError("exact_evolve: more than " + std::to_string(opt.max_states) +
                            " states at step " + std::to_string(k + 1));
    }
    cur = std::move(next);
  }

  for (const auto& [node, row] : cur)
    for (std::size_t i = 0; i < row.w.size(); ++i)
      if (row.w[i] != 0)
        out.entries.push_back({node, row.lo + static_cast<std::int64_t>(i), row.w[i]});
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    return a.node != b.node ? a.node < b.node : a.flux < b.flux;
  });

  if constexpr (std::is_same_v<W, double>) {
    if (!prune && std::abs(out.total_mass() - 1.0) > 1e-12)
      throw InvariantError("exact_evolve: mass drifted from 1 by more than 1e-12");
  } else {
    if (!prune && out.total_mass() != 1)
      throw InvariantError("exact_evolve: exact mass is not 1");
  }
  return out;
}

}  // namespace

template <class W>
W FluxedDistribution<W>::total_mass() const {
  W s = 0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

template <class W>
W FluxedDistribution<W>::mass_at(const Psl2NormalForm& g, std::int64_t flux) const {
  const auto node = tree->find(g);
  if (!node) return W(0);
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(*node, flux),
                             [](const FluxedEntry<W>& e, const std::pair<NodeId, std::int64_t>& k) {
                               return e.node != k.first ? e.node < k.first : e.flux < k.second;
                             });
  if (it != entries.end() && it->node == *node && it->flux == flux) return it->weight;
  return W(0);
}

template <class W>
FluxedDistribution<W> exact_evolve(const StepMeasure& m, int n, EvolveOptions opt) {
  return evolve<W>(m, n, opt, false);
}

template <class W>
FluxedDistribution<W> return_evolve(const StepMeasure& m, int n, EvolveOptions opt) {
  return evolve<W>(m, n, opt, true);
}

template <class W>
W trivial_braid_probability(const FluxedDistribution<W>& d) {
  W s = 0;
  for (const auto& e : d.entries)
    if (e.node == NormalFormTree::kIdentity && e.flux == 0) s += e.weight;
  return s;
}

template <class W>
W psl_return_probability(const FluxedDistribution<W>& d) {
  W s = 0;
  for (const auto& e : d.entries)
    if (e.node == NormalFormTree::kIdentity) s += e.weight;
  return s;
}

template <class W>
std::map<std::int64_t, W> flux_distribution(const FluxedDistribution<W>& d) {
  std::map<std::int64_t, W> out;
  for (const auto& e : d.entries)
    if (e.node == NormalFormTree::kIdentity) out[e.flux] += e.weight;
  return out;
}

template <class W>
W ends_in_b_probability(const FluxedDistribution<W>& d) {
  if (d.scope != Scope::Full)
    throw std::invalid_argument("ends_in_b_probability: needs a full distribution");
  W s = 0;
  for (const auto& e : d.entries)
    if (e.node != NormalFormTree::kIdentity && is_b_type(d.tree->last(e.node))) s += e.weight;
  return s;
}

void StackWalker::push(Syllable s) {
  if (nf_.empty()) {
    nf_.push_back(s);
  } else {
    const Syllable last = nf_.back();
    if (last == Syllable::A && s == Syllable::A) {
      nf_.pop_back();
      section_exp_ -= 3;
      --a_count_;
      return;
    }
    if (is_b_type(last) && is_b_type(s)) {
      const int e = (b_exponent(last) + b_exponent(s)) % 3;
      section_exp_ -= section_exponent(last);
      if (e == 0) {
        nf_.pop_back();
      } else {
        nf_.back() = static_cast<Syllable>(e);
        section_exp_ += section_exponent(nf_.back());
      }
      return;
    }
    nf_.push_back(s);
  }
  section_exp_ += section_exponent(s);
  if (s == Syllable::A) ++a_count_;
}

void StackWalker::apply(const ProjectedGenerator& g) {
  const std::int64_t before = section_exp_;
  for (Syllable s : g.image.syllables()) push(s);
  const std::int64_t theta = before + section_exponent(g.image) - section_exp_;
  if (theta % 6 != 0) throw InvariantError("StackWalker: cocycle value is not an integer");
  flux_ += g.flux + theta / 6;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using boost::multiprecision::cpp_int;

std::uint64_t threshold(const Rational& cumulative) {
  if (cumulative >= 1) return std::numeric_limits<std::uint64_t>::max();
  const cpp_int scaled = (numerator(cumulative) << 64) / denominator(cumulative);
  return scaled.convert_to<std::uint64_t>();
}

}  // namespace

LetterSampler::LetterSampler(const StepMeasure& m, std::uint64_t seed) : state_(seed) {
  Rational cum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    cum += m.weights[i];
    cut_[i] = threshold(cum);
  }
  for (std::size_t i = 0; i < 4; ++i)
    if (m.weights[i] != 0) last_ = i;
}

std::size_t LetterSampler::next() {
  // splitmix64 stream: fixed, platform-independent output sequence.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  for (std::size_t i = 0; i < 3 && i < last_; ++i)
    if (z < cut_[i]) return i;
  return last_;
}

WalkSample sample_walk(const StepMeasure& m, int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_walk: negative step count");
  WalkSample out;
  out.seed = seed;
  out.alphabet = m.alphabet;
  out.tree = std::make_shared<NormalFormTree>();
  const auto gens = projected_generators(m.alphabet);
  LetterSampler sampler(m, seed);
  out.nodes.push_back(NormalFormTree::kIdentity);
  out.fluxes.push_back(0);
  for (int i = 0; i < n; ++i) {
    const std::size_t gi = sampler.next();
    const TreeStep s = step(*out.tree, out.nodes.back(), gens[gi]);
    out.letters.push_back(gens[gi].letter);
    out.nodes.push_back(s.node);
    out.fluxes.push_back(out.fluxes.back() + s.flux_delta);
  }
  return out;
}

namespace {

std::int64_t sprime_lift_cost(std::int64_t flux, std::size_t a_syllables) {
  const auto na = static_cast<std::int64_t>(a_syllables);
  std::int64_t residual = 0;
  if (flux > 0) residual = flux;
  else if (-flux > na) residual = -flux - na;
  return 2 * residual;
}

std::int64_t s_lift_cost(std::int64_t flux, const Psl2NormalForm& g, const PslGeodesic& geo) {
  const std::int64_t diff = exponent_sum(geo.word) - section_exponent(g);
  if (diff % 6 != 0) throw InvariantError("central_lift_cost: geodesic lift off the centre");
  const std::int64_t k = diff / 6;
  return 6 * std::abs(flux - k);
}

}  // namespace

std::int64_t central_lift_cost(const CentralPair& p, Alphabet a) {
  if (a == Alphabet::Sprime) {
    const auto syl = p.gamma.syllables();
    return sprime_lift_cost(p.flux, static_cast<std::size_t>(
                                        std::count(syl.begin(), syl.end(), Syllable::A)));
  }
  return s_lift_cost(p.flux, p.gamma, psl_geodesic_s(p.gamma));
}

namespace {

struct DriftSums {
  double lower = 0, lower_sq = 0, cost = 0;
};

DriftSums drift_block(const StepMeasure& m, int n, std::uint64_t seed, std::size_t begin,
                      std::size_t end) {
  const auto gens = projected_generators(m.alphabet);
  DriftSums sums;
  for (std::size_t i = begin; i < end; ++i) {
    LetterSampler sampler(m, derive_seed(seed, i));
    StackWalker walker;
    for (int k = 0; k < n; ++k) walker.apply(gens[sampler.next()]);
    double length = 0, cost = 0;
    if (m.alphabet == Alphabet::Sprime) {
      length = static_cast<double>(walker.syllables().size());
      cost = static_cast<double>(sprime_lift_cost(walker.flux(), walker.a_syllables()));
    } else {
      const Psl2NormalForm g(walker.syllables());
      const PslGeodesic geo = psl_geodesic_s(g);
      length = static_cast<double>(geo.length);
      cost = static_cast<double>(s_lift_cost(walker.flux(), g, geo));
    }
    const double lo = length / n;
    sums.lower += lo;
    sums.lower_sq += lo * lo;
    sums.cost += cost;
  }
  return sums;
}

}  // namespace

DriftEstimate drift_estimate(const StepMeasure& m, int n, std::size_t samples,
                             std::uint64_t seed, unsigned workers) {
  if (samples < 1) throw std::invalid_argument("drift_estimate: need at least one sample");
  if (n < 1) throw std::invalid_argument("drift_estimate: need n >= 1");
  const std::size_t blocks = std::clamp<std::size_t>(workers, 1, samples);
  std::vector<DriftSums> parts(blocks);
  std::vector<std::thread> pool;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t begin = samples * b / blocks, end = samples * (b + 1) / blocks;
    if (blocks == 1) parts[b] = drift_block(m, n, seed, begin, end);
    else pool.emplace_back([&, b, begin, end] { parts[b] = drift_block(m, n, seed, begin, end); });
  }
  for (auto& t : pool) t.join();
  DriftSums total;
  for (const auto& p : parts) {
    total.lower += p.lower;
    total.lower_sq += p.lower_sq;
    total.cost += p.cost;
  }

  DriftEstimate d;
  d.n = n;
  d.samples = samples;
  const auto s = static_cast<double>(samples);
  d.lower = total.lower / s;
  d.mean_lift_cost = total.cost / s;
  d.upper = d.lower + d.mean_lift_cost / n;
  d.point = 0.5 * (d.lower + d.upper);
  const double var =
      samples > 1 ? std::max(0.0, (total.lower_sq - total.lower * total.lower / s) / (s - 1)) : 0.0;
  d.lower_stderr = std::sqrt(var / s);
  return d;
}

template <class W>
DriftEstimate drift_exact(const FluxedDistribution<W>& d) {
  if (d.scope != Scope::Full) throw std::invalid_argument("drift_exact: needs a full distribution");
  if (d.n < 1) throw std::invalid_argument("drift_exact: needs n >= 1");
  DriftEstimate out;
  out.n = d.n;
  double lower = 0, cost = 0;
  for (const auto& e : d.entries) {
    const CentralPair p{e.flux, d.gamma(e)};
    const double w = to_double(e.weight);
    lower += w * static_cast<double>(psl_length(p.gamma, d.alphabet));
    cost += w * static_cast<double>(central_lift_cost(p, d.alphabet));
  }
  out.lower = lower / d.n;
  out.mean_lift_cost = cost;
  out.upper = out.lower + cost / d.n;
  out.point = 0.5 * (out.lower + out.upper);
  return out;
}

#define BRAIDWALK_INSTANTIATE(W)                                                          \
  template struct FluxedDistribution<W>;                                                  \
  template FluxedDistribution<W> exact_evolve<W>(const StepMeasure&, int, EvolveOptions); \
  template FluxedDistribution<W> return_evolve<W>(const StepMeasure&, int, EvolveOptions); \
  template W trivial_braid_probability<W>(const FluxedDistribution<W>&);                  \
  template W psl_return_probability<W>(const FluxedDistribution<W>&);                     \
  template std::map<std::int64_t, W> flux_distribution<W>(const FluxedDistribution<W>&);  \
  template W ends_in_b_probability<W>(const FluxedDistribution<W>&);                      \
  template DriftEstimate drift_exact<W>(const FluxedDistribution<W>&);

BRAIDWALK_INSTANTIATE(Rational)
BRAIDWALK_INSTANTIATE(double)

}  // namespace braidwalk
