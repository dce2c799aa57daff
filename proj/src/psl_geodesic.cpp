#include "braidwalk/psl_geodesic.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace braidwalk {

PslGeodesicTable::PslGeodesicTable(NormalFormTree& tree, Alphabet a)
    : tree_(tree), gens_(projected_generators(a)) {
  dist_.assign(tree_.size(), -1);
  dist_[NormalFormTree::kIdentity] = 0;
  frontier_.push_back(NormalFormTree::kIdentity);
  spheres_.push_back(1);
}

void PslGeodesicTable::ensure_radius(int r) {
  if (r > std::numeric_limits<std::int16_t>::max() - 1)
    throw std::invalid_argument("PslGeodesicTable: radius too large");
  while (radius_ < r) {
    std::vector<NodeId> next;
    for (NodeId x : frontier_) {
      for (const auto& g : gens_) {
        const NodeId y = tree_.multiply(x, g.image);
        if (y >= dist_.size()) dist_.resize(tree_.size(), -1);
        if (dist_[y] < 0) {
          dist_[y] = static_cast<std::int16_t>(radius_ + 1);
          next.push_back(y);
        }
      }
    }
    frontier_ = std::move(next);
    spheres_.push_back(frontier_.size());
    ++radius_;
  }
}

std::optional<int> PslGeodesicTable::distance(NodeId x) const {
  if (x < dist_.size() && dist_[x] >= 0) return dist_[x];
  return std::nullopt;
}

std::size_t PslGeodesicTable::ball_size() const noexcept {
  return std::accumulate(spheres_.begin(), spheres_.end(), std::size_t{0});
}

namespace {

// A tube element: the normal form γ[0, k) followed by a deviation δ whose
// first syllable differs from γ[k].
struct TubeNode {
  std::uint32_t k = 0;
  std::vector<Syllable> delta;
};

std::uint64_t pack(const TubeNode& t) {
  std::uint64_t key = static_cast<std::uint64_t>(t.k) << 24;
  key |= static_cast<std::uint64_t>(t.delta.size()) << 20;
  for (std::size_t i = 0; i < t.delta.size(); ++i)
    key |= static_cast<std::uint64_t>(t.delta[i]) << (2 * i);
  return key;
}

TubeNode unpack(std::uint64_t key) {
  TubeNode t;
  t.k = static_cast<std::uint32_t>(key >> 24);
  const std::size_t len = (key >> 20) & 0xf;
  for (std::size_t i = 0; i < len; ++i)
    t.delta.push_back(static_cast<Syllable>((key >> (2 * i)) & 3));
  return t;
}

}  // namespace

PslGeodesic psl_geodesic_s(const Psl2NormalForm& g, int tube_radius) {
  if (tube_radius < 1 || tube_radius > 10)
    throw std::invalid_argument("psl_geodesic_s: tube radius must lie in [1, 10]");
  const auto target = g.syllables();
  const auto len = static_cast<std::uint32_t>(target.size());
  const auto gens = projected_generators(Alphabet::S);

  auto apply = [&](const TubeNode& t, const Psl2NormalForm& img) -> std::optional<TubeNode> {
    const std::uint32_t base = t.k >= 3 ? t.k - 3 : 0;
    std::vector<Syllable> work(target.begin() + base, target.begin() + t.k);
    work.insert(work.end(), t.delta.begin(), t.delta.end());
    for (Syllable s : img.syllables()) push_syllable(work, s);
    std::size_t i = 0;
    while (i < work.size() && base + i < len && work[i] == target[base + i]) ++i;
    TubeNode out;
    out.k = base + static_cast<std::uint32_t>(i);
    out.delta.assign(work.begin() + static_cast<long>(i), work.end());
    if (out.delta.size() > static_cast<std::size_t>(tube_radius)) return std::nullopt;
    return out;
  };

  const std::uint64_t start = pack(TubeNode{});
  const std::uint64_t goal = pack(TubeNode{len, {}});
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint8_t>> parent;
  parent.emplace(start, std::make_pair(start, std::uint8_t{255}));
  std::vector<std::uint64_t> frontier{start};
  std::int64_t depth = 0;
  while (!parent.contains(goal)) {
    if (frontier.empty())
      throw std::logic_error("psl_geodesic_s: target unreachable inside the tube");
    std::vector<std::uint64_t> next;
    for (std::uint64_t key : frontier) {
      const TubeNode t = unpack(key);
      for (std::uint8_t gi = 0; gi < 4; ++gi) {
        auto moved = apply(t, gens[gi].image);
        if (!moved) continue;
        const std::uint64_t nk = pack(*moved);
        if (parent.emplace(nk, std::make_pair(key, gi)).second) next.push_back(nk);
      }
    }
    frontier = std::move(next);
    ++depth;
  }

  PslGeodesic out;
  out.length = depth;
  std::vector<Letter> rev;
  for (std::uint64_t key = goal; key != start;) {
    const auto& [prev, gi] = parent.at(key);
    rev.push_back(gens[gi].letter);
    key = prev;
  }
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.word.append(*it);
  return out;
}

namespace {

struct SharedSTable {
  std::mutex mu;
  NormalFormTree tree;
  PslGeodesicTable table{tree, Alphabet::S};
  SharedSTable() { table.ensure_radius(10); }
};

SharedSTable& shared_table() {
  static SharedSTable t;
  return t;
}

}  // namespace

std::int64_t psl_length_s(const Psl2NormalForm& g) {
  {
    auto& shared = shared_table();
    std::lock_guard lock(shared.mu);
    if (auto node = shared.tree.find(g))
      if (auto d = shared.table.distance(*node)) return *d;
  }
  return psl_geodesic_s(g).length;
}

}  // namespace braidwalk
