#include "braidwalk/b3.hpp"

#include <unordered_map>
#include <unordered_set>

#include "braidwalk/burau.hpp"
#include "braidwalk/errors.hpp"
#include "braidwalk/nf_tree.hpp"

namespace braidwalk {

bool burau_equal(const BraidWord& w1, const BraidWord& w2) {
  return burau(w1) == burau(w2);
}

bool b3_equal(const BraidWord& w1, const BraidWord& w2) {
  const bool by_pair = central_decompose(w1) == central_decompose(w2);
  if (by_pair != burau_equal(w1, w2))
    throw InvariantError("b3_equal: central pairs and Burau matrices disagree for " +
                         w1.to_string() + " vs " + w2.to_string());
  return by_pair;
}

namespace {

// (node, flux) packed for hashing; |flux| stays far below 2^31.
std::uint64_t state_key(NodeId node, std::int64_t flux) {
  return (static_cast<std::uint64_t>(node) << 32) |
         static_cast<std::uint32_t>(static_cast<std::int32_t>(flux));
}

}  // namespace

std::optional<std::int64_t> b3_geodesic_length(const BraidWord& w, Alphabet a,
                                               int radius_cap) {
  if (radius_cap < 0) throw std::invalid_argument("b3_geodesic_length: negative radius cap");
  const CentralPair target = central_decompose(w);
  if (target.flux == 0 && target.gamma.is_identity()) return 0;

  NormalFormTree tree;
  const auto gens = projected_generators(a);
  // Target node is interned lazily: it only matters once reached.
  const NodeId target_node = tree.intern(target.gamma);
  const std::uint64_t goal = state_key(target_node, target.flux);

  // In a Cayley graph with a symmetric generating set, neighbours of sphere
  // d lie in spheres d-1, d, d+1, so three spheres suffice for dedup.
  std::unordered_set<std::uint64_t> prev, cur{state_key(NormalFormTree::kIdentity, 0)};
  std::vector<std::pair<NodeId, std::int64_t>> frontier{{NormalFormTree::kIdentity, 0}};
  for (int d = 1; d <= radius_cap; ++d) {
    std::unordered_set<std::uint64_t> next;
    std::vector<std::pair<NodeId, std::int64_t>> next_frontier;
    for (auto [x, f] : frontier) {
      for (const auto& g : gens) {
        const TreeStep s = step(tree, x, g);
        const std::uint64_t key = state_key(s.node, f + s.flux_delta);
        if (prev.contains(key) || cur.contains(key) || !next.insert(key).second) continue;
        if (key == goal) return d;
        next_frontier.emplace_back(s.node, f + s.flux_delta);
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
    frontier = std::move(next_frontier);
  }
  return std::nullopt;
}

FaithfulnessReport check_burau_faithfulness(Alphabet a, int radius) {
  FaithfulnessReport rep;
  rep.alphabet = a;
  rep.radius = radius;

  NormalFormTree tree;
  const auto gens = projected_generators(a);
  std::array<BurauMatrix, 4> gen_burau;
  for (std::size_t i = 0; i < 4; ++i) gen_burau[i] = burau(gens[i].letter);

  std::unordered_map<LaurentMatrix, std::uint64_t, LaurentMatrixHash> seen;
  struct Item {
    NodeId node;
    std::int64_t flux;
    BurauMatrix m;
  };
  std::unordered_set<std::uint64_t> prev, cur{state_key(NormalFormTree::kIdentity, 0)};
  std::vector<Item> frontier{{NormalFormTree::kIdentity, 0, LaurentMatrix::identity()}};
  seen.emplace(frontier.front().m, state_key(NormalFormTree::kIdentity, 0));
  rep.sphere_sizes.push_back(1);

  for (int d = 1; d <= radius; ++d) {
    std::unordered_set<std::uint64_t> next;
    std::vector<Item> next_frontier;
    for (const Item& it : frontier) {
      for (std::size_t i = 0; i < 4; ++i) {
        const TreeStep s = step(tree, it.node, gens[i]);
        const std::int64_t f = it.flux + s.flux_delta;
        const std::uint64_t key = state_key(s.node, f);
        if (prev.contains(key) || cur.contains(key) || !next.insert(key).second) continue;
        BurauMatrix m = it.m * gen_burau[i];
        auto [pos, fresh] = seen.emplace(m, key);
        if (!fresh && pos->second != key) ++rep.collisions;
        next_frontier.push_back({s.node, f, std::move(m)});
      }
    }
    rep.sphere_sizes.push_back(next_frontier.size());
    prev = std::move(cur);
    cur = std::move(next);
    frontier = std::move(next_frontier);
  }
  for (auto s : rep.sphere_sizes) rep.ball_size += s;
  return rep;
}

}  // namespace braidwalk
