#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/psl2z.hpp"

namespace braidwalk {

using NodeId = std::uint32_t;

// Interned normal forms of PSL(2,Z). Normal forms are prefix-closed, so
// they form a rooted tree: each node is its parent followed by one
// syllable. Right multiplication by a syllable is a constant-time move to
// the parent, a sibling, or a child. Ids are stable; nodes are never
// removed.
class NormalFormTree {
 public:
  static constexpr NodeId kIdentity = 0;
  static constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

  explicit NormalFormTree(std::size_t node_limit = 200'000'000);

  NodeId multiply(NodeId x, Syllable s);
  NodeId multiply(NodeId x, std::span<const Syllable> ys);
  NodeId multiply(NodeId x, const Psl2NormalForm& y) { return multiply(x, y.syllables()); }

  NodeId intern(const Psl2NormalForm& g);
  std::optional<NodeId> find(const Psl2NormalForm& g) const;
  Psl2NormalForm normal_form(NodeId x) const;

  NodeId parent(NodeId x) const { return nodes_[x].parent; }
  Syllable last(NodeId x) const { return nodes_[x].last; }
  std::uint32_t depth(NodeId x) const { return nodes_[x].depth; }
  std::int64_t section_exponent(NodeId x) const { return nodes_[x].section_exp; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    NodeId parent;
    std::uint32_t depth;
    std::int32_t section_exp;
    std::array<NodeId, 3> child;
    Syllable last;
  };
  NodeId child(NodeId x, Syllable s);

  std::size_t node_limit_;
  std::vector<Node> nodes_;
};

// One walk generator seen from PSL(2,Z): its projected syllables, the flux
// c(g) of its own central decomposition and its exponent weight.
struct ProjectedGenerator {
  Letter letter;
  Psl2NormalForm image;
  std::int64_t flux;
  int exponent;
};

std::array<ProjectedGenerator, 4> projected_generators(Alphabet a);

// Right multiplication of a (node, flux) state by a generator, using the
// product rule (m, x)(c, π g) = (m + c + Θ(x, π g), x·π g).
struct TreeStep {
  NodeId node;
  std::int64_t flux_delta;
};
TreeStep step(NormalFormTree& tree, NodeId x, const ProjectedGenerator& g);

}  // namespace braidwalk
