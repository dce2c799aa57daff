#include "braidwalk/nf_tree.hpp"

#include "braidwalk/errors.hpp"

namespace braidwalk {

NormalFormTree::NormalFormTree(std::size_t node_limit) : node_limit_(node_limit) {
  nodes_.push_back(Node{kNone, 0, 0, {kNone, kNone, kNone}, Syllable::A});
}

NodeId NormalFormTree::child(NodeId x, Syllable s) {
  const auto slot = static_cast<std::size_t>(s);
  NodeId c = nodes_[x].child[slot];
  if (c != kNone) return c;
  if (nodes_.size() >= node_limit_)
    throw ResourceError("normal-form table exceeded its node budget of " +
                        std::to_string(node_limit_));
  c = static_cast<NodeId>(nodes_.size());
  const Node& p = nodes_[x];
  nodes_.push_back(Node{x, p.depth + 1,
                        p.section_exp + braidwalk::section_exponent(s),
                        {kNone, kNone, kNone}, s});
  nodes_[x].child[slot] = c;
  return c;
}

NodeId NormalFormTree::multiply(NodeId x, Syllable s) {
  if (x == kIdentity) return child(x, s);
  const Node& n = nodes_[x];
  if (n.last == Syllable::A) {
    if (s == Syllable::A) return n.parent;
    return child(x, s);
  }
  if (s == Syllable::A) return child(x, s);
  const int e = (b_exponent(n.last) + b_exponent(s)) % 3;
  const NodeId p = n.parent;
  if (e == 0) return p;
  return child(p, static_cast<Syllable>(e));
}

NodeId NormalFormTree::multiply(NodeId x, std::span<const Syllable> ys) {
  for (Syllable s : ys) x = multiply(x, s);
  return x;
}

NodeId NormalFormTree::intern(const Psl2NormalForm& g) {
  NodeId x = kIdentity;
  for (Syllable s : g.syllables()) x = child(x, s);
  return x;
}

std::optional<NodeId> NormalFormTree::find(const Psl2NormalForm& g) const {
  NodeId x = kIdentity;
  for (Syllable s : g.syllables()) {
    x = nodes_[x].child[static_cast<std::size_t>(s)];
    if (x == kNone) return std::nullopt;
  }
  return x;
}

Psl2NormalForm NormalFormTree::normal_form(NodeId x) const {
  std::vector<Syllable> rev;
  rev.reserve(nodes_[x].depth);
  for (; x != kIdentity; x = nodes_[x].parent) rev.push_back(nodes_[x].last);
  return Psl2NormalForm(std::vector<Syllable>(rev.rbegin(), rev.rend()));
}

std::array<ProjectedGenerator, 4> projected_generators(Alphabet a) {
  std::array<ProjectedGenerator, 4> out;
  const auto gens = generators(a);
  for (std::size_t i = 0; i < 4; ++i) {
    BraidWord w(a);
    w.append(gens[i]);
    const CentralPair p = central_decompose(w);
    out[i] = {gens[i], p.gamma, p.flux, exponent_weight(gens[i])};
  }
  return out;
}

TreeStep step(NormalFormTree& tree, NodeId x, const ProjectedGenerator& g) {
  const NodeId y = tree.multiply(x, g.image);
  const std::int64_t theta =
      tree.section_exponent(x) + section_exponent(g.image) - tree.section_exponent(y);
  if (theta % 6 != 0) throw InvariantError("step: cocycle value is not an integer");
  return {y, g.flux + theta / 6};
}

}  // namespace braidwalk
