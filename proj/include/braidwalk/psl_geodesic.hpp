#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/nf_tree.hpp"
#include "braidwalk/psl2z.hpp"

namespace braidwalk {

// Breadth-first distances from the identity in the Cayley graph of
// PSL(2,Z) for the projected generators of an alphabet, stored per node of
// a shared NormalFormTree. The ball grows on demand; every element within
// radius() has its exact distance recorded.
class PslGeodesicTable {
 public:
  PslGeodesicTable(NormalFormTree& tree, Alphabet a);

  void ensure_radius(int r);
  int radius() const noexcept { return radius_; }
  // Exact distance if it is at most radius(); nullopt means "farther".
  std::optional<int> distance(NodeId x) const;
  const std::vector<std::size_t>& sphere_sizes() const noexcept { return spheres_; }
  std::size_t ball_size() const noexcept;

 private:
  NormalFormTree& tree_;
  std::array<ProjectedGenerator, 4> gens_;
  std::vector<std::int16_t> dist_;
  std::vector<NodeId> frontier_;
  std::vector<std::size_t> spheres_;
  int radius_ = 0;
};

struct PslGeodesic {
  std::int64_t length = 0;
  BraidWord word{Alphabet::S};  // a geodesic S-word whose projection is γ
};

// Exact S-geodesic by breadth-first search restricted to elements whose
// normal form leaves that of γ by at most tube_radius syllables. Validated
// against the unrestricted ball in the test suite.
PslGeodesic psl_geodesic_s(const Psl2NormalForm& g, int tube_radius = 6);

// S-length of γ: table lookup inside a process-wide ball of radius 10,
// tube search beyond it. Thread-safe.
std::int64_t psl_length_s(const Psl2NormalForm& g);

}  // namespace braidwalk
