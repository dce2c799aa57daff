#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/psl2z.hpp"

namespace braidwalk {

// Word problem in B3 through the complete invariant (f, γ). The Burau
// matrices of both words are compared as well; a disagreement between the
// two routes throws InvariantError.
bool b3_equal(const BraidWord& w1, const BraidWord& w2);
bool burau_equal(const BraidWord& w1, const BraidWord& w2);

inline int default_radius_cap(Alphabet a) noexcept { return a == Alphabet::S ? 14 : 12; }

// Minimal number of letters of the given alphabet spelling w, by
// breadth-first search over central pairs from the identity. nullopt when
// the length exceeds radius_cap.
std::optional<std::int64_t> b3_geodesic_length(const BraidWord& w, Alphabet a,
                                               int radius_cap);
inline std::optional<std::int64_t> b3_geodesic_length(const BraidWord& w, Alphabet a) {
  return b3_geodesic_length(w, a, default_radius_cap(a));
}

struct FaithfulnessReport {
  Alphabet alphabet = Alphabet::Sprime;
  int radius = 0;
  std::vector<std::size_t> sphere_sizes;
  std::size_t ball_size = 0;
  std::size_t collisions = 0;  // distinct central pairs sharing a Burau matrix
};

// Enumerates the whole ball of the given radius in B3 and checks that the
// Burau representation separates its elements.
FaithfulnessReport check_burau_faithfulness(Alphabet a, int radius);

}  // namespace braidwalk
