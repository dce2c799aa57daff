#pragma once

#include <cstddef>
#include <string>

#include "braidwalk/walk.hpp"

namespace braidwalk {

// Enumerates all 4^n words, reduces each one with central_decompose and
// accumulates exact weights. Only meant for small n (at most 10).
ExactDistribution brute_force_distribution(const StepMeasure& m, int n);

struct OracleComparison {
  bool match = false;
  std::size_t entries_left = 0;
  std::size_t entries_right = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;  // "γ f: left vs right", empty on match
};

// Entry-for-entry exact comparison keyed by (normal form, flux); the two
// distributions may use different trees.
OracleComparison compare_distributions(const ExactDistribution& left,
                                       const ExactDistribution& right);

}  // namespace braidwalk
