#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "braidwalk/braid_word.hpp"

namespace braidwalk {

// Reference constants reported next to fitted values.
struct Target {
  std::string_view key;
  std::string_view expression;
  double value;
  Alphabet alphabet;
  std::string_view label;
};

inline const std::array<Target, 4>& targets() {
  static const std::array<Target, 4> table{{
      {"lambda", "(1+2*sqrt(2))/4", (1 + 2 * std::sqrt(2.0)) / 4, Alphabet::S,
       "exponential rate of the trivial-braid probability, alphabet S"},
      {"sigma", "1/6", 1.0 / 6, Alphabet::S, "flux width of closed loops, alphabet S"},
      {"alpha", "3/5", 3.0 / 5, Alphabet::Sprime,
       "stationary fraction of normal forms ending in B or B^2, alphabet Sprime"},
      {"drift", "1/4", 1.0 / 4, Alphabet::Sprime, "B3 word-length drift per step"},
  }};
  return table;
}

// Target for (key, alphabet), if one is listed.
inline std::optional<Target> find_target(std::string_view key, Alphabet a) {
  for (const auto& t : targets())
    if (t.key == key && t.alphabet == a) return t;
  return std::nullopt;
}

}  // namespace braidwalk
