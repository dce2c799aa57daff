#pragma once

#include <array>
#include <string>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/laurent.hpp"

namespace braidwalk {

// 2x2 matrix over Z[u, u^{-1}].
struct LaurentMatrix {
  std::array<LaurentPoly, 4> e;  // row-major: (0,0) (0,1) (1,0) (1,1)

  static LaurentMatrix identity();
  const LaurentPoly& operator()(int r, int c) const { return e[2 * r + c]; }
  LaurentPoly& operator()(int r, int c) { return e[2 * r + c]; }

  LaurentPoly determinant() const;
  LaurentMatrix operator-() const;
  friend LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y);
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

  std::size_t hash() const noexcept;
  std::string to_string() const;
};

using BurauMatrix = LaurentMatrix;

// σ1 -> [[u², 1], [0, 1]], σ2 -> [[1, 0], [-u², u²]]; a and b act through
// their σ-expansions.
BurauMatrix burau(Letter l);
BurauMatrix burau(const BraidWord& w);

struct LaurentMatrixHash {
  std::size_t operator()(const LaurentMatrix& m) const noexcept { return m.hash(); }
};

}  // namespace braidwalk
