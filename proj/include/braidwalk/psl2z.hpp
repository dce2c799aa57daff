#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/burau.hpp"

namespace braidwalk {

// PSL(2,Z) = Z2 ⋆ Z3 with A = π(a) of order 2 and B = π(b) of order 3.
// B2 stands for B² = B^{-1}.
enum class Syllable : std::uint8_t { A = 0, B = 1, B2 = 2 };

inline bool is_b_type(Syllable s) noexcept { return s != Syllable::A; }
inline int b_exponent(Syllable s) noexcept { return static_cast<int>(s); }

// Alternating syllable sequence; the empty sequence is the identity.
class Psl2NormalForm {
 public:
  Psl2NormalForm() = default;
  // Throws std::invalid_argument unless the sequence is strictly alternating.
  explicit Psl2NormalForm(std::vector<Syllable> syllables);

  std::span<const Syllable> syllables() const noexcept { return syl_; }
  std::size_t size() const noexcept { return syl_.size(); }
  bool is_identity() const noexcept { return syl_.empty(); }

  // Right multiplication by one syllable, reducing at the junction.
  void push(Syllable s);
  Psl2NormalForm inverse() const;

  friend bool operator==(const Psl2NormalForm&, const Psl2NormalForm&) = default;
  friend auto operator<=>(const Psl2NormalForm&, const Psl2NormalForm&) = default;

  // "e" for the identity, otherwise e.g. "A.B.A.B2".
  std::string to_string() const;
  static Psl2NormalForm parse(std::string_view text);

 private:
  std::vector<Syllable> syl_;
};

struct Psl2NormalFormHash {
  std::size_t operator()(const Psl2NormalForm& g) const noexcept;
};

// Applies s to the end of a reduced syllable stack (the shared reduction
// rule: A·A = 1, B-type syllables add exponents mod 3).
void push_syllable(std::vector<Syllable>& stack, Syllable s);

Psl2NormalForm nf_multiply(const Psl2NormalForm& x, const Psl2NormalForm& y);

// Normal form of π(g) for a single letter of either alphabet.
Psl2NormalForm letter_image(Letter l);
Psl2NormalForm project(const BraidWord& w);

// Letterwise section A -> a, B -> b, B² -> b^{-1}; s(identity) = empty word.
BraidWord section_lift(const Psl2NormalForm& g);

// Exponent sum of section_lift(g): 3 per A, +2 per B, -2 per B².
std::int64_t section_exponent(const Psl2NormalForm& g) noexcept;
int section_exponent(Syllable s) noexcept;

// (f, γ) standing for Δ^{2f}·s(γ).
struct CentralPair {
  std::int64_t flux = 0;
  Psl2NormalForm gamma;
  friend bool operator==(const CentralPair&, const CentralPair&) = default;
};

struct CentralPairHash {
  std::size_t operator()(const CentralPair& p) const noexcept;
};

// Throws InvariantError if the central exponent is not an integer.
CentralPair central_decompose(const BraidWord& w);

// Θ(x, y) with s(x)s(y) = Δ^{2Θ}·s(xy).
std::int64_t cocycle(const Psl2NormalForm& x, const Psl2NormalForm& y);

// (m, x)·(n, y) = (m + n + Θ(x, y), xy).
CentralPair multiply(const CentralPair& p, const CentralPair& q);

// Δ^{2f}·s(γ) as a word over the requested alphabet.
BraidWord reconstruct(const CentralPair& p, Alphabet a);

// Geodesic length of γ over the projected generators of an alphabet. For
// Sprime this is the syllable count; for S it comes from the shared
// geodesic table (see psl_geodesic.hpp).
std::int64_t psl_length(const Psl2NormalForm& g, Alphabet a);

// Matrices of PSL(2,Z)_u: a_u = [[0, u^{-1}], [-u, 0]], b_u = [[0, 1], [-1, 1]].
class DeformedMatrix {
 public:
  DeformedMatrix() : m_(LaurentMatrix::identity()) {}
  explicit DeformedMatrix(LaurentMatrix m) : m_(std::move(m)) {}

  const LaurentMatrix& matrix() const noexcept { return m_; }
  friend DeformedMatrix operator*(const DeformedMatrix& x, const DeformedMatrix& y) {
    return DeformedMatrix(x.m_ * y.m_);
  }
  // Equality in the projective quotient: equal up to an overall sign.
  friend bool operator==(const DeformedMatrix& x, const DeformedMatrix& y) {
    return x.m_ == y.m_ || x.m_ == -y.m_;
  }

 private:
  LaurentMatrix m_;
};

DeformedMatrix deformed_generator(Syllable s);
DeformedMatrix deformed_matrix(const Psl2NormalForm& g);
DeformedMatrix deformed_matrix(const BraidWord& w);

}  // namespace braidwalk
