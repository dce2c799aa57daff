#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace braidwalk {

// Integer Laurent polynomial in one variable u. Stored densely from the
// lowest exponent; zero coefficients are never kept at either end, and the
// zero polynomial has no coefficients at all.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(std::int64_t c);
  static LaurentPoly monomial(std::int64_t coeff, int exponent);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int low_exponent() const noexcept { return low_; }
  int high_exponent() const noexcept {
    return low_ + static_cast<int>(coeffs_.size()) - 1;
  }
  std::int64_t coeff(int exponent) const noexcept;
  const std::vector<std::int64_t>& coefficients() const noexcept {
    return coeffs_;
  }

  double evaluate(double u) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    return a += b;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    return a -= b;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::size_t hash() const noexcept;
  std::string to_string() const;

 private:
  void normalize();

  int low_ = 0;
  std::vector<std::int64_t> coeffs_;
};

// Arithmetic overflows throw std::overflow_error rather than wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace braidwalk
