#include "braidwalk/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace braidwalk {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("LaurentPoly: coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("LaurentPoly: coefficient overflow");
  return r;
}

LaurentPoly LaurentPoly::constant(std::int64_t c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(std::int64_t coeff, int exponent) {
  LaurentPoly p;
  if (coeff != 0) {
    p.low_ = exponent;
    p.coeffs_.push_back(coeff);
  }
  return p;
}

std::int64_t LaurentPoly::coeff(int exponent) const noexcept {
  const long i = static_cast<long>(exponent) - low_;
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

double LaurentPoly::evaluate(double u) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;)
    acc = acc * u + static_cast<double>(coeffs_[i]);
  return acc * std::pow(u, low_);
}

void LaurentPoly::normalize() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](std::int64_t c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  low_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  while (coeffs_.back() == 0) coeffs_.pop_back();
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high_exponent(), o.high_exponent());
  std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[i + static_cast<std::size_t>(low_ - lo)] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    auto& slot = out[i + static_cast<std::size_t>(o.low_ - lo)];
    slot = checked_add(slot, o.coeffs_[i]);
  }
  low_ = lo;
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  return *this += -o;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      r.coeffs_[i + j] =
          checked_add(r.coeffs_[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
  }
  r.normalize();
  return r;
}

std::size_t LaurentPoly::hash() const noexcept {
  std::size_t h = std::hash<int>{}(low_) ^ 0x9e3779b97f4a7c15ULL;
  for (auto c : coeffs_)
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  return h;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    const int e = low_ + static_cast<int>(i);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const std::int64_t m = c < 0 ? -c : c;
    if (e == 0 || m != 1) os << m;
    if (e != 0) {
      if (m != 1) os << "*";
      os << "u";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

}  // namespace braidwalk
