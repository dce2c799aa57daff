#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "braidwalk/spectral.hpp"

namespace braidwalk {

// p_t(A) ∝ exp(−A²/2t) / cosh²(πA/t), normalized over the real line.
class AreaLaw {
 public:
  // Throws std::invalid_argument unless t > 0 and finite.
  explicit AreaLaw(double t);

  double t() const noexcept { return t_; }
  double log_normalization() const noexcept { return log_z_; }
  // Integration cutoff L: the integrand is below 1e-14 of its peak past it.
  double cutoff() const noexcept { return cutoff_; }

  double log_density(double A) const noexcept;
  double density(double A) const noexcept;
  // d log p / d(A²), analytic.
  double log_slope(double A) const noexcept;
  // Same quantity by a central difference of log_density in A².
  double log_slope_numeric(double A) const noexcept;
  // ∫ density over (−L, L) by adaptive Gauss–Kronrod.
  double integral() const;

 private:
  double t_;
  double cutoff_;
  double log_z_;
};

// log cosh x without overflow.
double log_cosh(double x) noexcept;

struct ContinuumPoint {
  std::int64_t f = 0;
  double discrete_ratio = 0;    // p_n(f)/p_n(0)
  double gaussian_ratio = 0;    // exp(−f²/2nσ²)
  double continuum_ratio = 0;   // p_t(f)/p_t(0) at t = κn
  double gaussian_residual = 0;
  double continuum_residual = 0;
  bool small_area = false;      // |A| ≤ 1
};

struct ContinuumComparison {
  int n = 0;
  double sigma = 0;   // sqrt(Var(f | return)/n)
  double kappa = 0;   // fitted scale in t = κn
  double t = 0;
  double window = 0;  // |f| ≤ 3·√n·σ
  std::vector<ContinuumPoint> points;
  double rms_gaussian = 0;
  double rms_continuum = 0;
  std::string small_area_note;
};

// Fits the return-conditioned flux law to a centred Gaussian (moment σ)
// and to the area law under A = f, t = κn (κ by least squares on log
// ratios over the window). Throws std::invalid_argument on an empty table,
// p_n(0) = 0 or n < 12.
ContinuumComparison compare_discrete_continuum(const FluxTable& table, int n);

}  // namespace braidwalk
