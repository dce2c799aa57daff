#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "braidwalk/walk.hpp"

namespace braidwalk {

using Complex = std::complex<double>;

// Uniform grid over (−π, π]: θ_j = −π + 2π(j+1)/m, j = 0..m−1.
std::vector<double> theta_grid(std::size_t m);
// Smallest grid the inversion accepts for n steps.
constexpr std::size_t required_grid_size(int n) noexcept {
  return 12 * static_cast<std::size_t>(n < 0 ? 0 : n) + 1;
}

// Identity coefficient of the n-th power of the twisted step operator: each
// generator g carries the phase e^{iθ·e(g)/6}, so the value equals
// Σ_f p_n(f) e^{ifθ}. Pruned DP over PSL(2,Z) only.
Complex twisted_trace(const StepMeasure& m, int n, double theta, EvolveOptions opt = {});

struct TwistedTraceSeries {
  Alphabet alphabet = Alphabet::Sprime;
  int n = 0;
  std::vector<double> theta;
  std::vector<Complex> values;
};

// Traces on theta_grid(grid). θ points are split across `workers` threads;
// each value is computed independently so the output does not depend on the
// worker count.
TwistedTraceSeries twisted_traces(const StepMeasure& m, int n, std::size_t grid,
                                  unsigned workers = 1, EvolveOptions opt = {});

// (1/M) Σ_j trace(θ_j) e^{−ifθ_j}. Throws GridTooSmall when the grid has
// fewer than required_grid_size(n) points. Returns 0 for |f| > n.
Complex fourier_invert_complex(const TwistedTraceSeries& s, std::int64_t f);
double fourier_invert(const TwistedTraceSeries& s, std::int64_t f);
// All f in [−n, n].
std::map<std::int64_t, double> fourier_invert_all(const TwistedTraceSeries& s);

// Transfer recursion on c̃_k(θ), k = 0..k_max, started from δ_{k,0}.
// Verbatim keeps the printed k = 0 row, whose coefficient on c̃_1 is
// (1−α)/2·cos(θ/2); at θ = 0 it loses α/4·c̃_1 of mass per step.
// MassConserving uses (1−α)/2·cos(θ/2) + α/4·cos(θ/3) there instead.
enum class RecursionBoundary { Verbatim, MassConserving };

struct RecursionState {
  double theta = 0;
  double alpha = 0;
  int n = 0;
  RecursionBoundary boundary = RecursionBoundary::Verbatim;
  std::vector<double> c;

  double total() const;
};

// Throws std::invalid_argument unless 0 ≤ α ≤ 1 and k_max ≥ n.
RecursionState recursion_evolve(double theta, double alpha, int n, int k_max,
                                RecursionBoundary boundary = RecursionBoundary::Verbatim);
// One step in place (k_max fixed by the vector size).
void recursion_step(RecursionState& s);

// (cos(θ/2) + cos(θ/3)) / 2.
double mu_closed_form(double theta) noexcept;

struct MuEstimate {
  double theta = 0;
  int n = 0;
  double from_c0 = 0;     // (c̃_0(θ)/c̃_0(0))^{1/n}, NaN if the ratio is not positive
  double from_mass = 0;   // (Σ_k c̃_k(θ) / Σ_k c̃_k(0))^{1/n}
  double closed_form = 0;
};

MuEstimate estimate_mu(double theta, double alpha, int n,
                       RecursionBoundary boundary = RecursionBoundary::Verbatim);

struct FitResult {
  double estimate = 0;
  std::vector<std::pair<int, double>> raw;  // per-n values entering the fit
  std::map<std::string, double> diagnostics;
};

// Ends-in-B probability of π(w_k) for k = 0..n. Over Sprime with
// w(b) = w(b^{-1}) this runs an exact chain lumped on (length, last syllable
// type); otherwise it reads the marginals of exact_evolve.
std::vector<std::pair<int, double>> ends_in_b_sequence(const StepMeasure& m, int n,
                                                       EvolveOptions opt = {});
// Requires n ≥ 50. Estimate: Aitken Δ² over the values at n/4, n/2, n.
FitResult estimate_alpha(const StepMeasure& m, int n, EvolveOptions opt = {});

// λ̂_n = (p_{n+2}/p_n)^{1/2}·(n+2)/n over same-parity nonzero entries, then
// polynomial extrapolation in 1/n through the last three values.
FitResult fit_lambda(const std::vector<std::pair<int, double>>& p_sequence);

using FluxTable = std::map<std::int64_t, double>;

// Var(f | return)/n per table; σ̂² is the intercept of a least-squares line
// in 1/n. Throws std::invalid_argument on fewer than three tables or a
// degenerate variance.
FitResult fit_sigma(const std::vector<std::pair<int, FluxTable>>& tables);

// Mean and variance of a (not necessarily normalized) flux table.
std::pair<double, double> flux_moments(const FluxTable& t);

// R² of the least-squares line through (f², log p(f) − log p(0)) for
// |f| ≤ 3·√n·σ. Throws std::invalid_argument with fewer than three points.
double gaussian_shape_r2(const FluxTable& t, int n, double sigma);

}  // namespace braidwalk
