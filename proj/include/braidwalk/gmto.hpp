#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace braidwalk {

// Truncated lowest-weight SU(1,1) module with lowest weight B:
//   J0|n> = (B+n)|n>,  J+|n> = sqrt((n+1)(n+2B))|n+1>,
//   J1 = (J+ + J-)/2,  J2 = (J+ - J-)/(2i),  n = 0..N-1.
// [J0,J1] = iJ2, [J1,J2] = -iJ0, [J2,J0] = iJ1 and
// J0² - J1² - J2² = B(B-1) hold away from the last row.
struct DiscreteSeriesRep {
  double B = 0;
  int N = 0;
  Eigen::MatrixXcd J0, J1, J2;
};

// Throws std::invalid_argument unless B > 0 and N >= 8.
DiscreteSeriesRep build_rep(double B, int N);

// How x^i J_i is formed from a 3-vector x.
enum class ContractionConvention {
  PlainSum,      // x0 J0 + x1 J1 + x2 J2
  MetricLowered  // x0 J0 - x1 J1 - x2 J2
};
std::string to_string(ContractionConvention c);

Eigen::MatrixXcd contract(const DiscreteSeriesRep& rep, const std::array<double, 3>& x,
                          ContractionConvention c = ContractionConvention::PlainSum);

// Minkowski norm x0² - x1² - x2².
double so21_norm(const std::array<double, 3>& x) noexcept;
std::array<double, 3> alpha_u(double u);  // ½(u+1/u, 1/u-u, 0); throws on u = 0
std::array<double, 3> beta_u() noexcept;  // (2/√3, 0, -1/√3)

enum class GmtoGenerator { A, B };

struct GmtoOperator {
  GmtoGenerator label = GmtoGenerator::A;
  double u = 1;
  Eigen::MatrixXcd matrix;
};

// exp(i·c·X) for Hermitian X via eigendecomposition; non-Hermitian input
// goes through scaling and squaring instead.
Eigen::MatrixXcd exp_i(const Eigen::MatrixXcd& X, double c);

// χ(a_u) = exp(iπ α_u·J), χ(b_u) = exp((2iπ/3) β_u·J).
GmtoOperator gmto_step(const DiscreteSeriesRep& rep, GmtoGenerator g, double u,
                       ContractionConvention c = ContractionConvention::PlainSum);

struct LoopPhaseReport {
  double B = 0;
  double u = 1;
  int N = 0;
  int interior = 0;
  ContractionConvention convention = ContractionConvention::PlainSum;
  // Frobenius norms on the leading interior × interior block.
  double residual_a2 = 0;      // χ(a)² - e^{2iπB} Id
  double residual_b3 = 0;      // χ(b)³ - e^{2iπB} Id
  double residual_a2_b3 = 0;   // χ(a)² - χ(b)³
  double residual_braid = 0;   // χ(σ1)χ(σ2)χ(σ1) - χ(σ2)χ(σ1)χ(σ2)
  double unitarity_a = 0;      // χ(a)†χ(a) - Id
  double unitarity_b = 0;
  std::complex<double> phase;  // mean interior diagonal of χ(a)²
  double phase_error = 0;      // |phase - e^{2iπB}|
};

// interior = 0 selects N/2. Throws std::invalid_argument when fewer than
// N/4 rows are left as margin or u = 0.
LoopPhaseReport verify_loop_phases(const DiscreteSeriesRep& rep, double u, int interior = 0,
                                   ContractionConvention c = ContractionConvention::PlainSum);

// Max deviation of the Casimir diagonal from B(B-1) over rows 0..N-3, and
// the largest off-diagonal magnitude in that block.
double casimir_interior_deviation(const DiscreteSeriesRep& rep);
// Largest Frobenius residual of the three commutation relations on the
// leading (N-2)-block.
double commutator_interior_residual(const DiscreteSeriesRep& rep);

}  // namespace braidwalk
