#include "braidwalk/gmto.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace braidwalk {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

DiscreteSeriesRep build_rep(double B, int N) {
  if (!(B > 0) || !std::isfinite(B)) throw std::invalid_argument("build_rep: need B > 0");
  if (N < 8) throw std::invalid_argument("build_rep: need N >= 8");
  DiscreteSeriesRep r;
  r.B = B;
  r.N = N;
  MatrixXcd up = MatrixXcd::Zero(N, N);
  r.J0 = MatrixXcd::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    r.J0(n, n) = B + n;
    if (n + 1 < N) up(n + 1, n) = std::sqrt((n + 1.0) * (n + 2 * B));
  }
  const MatrixXcd down = up.adjoint();
  r.J1 = (up + down) / 2.0;
  r.J2 = (up - down) / cd(0, 2);
  return r;
}

std::string to_string(ContractionConvention c) {
  return c == ContractionConvention::PlainSum ? "plain_sum" : "metric_lowered";
}

MatrixXcd contract(const DiscreteSeriesRep& rep, const std::array<double, 3>& x,
                   ContractionConvention c) {
  const double s = c == ContractionConvention::PlainSum ? 1.0 : -1.0;
  return x[0] * rep.J0 + s * x[1] * rep.J1 + s * x[2] * rep.J2;
}

double so21_norm(const std::array<double, 3>& x) noexcept {
  return x[0] * x[0] - x[1] * x[1] - x[2] * x[2];
}

std::array<double, 3> alpha_u(double u) {
  if (u == 0) throw std::invalid_argument("alpha_u: u must be nonzero");
  return {(u + 1 / u) / 2, (1 / u - u) / 2, 0.0};
}

std::array<double, 3> beta_u() noexcept {
  const double r = std::sqrt(3.0);
  return {2 / r, 0.0, -1 / r};
}

MatrixXcd exp_i(const MatrixXcd& X, double c) {
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  if ((X - X.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(X);
    if (es.info() == Eigen::Success) {
      const Eigen::VectorXcd phases =
          (es.eigenvalues().cast<cd>() * cd(0, c)).array().exp().matrix();
      return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    }
  }
  const MatrixXcd Y = cd(0, c) * X;
  return Y.exp();
}

GmtoOperator gmto_step(const DiscreteSeriesRep& rep, GmtoGenerator g, double u,
                       ContractionConvention c) {
  if (u == 0) throw std::invalid_argument("gmto_step: u must be nonzero");
  GmtoOperator op;
  op.label = g;
  op.u = u;
  if (g == GmtoGenerator::A)
    op.matrix = exp_i(contract(rep, alpha_u(u), c), std::numbers::pi);
  else
    op.matrix = exp_i(contract(rep, beta_u(), c), 2 * std::numbers::pi / 3);
  return op;
}

LoopPhaseReport verify_loop_phases(const DiscreteSeriesRep& rep, double u, int interior,
                                   ContractionConvention c) {
  const int N = rep.N;
  if (interior == 0) interior = N / 2;
  const int margin = (N + 3) / 4;
  if (interior < 1 || interior > N - margin)
    throw std::invalid_argument("verify_loop_phases: interior block " + std::to_string(interior) +
                                " leaves less than N/4 = " + std::to_string(margin) +
                                " rows of margin");
  const MatrixXcd a = gmto_step(rep, GmtoGenerator::A, u, c).matrix;
  const MatrixXcd b = gmto_step(rep, GmtoGenerator::B, u, c).matrix;
  const MatrixXcd a_inv = a.adjoint(), b_inv = b.adjoint();
  const MatrixXcd a2 = a * a, b3 = b * b * b;
  const MatrixXcd s1 = b_inv * a, s2 = a_inv * b * b;
  const MatrixXcd lhs = s1 * s2 * s1, rhs = s2 * s1 * s2;

  const cd target = std::polar(1.0, 2 * std::numbers::pi * rep.B);
  const MatrixXcd id = MatrixXcd::Identity(interior, interior);
  auto block = [interior](const MatrixXcd& m) { return m.topLeftCorner(interior, interior); };

  LoopPhaseReport r;
  r.B = rep.B;
  r.u = u;
  r.N = N;
  r.interior = interior;
  r.convention = c;
  r.residual_a2 = (block(a2) - target * id).norm();
  r.residual_b3 = (block(b3) - target * id).norm();
  r.residual_a2_b3 = (block(a2) - block(b3)).norm();
  r.residual_braid = (block(lhs) - block(rhs)).norm();
  r.unitarity_a = (block(a.adjoint() * a) - id).norm();
  r.unitarity_b = (block(b.adjoint() * b) - id).norm();
  r.phase = block(a2).diagonal().mean();
  r.phase_error = std::abs(r.phase - target);
  return r;
}

double casimir_interior_deviation(const DiscreteSeriesRep& rep) {
  const MatrixXcd C = rep.J0 * rep.J0 - rep.J1 * rep.J1 - rep.J2 * rep.J2;
  const int k = rep.N - 2;
  const double expected = rep.B * (rep.B - 1);
  double dev = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      dev = std::max(dev, std::abs(C(i, j) - (i == j ? cd(expected) : cd(0))));
  return dev;
}

double commutator_interior_residual(const DiscreteSeriesRep& rep) {
  const int k = rep.N - 2;
  const cd i(0, 1);
  auto comm = [](const MatrixXcd& x, const MatrixXcd& y) { return MatrixXcd(x * y - y * x); };
  const MatrixXcd r01 = comm(rep.J0, rep.J1) - i * rep.J2;
  const MatrixXcd r12 = comm(rep.J1, rep.J2) + i * rep.J0;
  const MatrixXcd r20 = comm(rep.J2, rep.J0) - i * rep.J1;
  double res = 0;
  for (const MatrixXcd* m : {&r01, &r12, &r20})
    res = std::max(res, m->topLeftCorner(k, k).norm());
  return res;
}

}  // namespace braidwalk
