#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "braidwalk/errors.hpp"
#include "braidwalk/spectral.hpp"

using namespace braidwalk;

namespace {

StepMeasure uni(Alphabet a) { return StepMeasure::uniform(a); }

TwistedTraceSeries constant_series(int n, Complex v) {
  TwistedTraceSeries s;
  s.n = n;
  s.theta = theta_grid(required_grid_size(n));
  for (double t : s.theta) {
    (void)t;
    s.values.push_back(v);
  }
  return s;
}

FluxTable gaussian_table(int n, double var) {
  FluxTable t;
  for (int f = -n; f <= n; ++f) t[f] = std::exp(-0.5 * f * f / var);
  return t;
}

}  // namespace

TEST_CASE("theta grid") {
  const auto g = theta_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g.back() == doctest::Approx(std::numbers::pi));
  CHECK(g.front() > -std::numbers::pi);
  CHECK(required_grid_size(3) == 37);
  CHECK_THROWS_AS(theta_grid(0), std::invalid_argument);
}

TEST_CASE("trace at theta = 0 is the PSL return probability") {
  for (const Alphabet a : {Alphabet::S, Alphabet::Sprime}) {
    for (int n = 0; n <= 12; ++n) {
      const Complex t = twisted_trace(uni(a), n, 0.0);
      const double want = to_double(psl_return_probability(return_evolve<Rational>(uni(a), n)));
      CHECK(t.real() == doctest::Approx(want).epsilon(1e-14));
      CHECK(std::abs(t.imag()) < 1e-16);
    }
  }
}

TEST_CASE("small-n traces over Sprime") {
  for (double th : {-2.5, -1.0, 0.3, 1.7, 3.0}) {
    const Complex t2 = twisted_trace(uni(Alphabet::Sprime), 2, th);
    CHECK(t2.real() == doctest::Approx(0.25 + std::cos(th) / 8));
    CHECK(std::abs(t2.imag()) < 1e-15);
    const Complex t3 = twisted_trace(uni(Alphabet::Sprime), 3, th);
    CHECK(t3.real() == doctest::Approx(std::cos(th) / 32));
    CHECK(std::abs(t3.imag()) < 1e-15);
  }
}

TEST_CASE("trace is conjugate symmetric") {
  const auto skew = StepMeasure::from_weights(
      Alphabet::Sprime, {Rational(1, 2), Rational(1, 8), Rational(1, 4), Rational(1, 8)});
  for (const StepMeasure& m : {uni(Alphabet::S), uni(Alphabet::Sprime), skew}) {
    for (double th : {0.4, 1.1, 2.9}) {
      const Complex p = twisted_trace(m, 9, th), q = twisted_trace(m, 9, -th);
      CHECK(std::abs(p - std::conj(q)) < 1e-15);
    }
  }
}

TEST_CASE("trace series does not depend on the worker count") {
  const auto one = twisted_traces(uni(Alphabet::S), 8, 97, 1);
  const auto three = twisted_traces(uni(Alphabet::S), 8, 97, 3);
  CHECK(one.values == three.values);
  CHECK(one.theta == three.theta);
  CHECK_THROWS_AS(twisted_traces(uni(Alphabet::S), 12, 200, 2, {.max_states = 10}), ResourceError);
}

TEST_CASE("fourier inversion examples") {
  const auto flat = constant_series(2, 0.25);
  CHECK(fourier_invert(flat, 0) == doctest::Approx(0.25));
  CHECK(std::abs(fourier_invert(flat, 1)) < 1e-15);
  CHECK(std::abs(fourier_invert(flat, -2)) < 1e-15);

  TwistedTraceSeries cos3 = constant_series(3, 0);
  for (std::size_t j = 0; j < cos3.theta.size(); ++j) cos3.values[j] = std::cos(cos3.theta[j]) / 32;
  CHECK(fourier_invert(cos3, 1) == doctest::Approx(1.0 / 64));
  CHECK(fourier_invert(cos3, -1) == doctest::Approx(1.0 / 64));
  CHECK(std::abs(fourier_invert(cos3, 0)) < 1e-15);

  const auto real3 = twisted_traces(uni(Alphabet::Sprime), 3, required_grid_size(3));
  for (std::int64_t f : {4, -4, 7, 20}) CHECK(std::abs(fourier_invert(real3, f)) < 1e-10);
}

TEST_CASE("fourier inversion refuses a coarse grid") {
  const auto s = twisted_traces(uni(Alphabet::Sprime), 4, 30);
  CHECK_THROWS_AS(fourier_invert(s, 0), GridTooSmall);
  try {
    fourier_invert(s, 0);
  } catch (const GridTooSmall& e) {
    CHECK(e.required() == 49);
  }
}

TEST_CASE("inversion is real and reproduces the flux distribution") {
  for (const Alphabet a : {Alphabet::S, Alphabet::Sprime}) {
    for (int n = 0; n <= 10; ++n) {
      const auto s = twisted_traces(uni(a), n, required_grid_size(n));
      const auto exact = flux_distribution(return_evolve<Rational>(uni(a), n));
      for (std::int64_t f = -n - 2; f <= n + 2; ++f) {
        const Complex z = fourier_invert_complex(s, f);
        CHECK(std::abs(z.imag()) < 1e-12);
        auto it = exact.find(f);
        const double want = it == exact.end() ? 0.0 : to_double(it->second);
        CHECK(std::abs(z.real() - want) < 1e-10);
      }
      CHECK(fourier_invert_all(s).size() == static_cast<std::size_t>(2 * n + 1));
    }
  }
}

TEST_CASE("recursion coefficients conserve mass at theta = 0") {
  for (double alpha : {0.0, 0.3, 0.6, 1.0}) {
    const auto mc = recursion_evolve(0.0, alpha, 60, 60, RecursionBoundary::MassConserving);
    CHECK(mc.total() == doctest::Approx(1).epsilon(1e-12));
    const auto vb = recursion_evolve(0.0, alpha, 60, 60, RecursionBoundary::Verbatim);
    if (alpha > 0) CHECK(vb.total() < 1);
    else CHECK(vb.total() == doctest::Approx(1).epsilon(1e-12));
  }
}

TEST_CASE("verbatim boundary leaks alpha/4 of c1 per step") {
  const double alpha = 0.6;
  RecursionState s = recursion_evolve(0.0, alpha, 5, 30);
  for (int i = 0; i < 10; ++i) {
    const double before = s.total();
    const double c1 = s.c[1];
    recursion_step(s);
    CHECK(before - s.total() == doctest::Approx(alpha / 4 * c1).epsilon(1e-10));
  }
}

TEST_CASE("recursion error paths") {
  CHECK_THROWS_AS(recursion_evolve(0.0, -0.1, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(recursion_evolve(0.0, 1.1, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(recursion_evolve(0.0, 0.5, 6, 5), std::invalid_argument);
  CHECK_THROWS_AS(estimate_mu(0.5, 0.6, 0), std::invalid_argument);
  const auto s = recursion_evolve(0.0, 0.5, 0, 4);
  CHECK(s.c[0] == 1);
  CHECK(s.total() == 1);
}

TEST_CASE("mu at theta = 0 and the closed form") {
  CHECK(mu_closed_form(0) == 1);
  const MuEstimate m0 = estimate_mu(0.0, 0.6, 100);
  CHECK(m0.from_c0 == doctest::Approx(1));
  CHECK(m0.from_mass == doctest::Approx(1));
  for (double th : {0.2, 0.5, 1.0}) {
    const MuEstimate m = estimate_mu(th, 0.6, 400, RecursionBoundary::MassConserving);
    CHECK(m.closed_form == doctest::Approx(mu_closed_form(th)));
    CHECK(m.from_mass == doctest::Approx(m.closed_form).epsilon(5e-3));
  }
}

TEST_CASE("ends-in-B sequence") {
  const auto seq = ends_in_b_sequence(uni(Alphabet::Sprime), 12);
  REQUIRE(seq.size() == 13);
  CHECK(seq[0].second == 0);
  CHECK(seq[1].second == 0.5);
  for (int n = 1; n <= 12; ++n) {
    const double dp = to_double(ends_in_b_probability(exact_evolve<Rational>(uni(Alphabet::Sprime), n)));
    CHECK(seq[n].second == doctest::Approx(dp).epsilon(1e-14));
  }
  const auto s_seq = ends_in_b_sequence(uni(Alphabet::S), 6);
  CHECK(s_seq[6].second == doctest::Approx(to_double(ends_in_b_probability(exact_evolve<Rational>(uni(Alphabet::S), 6)))));
}

TEST_CASE("alpha matches the stationary law of the syllable-type chain") {
  // Away from the identity the last syllable type is a two-state chain:
  // after A every letter leaves a B-type syllable last, after B the next
  // type is A with probability 1/2 + 1/4. Its stationary B-mass is
  // 1 / (1 + 3/4).
  const double stationary = 1.0 / (1.0 + 0.75);
  const FitResult r = estimate_alpha(uni(Alphabet::Sprime), 400);
  CHECK(r.estimate == doctest::Approx(stationary).epsilon(1e-4));
  CHECK(r.diagnostics.at("ends_in_a") == doctest::Approx(1 - r.estimate));
  CHECK(std::isfinite(r.diagnostics.at("raw_last")));
  CHECK_THROWS_AS(estimate_alpha(uni(Alphabet::Sprime), 49), std::invalid_argument);
}

TEST_CASE("fit_lambda recovers synthetic rates") {
  for (double lambda : {0.5, 0.9, 0.96}) {
    std::vector<std::pair<int, double>> p;
    for (int n = 2; n <= 24; n += 2) p.emplace_back(n, std::pow(lambda, n) / (n * n));
    const FitResult r = fit_lambda(p);
    CHECK(r.estimate == doctest::Approx(lambda).epsilon(1e-3));
    CHECK(r.diagnostics.count("order") == 1);
    CHECK_FALSE(r.raw.empty());
  }
  std::vector<std::pair<int, double>> corrected;
  for (int n = 2; n <= 40; n += 2) corrected.emplace_back(n, std::pow(0.9, n) / (n * n) * (1 + 2.0 / n));
  CHECK(fit_lambda(corrected).estimate == doctest::Approx(0.9).epsilon(1e-3));
}

TEST_CASE("fit_lambda error paths") {
  CHECK_THROWS_AS(fit_lambda({{2, 0.0}, {4, 0.0}, {6, 0.0}, {8, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_lambda({{2, 0.1}, {4, 0.01}, {6, 0.001}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_lambda({}), std::invalid_argument);
}

TEST_CASE("fit_sigma recovers a synthetic width") {
  std::vector<std::pair<int, FluxTable>> tables;
  for (int n : {360, 720, 1440}) tables.emplace_back(n, gaussian_table(n, n / 36.0));
  const FitResult r = fit_sigma(tables);
  CHECK(r.estimate == doctest::Approx(1.0 / 6).epsilon(1e-3));
  CHECK(r.raw.size() == 3);

  std::vector<std::pair<int, FluxTable>> shifted;
  for (int n : {100, 200, 400, 800}) shifted.emplace_back(n, gaussian_table(n, n / 36.0 + 3));
  CHECK(fit_sigma(shifted).estimate == doctest::Approx(1.0 / 6).epsilon(1e-3));
}

TEST_CASE("fit_sigma error paths") {
  std::vector<std::pair<int, FluxTable>> two{{12, gaussian_table(12, 1)}, {14, gaussian_table(14, 1)}};
  CHECK_THROWS_AS(fit_sigma(two), std::invalid_argument);
  std::vector<std::pair<int, FluxTable>> flat{{2, {{0, 0.25}}}, {4, gaussian_table(4, 1)}, {6, gaussian_table(6, 1)}};
  CHECK_THROWS_AS(fit_sigma(flat), std::invalid_argument);
  std::vector<std::pair<int, FluxTable>> same{{12, gaussian_table(12, 1)}, {12, gaussian_table(12, 1)},
                                              {12, gaussian_table(12, 1)}};
  CHECK_THROWS_AS(fit_sigma(same), std::invalid_argument);
  CHECK_THROWS_AS(flux_moments({}), std::invalid_argument);
}

TEST_CASE("flux moments and Gaussian shape") {
  const auto [mean, var] = flux_moments({{-1, 1}, {1, 1}});
  CHECK(mean == 0);
  CHECK(var == 1);
  CHECK(gaussian_shape_r2(gaussian_table(100, 100 / 36.0), 100, 1.0 / 6) == doctest::Approx(1));
  CHECK_THROWS_AS(gaussian_shape_r2({{0, 1.0}, {1, 0.5}}, 4, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_shape_r2({{1, 1.0}, {2, 0.5}, {3, 0.1}}, 100, 1), std::invalid_argument);
}

TEST_CASE("S-alphabet flux law is Gaussian at moderate n") {
  const auto d = return_evolve<double>(uni(Alphabet::S), 20);
  FluxTable t;
  for (const auto& [f, p] : flux_distribution(d)) t[f] = p;
  const double sigma = std::sqrt(flux_moments(t).second / 20);
  CHECK(gaussian_shape_r2(t, 20, sigma) > 0.99);
}
