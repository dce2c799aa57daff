// Acceptance runner: one [PASS]/[FAIL] line per criterion.
//   acceptance            run all ten
//   acceptance --only k   run criterion k alone
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "braidwalk/b3.hpp"
#include "braidwalk/burau.hpp"
#include "braidwalk/continuum.hpp"
#include "braidwalk/gmto.hpp"
#include "braidwalk/oracle.hpp"
#include "braidwalk/spectral.hpp"
#include "braidwalk/targets.hpp"
#include "random_words.hpp"

using namespace braidwalk;
using braidwalk::testing::random_nf;
using braidwalk::testing::random_word;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

StepMeasure uni(Alphabet a) { return StepMeasure::uniform(a); }

Outcome oracle_equivalence() {
  std::size_t compared = 0, mismatches = 0;
  std::string first;
  for (const Alphabet a : {Alphabet::S, Alphabet::Sprime}) {
    for (int n = 0; n <= 8; ++n) {
      const auto r = compare_distributions(exact_evolve<Rational>(uni(a), n),
                                           brute_force_distribution(uni(a), n));
      compared += r.entries_left;
      if (!r.match) {
        ++mismatches;
        if (first.empty()) first = fmt("%s n=%d: %s", std::string(to_string(a)).c_str(), n, r.first_mismatch.c_str());
      }
    }
  }
  return {mismatches == 0, fmt("n<=8, both alphabets, %zu exact entries, %zu mismatching slices %s",
                               compared, mismatches, first.c_str())};
}

Outcome cocycle_identity() {
  std::mt19937_64 rng(20240601);
  std::size_t bad_cocycle = 0, bad_assoc = 0;
  std::uniform_int_distribution<int> fl(-100, 100);
  for (int i = 0; i < 10000; ++i) {
    const auto x = random_nf(rng, 30), y = random_nf(rng, 30), z = random_nf(rng, 30);
    if (cocycle(x, nf_multiply(y, z)) + cocycle(y, z) != cocycle(nf_multiply(x, y), z) + cocycle(x, y))
      ++bad_cocycle;
    const CentralPair p{fl(rng), x}, q{fl(rng), y}, r{fl(rng), z};
    if (multiply(multiply(p, q), r) != multiply(p, multiply(q, r))) ++bad_assoc;
  }
  return {bad_cocycle == 0 && bad_assoc == 0,
          fmt("10^4 triples: %zu cocycle failures, %zu associativity failures", bad_cocycle, bad_assoc)};
}

Outcome complete_invariant() {
  std::mt19937_64 rng(7);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const Alphabet a = i % 2 ? Alphabet::S : Alphabet::Sprime;
    const BraidWord w = random_word(rng, a, 20);
    if (burau(reconstruct(central_decompose(w), a)) != burau(w)) ++bad;
  }
  const FaithfulnessReport sp = check_burau_faithfulness(Alphabet::Sprime, 10);
  const FaithfulnessReport s = check_burau_faithfulness(Alphabet::S, 10);
  return {bad == 0 && sp.collisions == 0 && s.collisions == 0,
          fmt("10^4 words: %zu Burau mismatches; radius-10 balls: Sprime %zu elements %zu collisions, "
              "S %zu elements %zu collisions",
              bad, sp.ball_size, sp.collisions, s.ball_size, s.collisions)};
}

Outcome fourier_duality() {
  double worst = 0;
  for (const Alphabet a : {Alphabet::S, Alphabet::Sprime}) {
    for (int n = 0; n <= 16; ++n) {
      const auto series = twisted_traces(uni(a), n, required_grid_size(n));
      const auto exact = flux_distribution(return_evolve<Rational>(uni(a), n));
      for (std::int64_t f = -n; f <= n; ++f) {
        auto it = exact.find(f);
        const double want = it == exact.end() ? 0.0 : to_double(it->second);
        worst = std::max(worst, std::abs(fourier_invert(series, f) - want));
      }
    }
  }
  return {worst < 1e-10, fmt("max |inverted - exact| over n<=16, both alphabets = %.3g (tol 1e-10)", worst)};
}

struct SData {
  std::vector<std::pair<int, double>> p0;
  std::vector<std::pair<int, FluxTable>> tables;
};

const SData& s_data() {
  static const SData data = [] {
    SData d;
    for (int n = 1; n <= 24; ++n) {
      const auto dist = return_evolve<double>(uni(Alphabet::S), n);
      d.p0.emplace_back(n, trivial_braid_probability(dist));
      if (n >= 12 && psl_return_probability(dist) > 0) d.tables.emplace_back(n, flux_distribution(dist));
    }
    return d;
  }();
  return data;
}

Outcome lambda_rate() {
  const double target = find_target("lambda", Alphabet::S)->value;
  const FitResult r = fit_lambda(s_data().p0);
  const double rel = std::abs(r.estimate - target) / target;
  return {rel < 0.03, fmt("lambda = %.6f vs %.6f, relative error %.4f (tol 0.03)", r.estimate, target, rel)};
}

Outcome sigma_width() {
  const double target = find_target("sigma", Alphabet::S)->value;
  const FitResult r = fit_sigma(s_data().tables);
  const auto& last = s_data().tables.back();
  const double r2 = gaussian_shape_r2(last.second, last.first, r.estimate);
  const double rel = std::abs(r.estimate - target) / target;
  return {rel < 0.2 && r2 > 0.99 && last.first == 24,
          fmt("sigma = %.6f vs %.6f, relative error %.4f (tol 0.2); R^2 at n=%d = %.6f (need > 0.99)",
              r.estimate, target, rel, last.first, r2)};
}

Outcome alpha_constant() {
  const double target = find_target("alpha", Alphabet::Sprime)->value;
  const FitResult r = estimate_alpha(uni(Alphabet::Sprime), 400);
  const double rel = std::abs(r.estimate - target) / target;
  return {rel < 0.01, fmt("alpha = %.6f vs %.6f, relative error %.4f (tol 0.01)", r.estimate, target, rel)};
}

Outcome drift_sandwich() {
  const double target = find_target("drift", Alphabet::Sprime)->value;
  const StepMeasure m = uni(Alphabet::Sprime);
  std::vector<double> scaled;
  DriftEstimate big;
  for (int n : {100, 1000, 10000}) {
    const DriftEstimate d = drift_estimate(m, n, 10000, 20240601);
    scaled.push_back((d.upper - d.lower) * std::sqrt(static_cast<double>(n)));
    if (n == 10000) big = d;
  }
  const bool bracket = big.lower <= target && target <= big.upper;
  const bool close = std::abs(big.point - target) < 0.02;
  // Bounded: the scaled gap does not grow past its smallest-n value.
  const bool bounded = scaled[1] <= 1.5 * scaled[0] + 1e-12 && scaled[2] <= 1.5 * scaled[0] + 1e-12;
  return {bracket && close && bounded,
          fmt("n=10^4: lower %.5f upper %.5f point %.5f (target %.2f, bracket %s, |point-target| %.4f); "
              "gap*sqrt(n) = %.4f, %.4f, %.4f (%s)",
              big.lower, big.upper, big.point, target, bracket ? "yes" : "no",
              std::abs(big.point - target), scaled[0], scaled[1], scaled[2], bounded ? "bounded" : "growing")};
}

Outcome loop_phases() {
  double worst = 0;
  std::string where;
  for (double B : {0.25, 0.3, 0.7}) {
    const auto rep = build_rep(B, 80);
    for (double u : {1.0, 1.5}) {
      const LoopPhaseReport r = verify_loop_phases(rep, u, 40);
      for (double v : {r.residual_a2, r.residual_b3, r.residual_braid}) {
        if (v > worst) {
          worst = v;
          where = fmt("B=%.2f u=%.1f (a2 %.3g, b3 %.3g, braid %.3g)", B, u, r.residual_a2, r.residual_b3,
                      r.residual_braid);
        }
      }
    }
  }
  const LoopPhaseReport diag = verify_loop_phases(build_rep(0.25, 80), 1.0, 40);
  const bool exact = diag.residual_a2 < 1e-12;
  return {worst < 1e-6 && exact,
          fmt("N=80 interior 40: worst residual %.3g (tol 1e-6) at %s; u=1 B=0.25 a2 residual %.3g", worst,
              where.c_str(), diag.residual_a2)};
}

Outcome continuum_law() {
  double norm_err = 0, slope_err = 0;
  for (double t : {0.5, 1.0, 5.0, 20.0}) {
    const AreaLaw law(t);
    norm_err = std::max(norm_err, std::abs(law.integral() - 1));
    const double A = 1000 * std::sqrt(t);
    slope_err = std::max(slope_err, std::abs(law.log_slope(A) * (-2 * t) - 1));
  }
  auto rms = [](int n) {
    FluxTable t;
    for (const auto& [f, p] : flux_distribution(return_evolve<double>(uni(Alphabet::S), n))) t[f] = p;
    return compare_discrete_continuum(t, n).rms_gaussian;
  };
  const double r12 = rms(12), r24 = rms(24);
  return {norm_err < 1e-8 && slope_err < 0.01 && r24 < r12,
          fmt("normalization error %.3g (tol 1e-8); large-A slope deviation %.4f (tol 0.01); "
              "Gaussian-window rms n=12 %.4g -> n=24 %.4g",
              norm_err, slope_err, r12, r24)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"cocycle identity and associativity", cocycle_identity},
      {"central decomposition is a complete invariant", complete_invariant},
      {"Fourier/flux duality", fourier_duality},
      {"trivial-braid rate", lambda_rate},
      {"flux width", sigma_width},
      {"alpha constant", alpha_constant},
      {"drift sandwich", drift_sandwich},
      {"loop phases", loop_phases},
      {"continuum law", continuum_law},
  };

  int failed = 0;
  for (std::size_t k = 1; k <= criteria.size(); ++k) {
    if (only != 0 && static_cast<std::size_t>(only) != k) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", k,
                criteria[k - 1].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
