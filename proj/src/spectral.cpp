#include "braidwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "braidwalk/errors.hpp"
#include "braidwalk/psl_geodesic.hpp"

namespace braidwalk {

std::vector<double> theta_grid(std::size_t m) {
  if (m == 0) throw std::invalid_argument("theta_grid: empty grid");
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j)
    out[j] = -std::numbers::pi + 2 * std::numbers::pi * static_cast<double>(j + 1) /
                                     static_cast<double>(m);
  return out;
}

namespace {

// Weight of paths from e back to e, with states that cannot return pruned.
Complex pruned_return_weight(const StepMeasure& m, int n, const std::array<Complex, 4>& w,
                             const EvolveOptions& opt) {
  if (n < 0) throw std::invalid_argument("twisted_trace: negative step count");
  NormalFormTree tree;
  const auto gens = projected_generators(m.alphabet);
  std::optional<PslGeodesicTable> lengths;
  if (m.alphabet == Alphabet::S) {
    lengths.emplace(tree, Alphabet::S);
    lengths->ensure_radius((n + 1) / 2);
  }
  auto too_far = [&](NodeId x, int remaining) {
    if (m.alphabet == Alphabet::Sprime) return static_cast<int>(tree.depth(x)) > remaining;
    const auto d = lengths->distance(x);
    return !d || *d > remaining;
  };

  std::unordered_map<NodeId, Complex> cur{{NormalFormTree::kIdentity, Complex(1)}};
  for (int k = 0; k < n; ++k) {
    const int remaining = n - k - 1;
    const bool check = k + 1 > remaining;
    std::unordered_map<NodeId, Complex> next;
    next.reserve(cur.size() * 2);
    for (const auto& [node, value] : cur) {
      for (std::size_t i = 0; i < 4; ++i) {
        if (m.weights[i] == 0) continue;
        const NodeId y = tree.multiply(node, gens[i].image);
        if (check && too_far(y, remaining)) continue;
        next[y] += value * w[i];
      }
    }
    if (next.size() > opt.max_states)
      throw ResourceError("twisted_trace: more than " + std::to_string(opt.max_states) +
                          " states at step " + std::to_string(k + 1));
    cur = std::move(next);
  }
  auto it = cur.find(NormalFormTree::kIdentity);
  return it == cur.end() ? Complex(0) : it->second;
}

std::array<Complex, 4> phased_weights(const StepMeasure& m, double theta) {
  const auto gens = projected_generators(m.alphabet);
  std::array<Complex, 4> w;
  for (std::size_t i = 0; i < 4; ++i)
    w[i] = to_double(m.weights[i]) * std::polar(1.0, theta * gens[i].exponent / 6.0);
  return w;
}

}  // namespace

Complex twisted_trace(const StepMeasure& m, int n, double theta, EvolveOptions opt) {
  return pruned_return_weight(m, n, phased_weights(m, theta), opt);
}

TwistedTraceSeries twisted_traces(const StepMeasure& m, int n, std::size_t grid,
                                  unsigned workers, EvolveOptions opt) {
  TwistedTraceSeries s;
  s.alphabet = m.alphabet;
  s.n = n;
  s.theta = theta_grid(grid);
  s.values.assign(grid, Complex(0));
  const std::size_t blocks = std::clamp<std::size_t>(workers, 1, grid);
  auto run = [&](std::size_t b) {
    for (std::size_t j = b; j < grid; j += blocks) s.values[j] = twisted_trace(m, n, s.theta[j], opt);
  };
  if (blocks == 1) {
    run(0);
    return s;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(blocks);
  for (std::size_t b = 0; b < blocks; ++b)
    pool.emplace_back([&, b] {
      try {
        run(b);
      } catch (...) {
        errors[b] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return s;
}

Complex fourier_invert_complex(const TwistedTraceSeries& s, std::int64_t f) {
  const std::size_t need = required_grid_size(s.n);
  if (s.values.size() < need) throw GridTooSmall(s.values.size(), need);
  // Outside the support the sum would only see aliases of |f| <= n.
  if (f > s.n || f < -s.n) return 0;
  Complex acc = 0;
  for (std::size_t j = 0; j < s.values.size(); ++j)
    acc += s.values[j] * std::polar(1.0, -static_cast<double>(f) * s.theta[j]);
  return acc / static_cast<double>(s.values.size());
}

double fourier_invert(const TwistedTraceSeries& s, std::int64_t f) {
  return fourier_invert_complex(s, f).real();
}

std::map<std::int64_t, double> fourier_invert_all(const TwistedTraceSeries& s) {
  std::map<std::int64_t, double> out;
  for (std::int64_t f = -s.n; f <= s.n; ++f) out[f] = fourier_invert(s, f);
  return out;
}

double RecursionState::total() const {
  double t = 0;
  for (double x : c) t += x;
  return t;
}

void recursion_step(RecursionState& s) {
  const double a = s.alpha;
  const double c2 = std::cos(s.theta / 2), c3 = std::cos(s.theta / 3);
  const double up = a / 2 * c2 + (1 - a) / 2 * c3;
  const double stay = a / 4 * c3;
  const double down = (1 - a) / 2 * c2 + a / 4 * c3;
  const double row0_c1 =
      s.boundary == RecursionBoundary::Verbatim ? (1 - a) / 2 * c2 : down;
  const std::size_t size = s.c.size();
  std::vector<double> next(size, 0.0);
  auto at = [&](std::size_t k) { return k < size ? s.c[k] : 0.0; };
  next[0] = row0_c1 * at(1) + 0.5 * c3 * at(0);
  for (std::size_t k = 1; k < size; ++k)
    next[k] = up * at(k - 1) + stay * at(k) + down * at(k + 1);
  s.c = std::move(next);
  ++s.n;
}

RecursionState recursion_evolve(double theta, double alpha, int n, int k_max,
                                RecursionBoundary boundary) {
  if (!(alpha >= 0 && alpha <= 1)) throw std::invalid_argument("recursion_evolve: alpha outside [0, 1]");
  if (n < 0 || k_max < n) throw std::invalid_argument("recursion_evolve: need 0 <= n <= k_max");
  RecursionState s;
  s.theta = theta;
  s.alpha = alpha;
  s.boundary = boundary;
  s.c.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
  s.c[0] = 1;
  for (int i = 0; i < n; ++i) recursion_step(s);
  return s;
}

double mu_closed_form(double theta) noexcept {
  return (std::cos(theta / 2) + std::cos(theta / 3)) / 2;
}

MuEstimate estimate_mu(double theta, double alpha, int n, RecursionBoundary boundary) {
  if (n < 1) throw std::invalid_argument("estimate_mu: need n >= 1");
  const RecursionState at = recursion_evolve(theta, alpha, n, n, boundary);
  const RecursionState zero = recursion_evolve(0, alpha, n, n, boundary);
  auto root = [n](double ratio) {
    return ratio > 0 ? std::pow(ratio, 1.0 / n) : std::numeric_limits<double>::quiet_NaN();
  };
  MuEstimate out;
  out.theta = theta;
  out.n = n;
  out.from_c0 = root(at.c[0] / zero.c[0]);
  out.from_mass = root(at.total() / zero.total());
  out.closed_form = mu_closed_form(theta);
  return out;
}

namespace {

using boost::multiprecision::cpp_int;

std::optional<std::vector<std::pair<int, double>>> lumped_ends_in_b(const StepMeasure& m, int n) {
  if (m.alphabet != Alphabet::Sprime || m.weights[2] != m.weights[3]) return std::nullopt;
  cpp_int denom = 1;
  for (const auto& w : m.weights)
    denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(w));
  auto scaled = [&](const Rational& w) {
    const Rational x = w * Rational(denom);
    return boost::multiprecision::numerator(x);
  };
  const cpp_int pa = scaled(m.weights[0]) + scaled(m.weights[1]);
  const cpp_int q = scaled(m.weights[2]);

  // Index ℓ = 1..n; slot 0 unused. Counts are masses times denom^k.
  const auto size = static_cast<std::size_t>(n) + 2;
  cpp_int id = 1;
  std::vector<cpp_int> ends_a(size), ends_b(size);
  cpp_int scale = 1;
  std::vector<std::pair<int, double>> out{{0, 0.0}};
  for (int k = 1; k <= n; ++k) {
    cpp_int nid = 0;
    std::vector<cpp_int> na(size), nb(size);
    na[1] += id * pa;
    nb[1] += id * 2 * q;
    for (int l = 1; l < k; ++l) {
      const auto i = static_cast<std::size_t>(l);
      if (ends_a[i] != 0) {
        if (l == 1) nid += ends_a[i] * pa;
        else nb[i - 1] += ends_a[i] * pa;
        nb[i + 1] += ends_a[i] * 2 * q;
      }
      if (ends_b[i] != 0) {
        na[i + 1] += ends_b[i] * pa;
        nb[i] += ends_b[i] * q;
        if (l == 1) nid += ends_b[i] * q;
        else na[i - 1] += ends_b[i] * q;
      }
    }
    id = std::move(nid);
    ends_a = std::move(na);
    ends_b = std::move(nb);
    scale *= denom;
    cpp_int sum_b = 0;
    for (const auto& x : ends_b) sum_b += x;
    out.emplace_back(k, to_double(Rational(sum_b, scale)));
  }
  return out;
}

}  // namespace

std::vector<std::pair<int, double>> ends_in_b_sequence(const StepMeasure& m, int n,
                                                       EvolveOptions opt) {
  if (n < 0) throw std::invalid_argument("ends_in_b_sequence: negative step count");
  if (auto lumped = lumped_ends_in_b(m, n)) return *lumped;
  std::vector<std::pair<int, double>> out;
  for (int k = 0; k <= n; ++k)
    out.emplace_back(k, ends_in_b_probability(exact_evolve<double>(m, k, opt)));
  return out;
}

namespace {

double aitken(double x0, double x1, double x2) {
  const double d = x2 - 2 * x1 + x0;
  if (std::abs(d) < 1e-300) return x2;
  return x2 - (x2 - x1) * (x2 - x1) / d;
}

double observed_order(double x0, double x1, double x2) {
  const double d1 = std::abs(x1 - x0), d2 = std::abs(x2 - x1);
  if (d1 == 0 || d2 == 0) return std::numeric_limits<double>::infinity();
  return std::log2(d1 / d2);
}

}  // namespace

FitResult estimate_alpha(const StepMeasure& m, int n, EvolveOptions opt) {
  if (n < 50) throw std::invalid_argument("estimate_alpha: need n >= 50");
  FitResult r;
  r.raw = ends_in_b_sequence(m, n, opt);
  const double x0 = r.raw[static_cast<std::size_t>(n / 4)].second;
  const double x1 = r.raw[static_cast<std::size_t>(n / 2)].second;
  const double x2 = r.raw[static_cast<std::size_t>(n)].second;
  r.estimate = aitken(x0, x1, x2);
  r.diagnostics["raw_last"] = x2;
  r.diagnostics["order_per_doubling"] = observed_order(x0, x1, x2);
  r.diagnostics["ends_in_a"] = 1 - r.estimate;
  return r;
}

namespace {

// Value at x = 0 of the polynomial through the given points.
double extrapolate_to_zero(const std::vector<std::pair<double, double>>& pts) {
  double acc = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double li = 1;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) li *= (0 - pts[j].first) / (pts[i].first - pts[j].first);
    acc += li * pts[i].second;
  }
  return acc;
}

}  // namespace

FitResult fit_lambda(const std::vector<std::pair<int, double>>& p_sequence) {
  std::map<int, double> p;
  for (const auto& [n, v] : p_sequence)
    if (n > 0 && v > 0) p[n] = v;
  if (p.empty()) throw std::invalid_argument("fit_lambda: no nonzero entries");

  std::array<std::vector<std::pair<double, double>>, 2> by_parity;
  for (const auto& [n, v] : p) {
    auto it = p.find(n + 2);
    if (it == p.end()) continue;
    const double lam = std::sqrt(it->second / v) * (n + 2) / n;
    by_parity[static_cast<std::size_t>(n % 2)].emplace_back(n, lam);
  }
  // Four same-parity entries give three consecutive ratios.
  const auto& seq = by_parity[0].size() >= by_parity[1].size() ? by_parity[0] : by_parity[1];
  if (seq.size() < 3) throw std::invalid_argument("fit_lambda: need at least four same-parity nonzero entries");

  FitResult r;
  for (const auto& [n, lam] : seq) r.raw.emplace_back(static_cast<int>(n), lam);
  std::vector<std::pair<double, double>> last3;
  for (std::size_t i = seq.size() - 3; i < seq.size(); ++i)
    last3.emplace_back(1.0 / seq[i].first, seq[i].second);
  r.estimate = extrapolate_to_zero(last3);
  r.diagnostics["raw_last"] = seq.back().second;
  r.diagnostics["first_order"] = extrapolate_to_zero({last3[1], last3[2]});
  r.diagnostics["second_order"] = r.estimate;
  r.diagnostics["order"] = observed_order(last3[0].second, last3[1].second, last3[2].second);
  return r;
}

std::pair<double, double> flux_moments(const FluxTable& t) {
  double m0 = 0, m1 = 0, m2 = 0;
  for (const auto& [f, w] : t) {
    const auto x = static_cast<double>(f);
    m0 += w;
    m1 += w * x;
    m2 += w * x * x;
  }
  if (m0 <= 0) throw std::invalid_argument("flux_moments: empty table");
  const double mean = m1 / m0;
  return {mean, m2 / m0 - mean * mean};
}

FitResult fit_sigma(const std::vector<std::pair<int, FluxTable>>& tables) {
  if (tables.size() < 3) throw std::invalid_argument("fit_sigma: need at least three values of n");
  FitResult r;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, t] : tables) {
    if (n < 1) throw std::invalid_argument("fit_sigma: need n >= 1");
    const double var = flux_moments(t).second;
    if (!(var > 0)) throw std::invalid_argument("fit_sigma: degenerate flux variance at n=" + std::to_string(n));
    const double x = 1.0 / n, y = var / n;
    r.raw.emplace_back(n, std::sqrt(y));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto k = static_cast<double>(tables.size());
  const double det = k * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("fit_sigma: need distinct values of n");
  const double slope = (k * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / k;
  if (!(intercept > 0)) throw std::invalid_argument("fit_sigma: extrapolated variance is not positive");
  r.estimate = std::sqrt(intercept);
  r.diagnostics["slope"] = slope;
  r.diagnostics["raw_last"] = r.raw.back().second;
  r.diagnostics["sigma2"] = intercept;
  return r;
}

double gaussian_shape_r2(const FluxTable& t, int n, double sigma) {
  auto zero = t.find(0);
  if (zero == t.end() || !(zero->second > 0))
    throw std::invalid_argument("gaussian_shape_r2: p(0) must be positive");
  const double window = 3 * std::sqrt(static_cast<double>(n)) * sigma;
  std::vector<std::pair<double, double>> pts;
  for (const auto& [f, w] : t)
    if (w > 0 && std::abs(static_cast<double>(f)) <= window)
      pts.emplace_back(static_cast<double>(f) * f, std::log(w) - std::log(zero->second));
  if (pts.size() < 3) throw std::invalid_argument("gaussian_shape_r2: fewer than three points in the window");
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (syy == 0 || sxx == 0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace braidwalk
