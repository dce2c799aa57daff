#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "braidwalk/continuum.hpp"
#include "braidwalk/errors.hpp"
#include "braidwalk/gmto.hpp"
#include "braidwalk/oracle.hpp"
#include "braidwalk/spectral.hpp"
#include "braidwalk/targets.hpp"
#include "braidwalk/version.hpp"
#include "braidwalk/walk.hpp"

namespace braidwalk::cli {

using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string subcommand;
  std::string alphabet = "Sprime";
  int n = -1;
  std::size_t samples = 10000;
  std::optional<std::uint64_t> seed;
  std::size_t grid = 0;
  double B = 0.3;
  double u = 1.0;
  int N = 80;
  int interior = 0;
  std::string output;
  std::string format = "json";
  unsigned workers = 1;
  std::string mode = "exact";
  std::string scope = "full";
  std::string quantity = "all";
  int nmin = 12;
  int nmax = 24;
  std::vector<int> ns{100, 1000, 10000};
  std::string weights;
  std::string convention = "plain";
  std::vector<double> ts{0.5, 1, 5, 20};
  std::size_t max_states = EvolveOptions{}.max_states;

  EvolveOptions budget() const { return EvolveOptions{max_states}; }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json versions() {
  Json v;
  v["braidwalk"] = BRAIDWALK_VERSION;
  v["boost"] = std::to_string(BOOST_VERSION / 100000) + "." +
               std::to_string(BOOST_VERSION / 100 % 1000) + "." + std::to_string(BOOST_VERSION % 100);
  v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  v["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                       std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  return v;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["alphabet"] = c.alphabet;
  if (c.n >= 0) j["n"] = c.n;
  j["samples"] = c.samples;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["grid"] = c.grid;
  j["B"] = c.B;
  j["u"] = c.u;
  j["N"] = c.N;
  j["interior"] = c.interior;
  j["format"] = c.format;
  j["workers"] = c.workers;
  j["mode"] = c.mode;
  j["scope"] = c.scope;
  j["quantity"] = c.quantity;
  j["nmin"] = c.nmin;
  j["nmax"] = c.nmax;
  j["ns"] = c.ns;
  j["weights"] = c.weights.empty() ? Json("uniform") : Json(c.weights);
  j["convention"] = c.convention;
  j["ts"] = c.ts;
  j["max_states"] = c.max_states;
  return j;
}

StepMeasure measure_of(const RunConfig& c) {
  const Alphabet a = parse_alphabet(c.alphabet);
  if (c.weights.empty()) return StepMeasure::uniform(a);
  std::array<Rational, 4> w;
  std::stringstream ss(c.weights);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw UsageError("--weights takes exactly four values");
    try {
      w[i++] = Rational(item);
    } catch (const std::exception&) {
      throw UsageError("--weights: cannot read '" + item + "' as a rational");
    }
  }
  if (i != 4) throw UsageError("--weights takes exactly four values");
  return StepMeasure::from_weights(a, w);
}

Json target_json(std::string_view key, Alphabet a, double estimate) {
  const auto t = find_target(key, a);
  if (!t) return nullptr;
  Json j;
  j["expression"] = std::string(t->expression);
  j["value"] = t->value;
  j["label"] = std::string(t->label);
  j["relative_error"] = std::abs(estimate - t->value) / t->value;
  return j;
}

Json fit_json(const std::string& quantity, Alphabet a, const FitResult& r) {
  Json j;
  j["quantity"] = quantity;
  j["alphabet"] = std::string(to_string(a));
  j["estimate"] = r.estimate;
  j["target"] = target_json(quantity, a, r.estimate);
  Json raw = Json::array();
  for (const auto& [n, v] : r.raw) raw.push_back({{"n", n}, {"value", v}});
  j["raw"] = raw;
  Json d;
  for (const auto& [k, v] : r.diagnostics) d[k] = v;
  j["diagnostics"] = d;
  return j;
}

template <class W>
Json dist_data(const FluxedDistribution<W>& d, const std::string& mode) {
  const std::string alpha(to_string(d.alphabet));
  Json j;
  j["n"] = d.n;
  j["alphabet"] = alpha;
  j["mode"] = mode;
  j["scope"] = d.scope == Scope::Full ? "full" : "return";
  j["states"] = d.entries.size();
  if (d.scope == Scope::Full) j["total_mass"] = to_double(d.total_mass());
  j["trivial_braid_probability"] = to_double(trivial_braid_probability(d));
  j["psl_return_probability"] = to_double(psl_return_probability(d));
  if constexpr (std::is_same_v<W, Rational>) {
    j["trivial_braid_probability_exact"] = trivial_braid_probability(d).str();
    j["psl_return_probability_exact"] = psl_return_probability(d).str();
  }
  if (d.scope == Scope::Full && d.n > 0) j["ends_in_b_probability"] = to_double(ends_in_b_probability(d));
  Json rows = Json::array();
  for (const auto& [f, w] : flux_distribution(d)) {
    Json r{{"n", d.n}, {"alphabet", alpha}, {"mode", mode}, {"f", f}, {"p", to_double(w)}};
    if constexpr (std::is_same_v<W, Rational>) r["p_exact"] = w.str();
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j;
}

Json cmd_dist(const RunConfig& c) {
  if (c.n < 0) throw UsageError("dist: --n is required");
  const StepMeasure m = measure_of(c);
  const bool full = c.scope == "full";
  if (c.mode == "exact")
    return dist_data(full ? exact_evolve<Rational>(m, c.n, c.budget()) : return_evolve<Rational>(m, c.n, c.budget()),
                     c.mode);
  return dist_data(full ? exact_evolve<double>(m, c.n, c.budget()) : return_evolve<double>(m, c.n, c.budget()),
                   c.mode);
}

Json cmd_trace(const RunConfig& c) {
  if (c.n < 0) throw UsageError("trace: --n is required");
  const StepMeasure m = measure_of(c);
  const std::size_t grid = c.grid ? c.grid : required_grid_size(c.n);
  if (grid < required_grid_size(c.n)) throw GridTooSmall(grid, required_grid_size(c.n));
  const TwistedTraceSeries s = twisted_traces(m, c.n, grid, c.workers, c.budget());
  const auto dp = flux_distribution(return_evolve<double>(m, c.n, c.budget()));
  const std::string alpha(to_string(m.alphabet));

  Json j;
  j["n"] = c.n;
  j["alphabet"] = alpha;
  j["grid"] = grid;
  Json traces = Json::array();
  for (std::size_t i = 0; i < grid; ++i)
    traces.push_back({{"theta", s.theta[i]}, {"re", s.values[i].real()}, {"im", s.values[i].imag()}});
  j["traces"] = traces;
  double max_res = 0, max_imag = 0;
  Json rows = Json::array();
  for (std::int64_t f = -c.n; f <= c.n; ++f) {
    const Complex inv = fourier_invert_complex(s, f);
    auto it = dp.find(f);
    const double exact = it == dp.end() ? 0.0 : it->second;
    max_res = std::max(max_res, std::abs(inv.real() - exact));
    max_imag = std::max(max_imag, std::abs(inv.imag()));
    rows.push_back({{"n", c.n}, {"alphabet", alpha}, {"mode", "exact"}, {"f", f},
                    {"p_fourier", inv.real()}, {"p_dp", exact},
                    {"residual", inv.real() - exact}, {"imag", inv.imag()}});
  }
  j["max_duality_residual"] = max_res;
  j["max_imaginary_part"] = max_imag;
  j["rows"] = rows;
  return j;
}

Json cmd_drift(const RunConfig& c) {
  if (!c.seed) throw UsageError("drift: --seed is required");
  if (c.samples < 1) throw UsageError("drift: --samples must be positive");
  const StepMeasure m = measure_of(c);
  const std::string alpha(to_string(m.alphabet));
  std::vector<int> ns = c.ns;
  if (c.n > 0) ns = {c.n};
  Json j;
  j["alphabet"] = alpha;
  j["samples"] = c.samples;
  j["seed"] = *c.seed;
  Json rows = Json::array();
  double last_point = 0;
  for (int n : ns) {
    if (n < 1) throw UsageError("drift: step counts must be positive");
    const DriftEstimate d = drift_estimate(m, n, c.samples, *c.seed, c.workers);
    rows.push_back({{"n", n}, {"alphabet", alpha}, {"mode", "mc"}, {"samples", d.samples},
                    {"lower", d.lower}, {"upper", d.upper}, {"point", d.point},
                    {"lower_stderr", d.lower_stderr}, {"mean_lift_cost", d.mean_lift_cost},
                    {"gap_sqrt_n", (d.upper - d.lower) * std::sqrt(static_cast<double>(n))}});
    last_point = d.point;
  }
  j["rows"] = rows;
  j["target"] = target_json("drift", m.alphabet, last_point);
  return j;
}

Json cmd_fit(const RunConfig& c) {
  const StepMeasure m = measure_of(c);
  const Alphabet a = m.alphabet;
  const bool all = c.quantity == "all";
  Json results = Json::array();
  Json rows = Json::array();
  auto add_rows = [&](const std::string& q, const FitResult& r) {
    for (const auto& [n, v] : r.raw)
      rows.push_back({{"quantity", q}, {"alphabet", std::string(to_string(a))}, {"mode", "exact"},
                      {"n", n}, {"value", v}});
  };

  if (all || c.quantity == "lambda" || c.quantity == "sigma") {
    if (c.nmax < 4) throw UsageError("fit: --nmax must be at least 4");
    std::vector<std::pair<int, double>> seq;
    std::vector<std::pair<int, FluxTable>> tables;
    for (int n = 1; n <= c.nmax; ++n) {
      const auto d = return_evolve<double>(m, n, c.budget());
      seq.emplace_back(n, trivial_braid_probability(d));
      if (n >= c.nmin && psl_return_probability(d) > 0) tables.emplace_back(n, flux_distribution(d));
    }
    if (all || c.quantity == "lambda") {
      const FitResult r = fit_lambda(seq);
      results.push_back(fit_json("lambda", a, r));
      add_rows("lambda", r);
    }
    if (all || c.quantity == "sigma") {
      const FitResult r = fit_sigma(tables);
      Json fj = fit_json("sigma", a, r);
      fj["gaussian_shape_r2"] = gaussian_shape_r2(tables.back().second, tables.back().first, r.estimate);
      fj["gaussian_shape_n"] = tables.back().first;
      results.push_back(fj);
      add_rows("sigma", r);
    }
  }
  if (all || c.quantity == "alpha") {
    const int n = c.n > 0 ? c.n : 400;
    const FitResult r = estimate_alpha(m, n, c.budget());
    results.push_back(fit_json("alpha", a, r));
    add_rows("alpha", r);
  }
  if (results.empty()) throw UsageError("fit: --quantity must be lambda, sigma, alpha or all");
  Json j;
  j["alphabet"] = std::string(to_string(a));
  j["results"] = results;
  j["rows"] = rows;
  return j;
}

ContractionConvention convention_of(const std::string& s) {
  if (s == "plain") return ContractionConvention::PlainSum;
  if (s == "lowered") return ContractionConvention::MetricLowered;
  throw UsageError("--convention must be plain or lowered");
}

Json cmd_gmto(const RunConfig& c) {
  const DiscreteSeriesRep rep = build_rep(c.B, c.N);
  const LoopPhaseReport r = verify_loop_phases(rep, c.u, c.interior, convention_of(c.convention));
  Json row{{"B", r.B},
           {"u", r.u},
           {"N", r.N},
           {"interior", r.interior},
           {"mode", "numeric"},
           {"convention", to_string(r.convention)},
           {"residual_a2", r.residual_a2},
           {"residual_b3", r.residual_b3},
           {"residual_a2_b3", r.residual_a2_b3},
           {"residual_braid", r.residual_braid},
           {"unitarity_a", r.unitarity_a},
           {"unitarity_b", r.unitarity_b},
           {"phase_re", r.phase.real()},
           {"phase_im", r.phase.imag()},
           {"phase_error", r.phase_error},
           {"casimir_deviation", casimir_interior_deviation(rep)},
           {"commutator_residual", commutator_interior_residual(rep)}};
  Json j = row;
  j["rows"] = Json::array({row});
  return j;
}

Json cmd_continuum(const RunConfig& c) {
  const int n = c.n > 0 ? c.n : 24;
  const StepMeasure m = measure_of(c);
  const ContinuumComparison cmp = compare_discrete_continuum(flux_distribution(return_evolve<double>(m, n, c.budget())), n);
  const std::string alpha(to_string(m.alphabet));
  Json j;
  j["n"] = n;
  j["alphabet"] = alpha;
  j["sigma"] = cmp.sigma;
  j["kappa"] = cmp.kappa;
  j["t"] = cmp.t;
  j["window"] = cmp.window;
  j["rms_gaussian"] = cmp.rms_gaussian;
  j["rms_continuum"] = cmp.rms_continuum;
  j["small_area_note"] = cmp.small_area_note;
  Json laws = Json::array();
  for (double t : c.ts) {
    const AreaLaw law(t);
    const double A = 1000;
    laws.push_back({{"t", t},
                    {"normalization_error", std::abs(law.integral() - 1)},
                    {"cutoff", law.cutoff()},
                    {"slope_at_A", A},
                    {"log_slope", law.log_slope_numeric(A)},
                    {"slope_relative_deviation", std::abs(law.log_slope_numeric(A) * 2 * t + 1)}});
  }
  j["area_law"] = laws;
  Json rows = Json::array();
  for (const auto& p : cmp.points)
    rows.push_back({{"n", n}, {"alphabet", alpha}, {"mode", "exact"}, {"f", p.f},
                    {"discrete_ratio", p.discrete_ratio}, {"gaussian_ratio", p.gaussian_ratio},
                    {"continuum_ratio", p.continuum_ratio},
                    {"gaussian_residual", p.gaussian_residual},
                    {"continuum_residual", p.continuum_residual}, {"small_area", p.small_area}});
  j["rows"] = rows;
  return j;
}

Json cmd_oracle(const RunConfig& c) {
  if (c.n < 0) throw UsageError("oracle: --n is required");
  if (c.n > 8) throw UsageError("oracle: --n must be at most 8");
  const StepMeasure m = measure_of(c);
  const OracleComparison r =
      compare_distributions(brute_force_distribution(m, c.n), exact_evolve<Rational>(m, c.n));
  const std::string alpha(to_string(m.alphabet));
  Json row{{"n", c.n},
           {"alphabet", alpha},
           {"mode", "exact"},
           {"status", r.match ? "match" : "mismatch"},
           {"entries_brute_force", r.entries_left},
           {"entries_dp", r.entries_right},
           {"mismatches", r.mismatches}};
  Json j = row;
  j["first_mismatch"] = r.first_mismatch;
  j["rows"] = Json::array({row});
  return j;
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::string to_csv(const Json& rows) {
  std::vector<std::string> keys;
  for (const auto& r : rows)
    for (auto it = r.begin(); it != r.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ",";
      if (r.contains(keys[i])) out += csv_cell(r[keys[i]]);
    }
    out += "\n";
  }
  return out;
}

std::filesystem::path output_path(const std::string& output) {
  std::filesystem::path p(output);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("BRAIDWALK_OUTPUT_DIR"); dir && *dir)
      p = std::filesystem::path(dir) / p;
  }
  return p;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--alphabet", c.alphabet, "generator set: S or Sprime")
      ->check(CLI::IsMember({"S", "Sprime", "S'"}));
  sub->add_option("--weights", c.weights, "four step probabilities, e.g. 1/4,1/4,1/4,1/4");
  sub->add_option("--output,-o", c.output,
                  "output file; relative paths resolve under $BRAIDWALK_OUTPUT_DIR");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--workers", c.workers,
                  "threads; floating results are reproducible for a fixed worker count")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-states", c.max_states, "state budget of the exact DP")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Random walks on B3 through PSL(2,Z) with flux", "braidwalk"};
  app.require_subcommand(1);

  auto* dist = app.add_subcommand("dist", "exact n-step law of (γ, f)");
  add_common(dist, c);
  dist->add_option("--n", c.n, "step count")->required()->check(CLI::NonNegativeNumber);
  dist->add_option("--mode", c.mode, "exact or fast")->check(CLI::IsMember({"exact", "fast"}));
  dist->add_option("--scope", c.scope, "full or return")->check(CLI::IsMember({"full", "return"}));

  auto* trace = app.add_subcommand("trace", "twisted traces and their Fourier inversion");
  add_common(trace, c);
  trace->add_option("--n", c.n, "step count")->required()->check(CLI::NonNegativeNumber);
  trace->add_option("--grid", c.grid, "theta grid size (default 12n+1)");

  auto* drift = app.add_subcommand("drift", "Monte Carlo sandwich bounds on the drift");
  add_common(drift, c);
  drift->add_option("--n", c.n, "single step count (overrides --ns)");
  drift->add_option("--ns", c.ns, "step counts")->delimiter(',');
  drift->add_option("--samples", c.samples, "walks per step count")->check(CLI::PositiveNumber);
  drift->add_option("--seed", c.seed, "master seed");

  auto* fit = app.add_subcommand("fit", "fitted λ, σ and α with reference values");
  add_common(fit, c);
  fit->add_option("--quantity", c.quantity, "lambda, sigma, alpha or all")
      ->check(CLI::IsMember({"lambda", "sigma", "alpha", "all"}));
  fit->add_option("--nmin", c.nmin, "smallest n for the σ fit")->check(CLI::PositiveNumber);
  fit->add_option("--nmax", c.nmax, "largest n for λ and σ")->check(CLI::PositiveNumber);
  fit->add_option("--n", c.n, "step count for α (default 400)")->check(CLI::PositiveNumber);

  auto* gmto = app.add_subcommand("gmto", "loop phases of the truncated operators");
  add_common(gmto, c);
  gmto->add_option("--B", c.B, "lowest weight")->check(CLI::PositiveNumber);
  gmto->add_option("--u", c.u, "deformation parameter");
  gmto->add_option("--N", c.N, "truncation dimension")->check(CLI::Range(8, 4096));
  gmto->add_option("--interior", c.interior, "interior block size (default N/2)")
      ->check(CLI::NonNegativeNumber);
  gmto->add_option("--convention", c.convention, "plain or lowered")
      ->check(CLI::IsMember({"plain", "lowered"}));

  auto* continuum = app.add_subcommand("continuum", "discrete flux law against the area law");
  add_common(continuum, c);
  continuum->add_option("--n", c.n, "step count (default 24)")->check(CLI::Range(12, 40));
  continuum->add_option("--t", c.ts, "times for the area-law checks")->delimiter(',');

  auto* oracle = app.add_subcommand("oracle", "brute-force enumeration against the DP");
  add_common(oracle, c);
  oracle->add_option("--n", c.n, "step count (at most 8)")->required()->check(CLI::Range(0, 8));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const std::vector<std::pair<CLI::App*, Json (*)(const RunConfig&)>> commands{
      {dist, cmd_dist},   {trace, cmd_trace},         {drift, cmd_drift}, {fit, cmd_fit},
      {gmto, cmd_gmto},   {continuum, cmd_continuum}, {oracle, cmd_oracle}};
  try {
    Json data;
    for (const auto& [sub, fn] : commands) {
      if (!sub->parsed()) continue;
      c.subcommand = sub->get_name();
      if (c.subcommand == "continuum" && !continuum->count("--alphabet")) c.alphabet = "S";
      data = fn(c);
    }

    std::string payload;
    if (c.format == "csv") {
      payload = to_csv(data["rows"]);
    } else {
      Json report;
      report["schema"] = BRAIDWALK_SCHEMA;
      report["subcommand"] = c.subcommand;
      report["versions"] = versions();
      report["config"] = config_json(c);
      report["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
      report["data"] = data;
      payload = report.dump(2) + "\n";
    }

    if (c.output.empty()) {
      out << payload;
    } else {
      const auto path = output_path(c.output);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open " + path.string());
      f << payload;
      out << path.string() << "\n";
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace braidwalk::cli
