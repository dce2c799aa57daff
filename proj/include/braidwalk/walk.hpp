#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "braidwalk/braid_word.hpp"
#include "braidwalk/nf_tree.hpp"
#include "braidwalk/psl2z.hpp"
#include "braidwalk/rational.hpp"

namespace braidwalk {

// Step law of the walk: one probability per generator, in the order of
// generators(alphabet). Weights are exact and sum to 1.
struct StepMeasure {
  Alphabet alphabet = Alphabet::Sprime;
  std::array<Rational, 4> weights;

  static StepMeasure uniform(Alphabet a);
  // Throws std::invalid_argument on negative weights or a sum other than 1.
  static StepMeasure from_weights(Alphabet a, std::array<Rational, 4> w);

  // Invariant under letter inversion, w(x) = w(x^{-1}).
  bool symmetric() const { return weights[0] == weights[1] && weights[2] == weights[3]; }
};

// Full: the whole n-step law. ReturnOnly: states that cannot reach γ = e in
// the remaining steps were dropped along the way, so only the γ = e slice
// is meaningful (and it is exact).
enum class Scope { Full, ReturnOnly };

template <class W>
struct FluxedEntry {
  NodeId node;
  std::int64_t flux;
  W weight;
};

// Exact law of (γ, f) after n steps. W is Rational (oracle mode) or double
// (fast mode). Entries are sorted by (node, flux); nodes refer to `tree`.
template <class W>
struct FluxedDistribution {
  int n = 0;
  Alphabet alphabet = Alphabet::Sprime;
  Scope scope = Scope::Full;
  std::shared_ptr<NormalFormTree> tree;
  std::vector<FluxedEntry<W>> entries;

  W total_mass() const;
  W mass_at(const Psl2NormalForm& gamma, std::int64_t flux) const;
  Psl2NormalForm gamma(const FluxedEntry<W>& e) const { return tree->normal_form(e.node); }
};

using ExactDistribution = FluxedDistribution<Rational>;
using FastDistribution = FluxedDistribution<double>;

struct EvolveOptions {
  std::size_t max_states = 40'000'000;  // (γ, f) entries alive at any step
};

// Throws ResourceError when the budget is exceeded. In fast mode the total
// mass is checked against 1 to 1e-12 (InvariantError otherwise).
template <class W>
FluxedDistribution<W> exact_evolve(const StepMeasure& m, int n, EvolveOptions opt = {});

// Same DP, pruned to states whose PSL distance to e does not exceed the
// remaining step count. Returns a ReturnOnly distribution.
template <class W>
FluxedDistribution<W> return_evolve(const StepMeasure& m, int n, EvolveOptions opt = {});

template <class W>
W trivial_braid_probability(const FluxedDistribution<W>& d);
template <class W>
W psl_return_probability(const FluxedDistribution<W>& d);
template <class W>
std::map<std::int64_t, W> flux_distribution(const FluxedDistribution<W>& d);
// Probability that the normal form of π(w_n) ends with B or B². Full only.
template <class W>
W ends_in_b_probability(const FluxedDistribution<W>& d);

// Right-multiplication of (f, γ) by generators with γ kept as a syllable
// stack; used for long Monte Carlo walks where interning every prefix would
// be wasteful.
class StackWalker {
 public:
  void apply(const ProjectedGenerator& g);
  std::int64_t flux() const noexcept { return flux_; }
  const std::vector<Syllable>& syllables() const noexcept { return nf_; }
  std::size_t a_syllables() const noexcept { return a_count_; }
  std::int64_t section_exp() const noexcept { return section_exp_; }

 private:
  void push(Syllable s);

  std::vector<Syllable> nf_;
  std::int64_t section_exp_ = 0;
  std::int64_t flux_ = 0;
  std::size_t a_count_ = 0;
};

// Seeds of independent sub-streams are derived from the master seed by
// splitmix64 over (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

class LetterSampler {
 public:
  LetterSampler(const StepMeasure& m, std::uint64_t seed);
  std::size_t next();  // index into generators(alphabet)

 private:
  std::array<std::uint64_t, 3> cut_{};  // cumulative thresholds on 2^64
  std::uint64_t state_;
  std::size_t last_ = 3;  // last index with nonzero weight
};

struct WalkSample {
  std::uint64_t seed = 0;
  Alphabet alphabet = Alphabet::Sprime;
  std::vector<Letter> letters;
  std::shared_ptr<NormalFormTree> tree;
  std::vector<NodeId> nodes;  // nodes[i]: γ after i steps
  std::vector<std::int64_t> fluxes;

  std::size_t steps() const noexcept { return letters.size(); }
  CentralPair state(std::size_t i) const { return {fluxes[i], tree->normal_form(nodes[i])}; }
};

WalkSample sample_walk(const StepMeasure& m, int n, std::uint64_t seed);

struct DriftEstimate {
  int n = 0;
  std::size_t samples = 0;
  double lower = 0;   // ⟨L(π w_n)⟩ / n
  double upper = 0;   // lower + ⟨lift cost of the central part⟩ / n
  double point = 0;   // midpoint
  double lower_stderr = 0;
  double mean_lift_cost = 0;
};

// Length of the central part needed on top of a geodesic for π(w):
// over Sprime, each A syllable may be lifted to a or a^{-1} (absorbing one
// unit of flux for free) and the rest costs |Δ²| = |a²| = 2 per unit; over
// S the lift is a geodesic S-word for γ and the rest costs |Δ²| = 6 per
// unit.
std::int64_t central_lift_cost(const CentralPair& p, Alphabet a);

// Sample i uses the sub-seed derive_seed(seed, i). Samples are split into
// contiguous blocks across `workers` threads and block sums are combined in
// block order.
DriftEstimate drift_estimate(const StepMeasure& m, int n, std::size_t samples,
                             std::uint64_t seed, unsigned workers = 1);
// Same bounds evaluated exactly on a Full distribution.
template <class W>
DriftEstimate drift_exact(const FluxedDistribution<W>& d);

}  // namespace braidwalk
