#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include <json.hpp>

#include "racg/graph.hpp"
#include "racg/thickness.hpp"

namespace racg::explore {

enum class Variant {
  order1,  // explores a component of the square graph
  order2,  // adds bridge pairs, exploring a component of T2
};

enum class StopVerdict { large_stop, extinction_stop };

const char* to_string(Variant v);
const char* to_string(StopVerdict v);

struct StepRecord {
  NonEdge selected;
  NonEdge partner;
  std::size_t z_count = 0;
  std::size_t new_pairs = 0;     // from (F ∪ Z)^(2)
  std::size_t bridge_pairs = 0;  // from the bridge scan (order2 only)
};

struct ExplorationOutcome {
  StopVerdict verdict = StopVerdict::extinction_stop;
  std::size_t steps = 0;
  std::size_t active_plus_reached = 0;
  std::size_t discovered = 0;
  // A ∪ R at termination, in activation order.
  std::vector<NonEdge> explored;
  std::vector<StepRecord> trace;
};

// ceil((ln n)^4)
std::size_t default_cap(std::size_t n);

struct ExploreOptions {
  std::size_t cap = 0;  // 0: default_cap(n)
  bool keep_trace = false;
  // Assert partner validity and A ∩ R = ∅ at every step.
  bool check_invariants = false;
};

// Throws GraphError when `seed` is not an induced square of g.
ExplorationOutcome explore_square_component(const Graph& g, const Square& seed, const ExploreOptions& options = {});
ExplorationOutcome explore_order2(const Graph& g, const Square& seed, const ExploreOptions& options = {});
ExplorationOutcome run_exploration(const Graph& g, const Square& seed, Variant variant,
                                   const ExploreOptions& options = {});

// Quadruples {x2x3, y2y3} outside `excluded` such that, with X = {x1,x2,x3}
// and Y = {y1,y2,y3}, every x_i y_j other than x1 y1 is an edge and x2x3,
// y2y3 are non-edges. Returned as (x2x3, y2y3).
std::vector<std::pair<NonEdge, NonEdge>> bridge_pairs(const Graph& g, Vertex x1, Vertex y1,
                                                      const std::vector<bool>& excluded);

// Rejection-samples an induced square; nullopt after `attempts` misses.
std::optional<Square> random_induced_square(const Graph& g, std::mt19937_64& rng, std::size_t attempts = 100000);

// Offspring law of the idealized branching process at p = lambda / sqrt(n).
struct OffspringModel {
  double lambda = 0.0;
  bool modified = false;  // add the bridge-pair term
};

// lambda^4/2 + 2 lambda^2 (+ lambda^8/8 when modified).
double offspring_mean(const OffspringModel& model);

// Root of offspring_mean = 1 on [0, 2] by bisection to 1e-12.
double critical_lambda(bool modified);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
};

// X = C(Z+2, 2) - 1 with Z ~ Binomial(n, lambda^2/n); the modified model adds
// an independent Poisson(lambda^8/8) term.
std::size_t sample_offspring(const OffspringModel& model, std::size_t n, std::mt19937_64& rng);
Estimate sample_offspring_mean(const OffspringModel& model, std::size_t n, std::size_t samples, std::uint64_t seed);

// Fraction of single-ancestor processes still alive after generations_cap
// generations or exceeding population_cap, with its binomial standard error.
Estimate bgw_simulate(const OffspringModel& model, std::size_t n, std::size_t generations_cap,
                      std::size_t population_cap, std::size_t trials, std::uint64_t seed);

struct ExploreConfig {
  std::size_t n = 1000;
  double lambda = 0.75;
  Variant variant = Variant::order1;
  std::size_t trials = 10;
  std::uint64_t master_seed = 1;
  std::size_t cap = 0;
  unsigned jobs = 1;
};

struct ExploreTrial {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool seeded = false;  // false when no induced square was found
  ExplorationOutcome outcome;
};

// Trial t samples G(n, lambda/sqrt(n)) from a seed that ignores the variant,
// so order1 and order2 runs with the same master seed are paired.
std::vector<ExploreTrial> explore_trials(const ExploreConfig& config);

void write_csv(std::ostream& out, const ExploreConfig& config, const std::vector<ExploreTrial>& trials);
nlohmann::json trials_json(const ExploreConfig& config, const std::vector<ExploreTrial>& trials);

}  // namespace racg::explore
