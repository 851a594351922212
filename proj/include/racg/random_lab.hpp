#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "racg/graph.hpp"
#include "racg/thickness.hpp"

namespace racg::lab {

// All logarithms here are natural.

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
// Per-trial stream seed; independent of execution order.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, double c, std::size_t trial);

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// G(n, p), deterministic in (n, p, stream_seed). p <= 0.1 walks the pair
// sequence with geometric skips; larger p flips one coin per pair.
Graph sample_gnp(std::size_t n, double p, std::uint64_t stream_seed);

// p = 1 / (4 sqrt(n ln n)): the relative-hyperbolicity regime.
double rel_hyperbolic_p(std::size_t n);

struct GridPoint {
  std::size_t n = 0;
  double p = 0.0;
  double c = 0.0;  // p * sqrt(n)

  static GridPoint from_c(std::size_t n, double c);
  static GridPoint from_p(std::size_t n, double p);
};

struct ExperimentConfig {
  std::vector<GridPoint> grid;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  int level_cap = 0;  // 0: engine default
  unsigned jobs = 1;

  // Throws std::invalid_argument on an empty grid, p outside [0, 1] or zero trials.
  void validate() const;
};

struct SweepRow {
  std::size_t n = 0;
  double c = 0.0;
  double p = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  ThicknessVerdict verdict = ThicknessVerdict::infinite;
  int order = -1;
  bool rel_hyperbolic = true;
  std::size_t max_t1_component = 0;
  std::size_t max_supp1 = 0;

  std::string order_token() const;
  bool thick_at_most(int k) const { return verdict == ThicknessVerdict::finite && order <= k; }
};

struct GridAggregate {
  std::size_t n = 0;
  double c = 0.0;
  double p = 0.0;
  std::size_t trials = 0;
  std::size_t rel_hyperbolic = 0;
  std::size_t order_at_most_0 = 0;
  std::size_t order_at_most_1 = 0;
  std::size_t order_at_most_2 = 0;
  std::size_t thick = 0;
  std::size_t indeterminate = 0;
  std::size_t max_supp1 = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid-major, then trial

  std::vector<GridAggregate> aggregates() const;
};

SweepRow run_trial(const GridPoint& point, std::size_t trial, std::uint64_t master_seed, int level_cap);

SweepResult threshold_sweep(const ExperimentConfig& config);

// Shortest round-trip decimal form; stable across runs.
std::string format_double(double x);

// Header: n,c,p,trial,seed,order,rel_hyp,max_t1_comp,max_supp1
void write_csv(std::ostream& out, const SweepResult& result);
nlohmann::json aggregates_json(const SweepResult& result);

// ln E[X] with X the number of m-sets, m in [ceil(ln n), floor(2 ln n)],
// spanning at least 2m-4 edges:
//   sum_m C(n,m) C(C(m,2), 2m-4) p^(2m-4).
double log_expected_dense_sets(std::size_t n, double p);
double expected_dense_sets(std::size_t n, double p);

struct DenseProbeResult {
  std::size_t m = 0;
  std::size_t edges = 0;
  VertexList vertices;

  long surplus() const { return static_cast<long>(edges) - (2 * static_cast<long>(m) - 4); }
  // A subset with at least 2m-4 edges.
  bool is_counter_witness() const { return m > 0 && surplus() >= 0; }
};

// Heuristic search for an m-set, m in [m_lo, m_hi], maximizing
// edges - (2m - 4): min-degree peeling plus randomized greedy growth.
DenseProbeResult dense_subset_probe(const Graph& g, std::size_t m_lo, std::size_t m_hi, std::size_t restarts,
                                    std::uint64_t seed);

}  // namespace racg::lab
