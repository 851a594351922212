// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: acceptance [--jobs N] [--only K[,K...]]

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "racg/cli.hpp"
#include "racg/exploration.hpp"
#include "racg/generators.hpp"
#include "racg/graph_io.hpp"
#include "racg/hypergraph_oracle.hpp"
#include "racg/random_lab.hpp"
#include "racg/thickness.hpp"

using namespace racg;

namespace {

unsigned g_jobs = 1;

struct Verdict {
  bool pass = true;
  std::string detail;
};

void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& fn) {
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t start = next.fetch_add(256);
      if (start >= count) return;
      const std::uint64_t stop = std::min(count, start + 256);
      for (std::uint64_t i = start; i < stop; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < g_jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

int engine_index(const Graph& g) {
  const auto r = thickness_order(g);
  return r.is_finite() ? r.order : -1;
}

int oracle_index(const Graph& g) {
  const auto r = oracle::hypergraph_index(g);
  return r.index ? *r.index : -1;
}

Verdict oracle_equivalence() {
  std::mutex mu;
  std::vector<std::string> bad;
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::uint64_t count = std::uint64_t{1} << (n * (n - 1) / 2);
    total += count;
    parallel_for(count, [&](std::uint64_t mask) {
      const auto g = graph_from_pair_mask(n, mask);
      const int a = engine_index(g);
      const int b = oracle_index(g);
      if (a != b) {
        std::lock_guard lock(mu);
        bad.push_back(emit_graph6(g) + " engine=" + std::to_string(a) + " oracle=" + std::to_string(b));
      }
    });
  }
  std::sort(bad.begin(), bad.end());
  for (const auto& line : bad) std::cerr << "discrepancy: " << line << "\n";
  return {bad.empty(), std::to_string(total) + " graphs, " + std::to_string(bad.size()) + " discrepancies"};
}

Verdict extremal_scans() {
  Verdict v;
  std::ostringstream d;
  for (std::size_t m = 4; m <= 7; ++m) {
    ScanOptions o;
    o.jobs = g_jobs;
    const auto r = extremal_scan(m, o);
    const auto k2 = canonical_graph6(complete_bipartite(2, m - 2));
    std::set<std::string> canon;
    bool exact = true;
    for (const auto& w : r.extremal_witnesses) {
      const auto g = parse_graph6(w);
      canon.insert(canonical_graph6(g));
      exact = exact && g.edge_count() == 2 * m - 4;
    }
    const bool ok = r.theorem_holds() && exact && canon.count(k2) == 1 && r.min_edges_among_thick == 2 * m - 4 &&
                    (m != 4 || canon.count(canonical_graph6(parse_graph6("Cl"))) == 1);
    d << "m=" << m << ":" << r.graphs_scanned << "/" << r.thick_count << "/" << r.extremal_witnesses.size()
      << (ok ? " " : "! ");
    v.pass = v.pass && ok;
  }
  v.detail = d.str() + "(scanned/thick/witnesses)";
  return v;
}

Verdict fixture_orders() {
  struct Fixture {
    const char* name;
    Graph g;
    int order;
  };
  const Fixture fixtures[] = {
      {"C4", parse_graph6("Cl"), 0},
      {"K25", complete_bipartite(2, 5), 0},
      {"pos8", path_of_squares(8), 1},
      {"pos12", path_of_squares(12), 1},
      {"fig2", glued_order2_example(), 2},
      {"fig2x", glued_order2_example(GlueOrientation::crossed), 2},
      {"K5", cli::generate("complete:5"), -1},
      {"cherry", parse_graph6("Bo"), -1},
  };
  Verdict v;
  std::ostringstream d;
  for (const auto& f : fixtures) {
    const auto r = thickness_order(f.g);
    const int got = r.is_finite() ? r.order : -1;
    const std::string label = f.order < 0 ? "exponential" : "poly_degree_" + std::to_string(f.order + 1);
    const bool ok = got == f.order && r.divergence_label() == label && r.rel_hyperbolic == (f.order < 0);
    v.pass = v.pass && ok;
    d << f.name << "=" << r.order_token() << (ok ? " " : "! ");
  }
  v.detail = d.str();
  return v;
}

Verdict constants() {
  const double lambda1 = std::sqrt(std::sqrt(6.0) - 2.0);
  const double m1 = explore::offspring_mean({lambda1, false});
  const double c0 = explore::critical_lambda(false);
  const double c1 = explore::critical_lambda(true);
  // Independent root: Newton on x^4/8 + x^2/2 + 2x - 1, x = lambda^2.
  double x = 0.5;
  for (int i = 0; i < 100; ++i) {
    const double f = x * x * x * x / 8 + x * x / 2 + 2 * x - 1;
    x -= f / (x * x * x / 2 + x + 2);
  }
  const double ref = std::sqrt(x);
  Verdict v;
  v.pass = std::abs(m1 - 1.0) <= 1e-12 && std::abs(c0 - lambda1) <= 1e-9 && std::abs(c1 - ref) <= 1e-6 &&
           c1 < c0 && std::abs(c1 - 0.66892) < 1e-4;
  std::ostringstream d;
  d.precision(12);
  d << "mean(l1)-1=" << m1 - 1.0 << " crit=" << c0 << " modified=" << c1 << " newton=" << ref;
  v.detail = d.str();
  return v;
}

Verdict bgw() {
  const auto mean = explore::sample_offspring_mean({0.670440, false}, 1000000, 1000000, 11);
  const auto hi = explore::bgw_simulate({0.70, false}, 1000000, 200, 10000, 10000, 12);
  const auto lo = explore::bgw_simulate({0.60, false}, 1000000, 200, 10000, 10000, 13);
  const double sep = (hi.value - lo.value) / std::hypot(hi.standard_error, lo.standard_error);
  Verdict v;
  v.pass = std::abs(mean.value - 1.0) <= 3 * mean.standard_error && std::isfinite(sep) && sep >= 5.0;
  std::ostringstream d;
  d << "mean=" << mean.value << " se=" << mean.standard_error << " survival(0.70)=" << hi.value
    << " survival(0.60)=" << lo.value << " sigma=" << sep;
  v.detail = d.str();
  return v;
}

Verdict exploration_soundness() {
  const std::size_t n = 60;
  const double p = 0.8 / std::sqrt(60.0);
  std::atomic<std::size_t> violations{0};
  std::atomic<std::size_t> seeded{0};
  std::atomic<std::size_t> checked{0};
  parallel_for(100, [&](std::uint64_t s) {
    const auto g = lab::sample_gnp(n, p, lab::trial_seed(6, n, 0.8, s));
    std::mt19937_64 rng(lab::mix64(s));
    const auto seed = explore::random_induced_square(g, rng);
    if (!seed) return;
    ++seeded;
    const SquareGraph sq(g);
    const auto t1 = level_state_from_squares(g, sq);
    const auto t2 = next_level(g, t1);
    explore::ExploreOptions o;
    o.cap = 1000000;
    o.check_invariants = true;
    const auto a = explore::explore_square_component(g, *seed, o);
    const auto b = explore::explore_order2(g, *seed, o);
    for (const auto& f : a.explored) {
      ++checked;
      if (!t1.same_component(f, seed->first)) ++violations;
    }
    for (const auto& f : b.explored) {
      ++checked;
      if (!t2.same_component(f, seed->first)) ++violations;
    }
  });
  return {violations == 0 && seeded > 0, std::to_string(seeded.load()) + "/100 samples with a square, " +
                                             std::to_string(checked.load()) + " pairs checked, " +
                                             std::to_string(violations.load()) + " violations"};
}

Verdict threshold_smoke() {
  const std::size_t n = 2000;
  lab::ExperimentConfig cfg;
  cfg.grid = {lab::GridPoint::from_p(n, lab::rel_hyperbolic_p(n)), lab::GridPoint::from_c(n, 1.0)};
  cfg.trials = 20;
  cfg.master_seed = 2024;
  cfg.jobs = g_jobs;
  const auto rows = lab::threshold_sweep(cfg).rows;
  const double ln_n = std::log(static_cast<double>(n));
  std::size_t rel = 0;
  std::size_t thick = 0;
  for (const auto& r : rows) {
    if (r.c == cfg.grid[0].c && r.p == cfg.grid[0].p) {
      if (r.rel_hyperbolic && static_cast<double>(r.max_supp1) <= ln_n) ++rel;
    } else if (r.thick_at_most(2)) {
      ++thick;
    }
  }
  return {rel >= 18 && thick >= 18,
          "rel-hyp with supp1<=ln n: " + std::to_string(rel) + "/20, order<=2 at c=1: " + std::to_string(thick) + "/20"};
}

Verdict dense_sets() {
  auto p_of = [](double n) { return 1.0 / (4.0 * std::sqrt(n * std::log(n))); };
  Verdict v;
  std::ostringstream d;
  double prev = std::numeric_limits<double>::infinity();
  for (double n : {1e3, 1e4, 1e5, 1e6, 1e7}) {
    const double e = lab::expected_dense_sets(static_cast<std::size_t>(n), p_of(n));
    v.pass = v.pass && e < prev;
    if (n == 1e6) v.pass = v.pass && e < 1.0;
    d << "n=" << n << ":" << e << " ";
    prev = e;
  }
  v.detail = d.str();
  return v;
}

Verdict graph6_round_trip() {
  std::mt19937_64 rng(9);
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = rng() % 11;
    std::vector<std::pair<Vertex, Vertex>> edges;
    const auto density = rng() % 101;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex w = u + 1; w < n; ++w) {
        if (rng() % 100 < density) edges.emplace_back(u, w);
      }
    }
    const auto g = Graph::from_edge_list(n, edges);
    if (!(parse_graph6(emit_graph6(g)) == g)) ++failures;
  }
  std::size_t fixture_failures = 0;
  for (const char* s : {"C~", "Cl", "@", "?", "A_", "Bw", "D~{", "I????????", "Fs~v?", "G?`FE_"}) {
    if (emit_graph6(parse_graph6(s)) != s) ++fixture_failures;
  }
  const auto pos = emit_graph6(path_of_squares(12));
  if (emit_graph6(parse_graph6(pos)) != pos) ++fixture_failures;
  return {failures == 0 && fixture_failures == 0,
          "10000 random, " + std::to_string(failures) + " failures; fixtures " + std::to_string(fixture_failures) +
              " failures"};
}

std::string cli_out(std::vector<std::string> args) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run(args, in, out, err) != 0) return "error " + err.str();
  return out.str();
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> runs = {
      {"sweep", "--n", "300,600", "--c", "0.7,1.2", "--trials", "6", "--seed", "31"},
      {"sweep", "--n", "500", "--rel-hyp", "--trials", "5", "--seed", "32"},
      {"explore", "--n", "5000", "--lambda", "0.75", "--trials", "8", "--seed", "33", "--format", "csv"},
      {"explore", "--n", "5000", "--lambda", "0.75", "--trials", "8", "--seed", "33", "--variant", "order2",
       "--format", "csv"},
  };
  Verdict v;
  std::size_t identical = 0;
  for (const auto& base : runs) {
    auto with = [&](const char* jobs) {
      auto a = base;
      a.insert(a.end(), {"--jobs", jobs});
      return cli_out(a);
    };
    const auto first = with("1");
    const bool ok = first.rfind("error", 0) != 0 && with("1") == first && with("8") == first;
    if (ok) ++identical;
    v.pass = v.pass && ok;
  }
  v.detail = std::to_string(identical) + "/" + std::to_string(runs.size()) + " invocations byte-identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance"};
  unsigned jobs = 0;
  std::vector<int> only;
  app.add_option("--jobs", jobs, "worker threads (0: all cores)");
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  g_jobs = jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : jobs;

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle equivalence n<=7", oracle_equivalence},
      {"extremal scans m=4..7", extremal_scans},
      {"fixture orders", fixture_orders},
      {"criticality constants", constants},
      {"BGW Monte Carlo", bgw},
      {"exploration soundness", exploration_soundness},
      {"threshold smoke n=2000", threshold_smoke},
      {"expected dense sets", dense_sets},
      {"graph6 round trip", graph6_round_trip},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), v.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
