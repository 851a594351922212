#include "racg/random_lab.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace racg::lab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t n, double c, std::size_t trial) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(n));
  h = mix64(h ^ std::bit_cast<std::uint64_t>(c));
  return mix64(h ^ static_cast<std::uint64_t>(trial));
}

Graph sample_gnp(std::size_t n, double p, std::uint64_t stream_seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_gnp: p must lie in [0, 1]");
  std::mt19937_64 rng(stream_seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n < 2 || p == 0.0) return Graph::from_sorted_edges(n, edges);
  const double expected = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0 * p;
  edges.reserve(static_cast<std::size_t>(expected + 4.0 * std::sqrt(expected) + 16.0));
  if (p <= 0.1) {
    const double log_q = std::log1p(-p);
    std::size_t u = 0;
    std::size_t v = 0;  // the pair before (0, 1)
    while (true) {
      const double r = 1.0 - unit_interval(rng());  // (0, 1]
      const double skip = std::floor(std::log(r) / log_q);
      if (skip >= static_cast<double>(n) * static_cast<double>(n)) break;
      v += static_cast<std::size_t>(skip) + 1;
      while (v >= n && u + 1 < n) {
        v = v - n + u + 2;
        ++u;
      }
      if (u + 1 >= n || v >= n) break;
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  } else {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (unit_interval(rng()) < p) edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_sorted_edges(n, edges);
}

double rel_hyperbolic_p(std::size_t n) {
  const double nn = static_cast<double>(n);
  return 1.0 / (4.0 * std::sqrt(nn * std::log(nn)));
}

GridPoint GridPoint::from_c(std::size_t n, double c) {
  return {n, c / std::sqrt(static_cast<double>(n)), c};
}

GridPoint GridPoint::from_p(std::size_t n, double p) {
  return {n, p, p * std::sqrt(static_cast<double>(n))};
}

void ExperimentConfig::validate() const {
  if (grid.empty()) throw std::invalid_argument("experiment grid is empty");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  for (const auto& g : grid) {
    if (!(g.p >= 0.0 && g.p <= 1.0)) {
      throw std::invalid_argument("edge probability " + format_double(g.p) + " outside [0, 1] at n=" +
                                  std::to_string(g.n));
    }
  }
}

std::string SweepRow::order_token() const {
  switch (verdict) {
    case ThicknessVerdict::finite:
      return std::to_string(order);
    case ThicknessVerdict::infinite:
      return "inf";
    case ThicknessVerdict::indeterminate:
      break;
  }
  return "cap";
}

std::vector<GridAggregate> SweepResult::aggregates() const {
  std::vector<GridAggregate> out;
  for (const auto& row : rows) {
    if (out.empty() || out.back().n != row.n || out.back().p != row.p) {
      GridAggregate a;
      a.n = row.n;
      a.c = row.c;
      a.p = row.p;
      out.push_back(a);
    }
    auto& a = out.back();
    ++a.trials;
    a.rel_hyperbolic += row.rel_hyperbolic ? 1 : 0;
    a.order_at_most_0 += row.thick_at_most(0) ? 1 : 0;
    a.order_at_most_1 += row.thick_at_most(1) ? 1 : 0;
    a.order_at_most_2 += row.thick_at_most(2) ? 1 : 0;
    a.thick += row.verdict == ThicknessVerdict::finite ? 1 : 0;
    a.indeterminate += row.verdict == ThicknessVerdict::indeterminate ? 1 : 0;
    a.max_supp1 = std::max(a.max_supp1, row.max_supp1);
  }
  return out;
}

SweepRow run_trial(const GridPoint& point, std::size_t trial, std::uint64_t master_seed, int level_cap) {
  SweepRow row;
  row.n = point.n;
  row.c = point.c;
  row.p = point.p;
  row.trial = trial;
  row.seed = trial_seed(master_seed, point.n, point.c, trial);
  const Graph g = sample_gnp(point.n, point.p, row.seed);
  EngineOptions options;
  options.max_level = level_cap;
  const auto stats = largest_component_stats(g, options);
  row.verdict = stats.report.verdict;
  row.order = stats.report.order;
  row.rel_hyperbolic = stats.report.rel_hyperbolic;
  row.max_t1_component = stats.max_t1_component;
  row.max_supp1 = stats.max_supp1;
  return row;
}

SweepResult threshold_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  const std::size_t total = config.grid.size() * config.trials;
  result.rows.resize(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      result.rows[i] = run_trial(config.grid[i / config.trials], i % config.trials, config.master_seed,
                                 config.level_cap);
    }
  };
  const unsigned jobs = std::max(1U, config.jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 1; w < jobs; ++w) workers.emplace_back(work);
  work();
  for (auto& t : workers) t.join();
  return result;
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "n,c,p,trial,seed,order,rel_hyp,max_t1_comp,max_supp1\n";
  for (const auto& r : result.rows) {
    out << r.n << ',' << format_double(r.c) << ',' << format_double(r.p) << ',' << r.trial << ',' << r.seed << ','
        << r.order_token() << ',' << (r.rel_hyperbolic ? 1 : 0) << ',' << r.max_t1_component << ',' << r.max_supp1
        << '\n';
  }
}

nlohmann::json aggregates_json(const SweepResult& result) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& a : result.aggregates()) {
    const double t = static_cast<double>(a.trials);
    points.push_back({{"n", a.n},
                      {"c", a.c},
                      {"p", a.p},
                      {"trials", a.trials},
                      {"frac_rel_hyp", static_cast<double>(a.rel_hyperbolic) / t},
                      {"frac_order_le_0", static_cast<double>(a.order_at_most_0) / t},
                      {"frac_order_le_1", static_cast<double>(a.order_at_most_1) / t},
                      {"frac_order_le_2", static_cast<double>(a.order_at_most_2) / t},
                      {"frac_thick", static_cast<double>(a.thick) / t},
                      {"indeterminate", a.indeterminate},
                      {"max_supp1", a.max_supp1}});
  }
  return {{"grid", points}};
}

namespace {

double log_choose(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

double log_expected_dense_sets(std::size_t n, double p) {
  if (n < 3) throw std::invalid_argument("expected_dense_sets needs n >= 3");
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("expected_dense_sets needs 0 <= p < 1");
  const double ln_n = std::log(static_cast<double>(n));
  const auto lo = static_cast<std::size_t>(std::ceil(ln_n));
  const auto hi = static_cast<std::size_t>(std::floor(2 * ln_n));
  const double log_p = std::log(p);
  std::vector<double> terms;
  for (std::size_t m = std::max<std::size_t>(lo, 2); m <= hi && m <= n; ++m) {
    const double k = 2.0 * static_cast<double>(m) - 4.0;
    const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
    double t = log_choose(static_cast<double>(n), static_cast<double>(m)) + log_choose(pairs, k);
    if (k > 0) t += k * log_p;
    terms.push_back(t);
  }
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(top)) return top;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

double expected_dense_sets(std::size_t n, double p) { return std::exp(log_expected_dense_sets(n, p)); }

namespace {

struct BestPerSize {
  std::size_t lo;
  std::vector<std::size_t> edges;
  std::vector<VertexList> sets;
  std::vector<bool> seen;

  BestPerSize(std::size_t lo_, std::size_t hi_) : lo(lo_), edges(hi_ - lo_ + 1, 0), sets(hi_ - lo_ + 1), seen(hi_ - lo_ + 1) {}

  void offer(std::size_t m, std::size_t e, const VertexList& s) {
    if (m < lo || m >= lo + edges.size()) return;
    const std::size_t i = m - lo;
    if (!seen[i] || e > edges[i]) {
      seen[i] = true;
      edges[i] = e;
      sets[i] = s;
      std::sort(sets[i].begin(), sets[i].end());
    }
  }
};

void peel(const Graph& g, BestPerSize& best) {
  const std::size_t n = g.order();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    queue.insert({degree[v], v});
  }
  std::vector<bool> removed(n, false);
  std::size_t edges = g.edge_count();
  std::vector<Vertex> order;
  for (std::size_t size = n; size > 0; --size) {
    if (size >= best.lo && size < best.lo + best.edges.size()) {
      VertexList s;
      for (Vertex v = 0; v < n; ++v) {
        if (!removed[v]) s.push_back(v);
      }
      best.offer(size, edges, s);
    }
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = true;
    edges -= d;
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      --degree[w];
      queue.insert({degree[w], w});
    }
  }
}

void grow(const Graph& g, Vertex start, std::size_t hi, std::mt19937_64& rng, BestPerSize& best) {
  const std::size_t n = g.order();
  std::vector<std::size_t> links(n, 0);
  std::vector<bool> inside(n, false);
  VertexList s{start};
  inside[start] = true;
  std::vector<Vertex> frontier;
  for (Vertex w : g.neighbors(start)) {
    if (links[w]++ == 0) frontier.push_back(w);
  }
  std::size_t edges = 0;
  best.offer(1, 0, s);
  while (s.size() < hi) {
    Vertex pick = 0;
    std::size_t top = 0;
    std::size_t ties = 0;
    for (Vertex w : frontier) {
      if (inside[w]) continue;
      if (links[w] > top) {
        top = links[w];
        pick = w;
        ties = 1;
      } else if (links[w] == top && rng() % ++ties == 0) {
        pick = w;
      }
    }
    if (top == 0) {
      // Disconnected from the rest; jump to a random outside vertex.
      do {
        pick = static_cast<Vertex>(rng() % n);
      } while (inside[pick] && s.size() < n);
      if (inside[pick]) break;
    }
    inside[pick] = true;
    edges += links[pick];
    s.push_back(pick);
    for (Vertex w : g.neighbors(pick)) {
      if (links[w]++ == 0) frontier.push_back(w);
    }
    best.offer(s.size(), edges, s);
  }
}

}  // namespace

DenseProbeResult dense_subset_probe(const Graph& g, std::size_t m_lo, std::size_t m_hi, std::size_t restarts,
                                    std::uint64_t seed) {
  DenseProbeResult result;
  const std::size_t n = g.order();
  m_hi = std::min(m_hi, n);
  if (n == 0 || m_lo > m_hi) return result;
  m_lo = std::max<std::size_t>(m_lo, 1);
  BestPerSize best(m_lo, m_hi);
  peel(g, best);
  std::mt19937_64 rng(seed);
  // Deterministic starts at the highest-degree vertices, then random ones.
  std::vector<Vertex> by_degree(n);
  for (Vertex v = 0; v < n; ++v) by_degree[v] = v;
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  for (std::size_t r = 0; r < restarts; ++r) {
    const Vertex start = r < std::min<std::size_t>(restarts / 2, n) ? by_degree[r] : static_cast<Vertex>(rng() % n);
    grow(g, start, m_hi, rng, best);
  }
  bool have = false;
  for (std::size_t i = 0; i < best.edges.size(); ++i) {
    if (!best.seen[i]) continue;
    DenseProbeResult candidate{m_lo + i, best.edges[i], best.sets[i]};
    if (!have || candidate.surplus() > result.surplus()) {
      result = std::move(candidate);
      have = true;
    }
  }
  return result;
}

}  // namespace racg::lab
