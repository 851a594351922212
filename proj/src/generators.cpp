#include "racg/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "racg/graph_io.hpp"
#include "racg/thickness.hpp"

namespace racg {

Graph path_of_squares(std::size_t m) {
  if (m < 4 || m % 2 != 0) throw GraphError("path_of_squares needs an even m >= 4, got " + std::to_string(m));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < m; ++i) {
    for (Vertex j = i + 1; j < m; ++j) {
      const auto gi = static_cast<long>(i / 2);
      const auto gj = static_cast<long>(j / 2);
      if (std::labs(gi - gj) == 1) edges.emplace_back(i, j);
    }
  }
  return Graph::from_sorted_edges(m, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw GraphError("complete_bipartite needs both sides nonempty");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 0; i < a; ++i) {
    for (Vertex j = 0; j < b; ++j) edges.emplace_back(i, static_cast<Vertex>(a + j));
  }
  return Graph::from_sorted_edges(a + b, edges);
}

Graph glue_along_non_edges(const Graph& g1, NonEdge f1, const Graph& g2, NonEdge f2, GlueOrientation orientation) {
  f1 = make_non_edge(g1, f1.u, f1.v);
  f2 = make_non_edge(g2, f2.u, f2.v);
  const std::size_t m1 = g1.order();
  std::vector<Vertex> image(g2.order());
  Vertex next = static_cast<Vertex>(m1);
  for (Vertex v = 0; v < g2.order(); ++v) {
    if (v == f2.u) {
      image[v] = orientation == GlueOrientation::straight ? f1.u : f1.v;
    } else if (v == f2.v) {
      image[v] = orientation == GlueOrientation::straight ? f1.v : f1.u;
    } else {
      image[v] = next++;
    }
  }
  auto edges = g1.edges();
  for (auto [a, b] : g2.edges()) edges.emplace_back(image[a], image[b]);
  return Graph::from_edge_list(m1 + g2.order() - 2, edges);
}

Graph glued_order2_example(GlueOrientation orientation) {
  return glue_along_non_edges(path_of_squares(12), NonEdge{1, 11}, complete_bipartite(2, 5), NonEdge{0, 1},
                              orientation);
}

Graph graph_from_pair_mask(std::size_t m, std::uint64_t mask) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t k = 0;
  for (Vertex j = 1; j < m; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      if ((mask >> k) & 1U) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edge_list(m, edges);
}

std::string canonical_graph6(const Graph& g) {
  const std::size_t n = g.order();
  if (n > 9) throw GraphError("canonical_graph6 is brute force and limited to 9 vertices");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  const auto edges = g.edges();
  std::string best;
  std::vector<std::pair<Vertex, Vertex>> relabeled(edges.size());
  do {
    for (std::size_t i = 0; i < edges.size(); ++i) relabeled[i] = {perm[edges[i].first], perm[edges[i].second]};
    auto s = emit_graph6(Graph::from_edge_list(n, relabeled));
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

ExtremalScanReport merge(ExtremalScanReport a, const ExtremalScanReport& b) {
  a.graphs_scanned += b.graphs_scanned;
  a.thick_count += b.thick_count;
  if (b.min_edges_among_thick) {
    a.min_edges_among_thick = a.min_edges_among_thick ? std::min(*a.min_edges_among_thick, *b.min_edges_among_thick)
                                                      : *b.min_edges_among_thick;
  }
  for (const auto& [k, v] : b.order_histogram) a.order_histogram[k] += v;
  auto append = [](std::vector<std::string>& to, const std::vector<std::string>& from) {
    to.insert(to.end(), from.begin(), from.end());
  };
  append(a.extremal_witnesses, b.extremal_witnesses);
  append(a.violations, b.violations);
  append(a.order0_bound_violations, b.order0_bound_violations);
  return a;
}

namespace {

void scan_graph(const Graph& g, ExtremalScanReport& report) {
  const std::size_t m = g.order();
  const std::size_t e = g.edge_count();
  const std::size_t bound = 2 * m >= 4 ? 2 * m - 4 : 0;
  ++report.graphs_scanned;
  const auto r = thickness_order(g);
  ++report.order_histogram[r.order_token()];
  if (!r.is_finite()) return;
  ++report.thick_count;
  report.min_edges_among_thick = std::min(report.min_edges_among_thick.value_or(e), e);
  if (e < bound) report.violations.push_back(emit_graph6(g));
  if (e == bound) report.extremal_witnesses.push_back(emit_graph6(g));
  if (r.order == 0 && r.witness && r.witness->join) {
    const std::size_t a = r.witness->join->a.size();
    if (e < a * (m - a) || a * (m - a) < 2 * (m - 2)) report.order0_bound_violations.push_back(emit_graph6(g));
  }
}

void finalize(ExtremalScanReport& report, bool dedup) {
  auto tidy = [dedup](std::vector<std::string>& v) {
    if (dedup) {
      for (auto& s : v) s = canonical_graph6(parse_graph6(s));
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  tidy(report.extremal_witnesses);
  tidy(report.violations);
  tidy(report.order0_bound_violations);
}

}  // namespace

ExtremalScanReport extremal_scan(std::size_t m, const ScanOptions& options) {
  if (m < 1) throw std::invalid_argument("extremal_scan needs m >= 1");
  const unsigned jobs = std::max(1U, options.jobs);
  const std::size_t pairs = m * (m - 1) / 2;
  ExtremalScanReport report;
  report.m = m;

  std::vector<ExtremalScanReport> partial(jobs);
  std::vector<std::thread> workers;
  if (options.mode == ScanMode::exhaustive) {
    if (m > 7) throw std::invalid_argument("exhaustive extremal scan is limited to m <= 7, got " + std::to_string(m));
    const std::uint64_t total = std::uint64_t{1} << pairs;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        const std::uint64_t lo = total * w / jobs;
        const std::uint64_t hi = total * (w + 1) / jobs;
        for (std::uint64_t mask = lo; mask < hi; ++mask) scan_graph(graph_from_pair_mask(m, mask), partial[w]);
      });
    }
  } else {
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        const std::size_t lo = options.samples * w / jobs;
        const std::size_t hi = options.samples * (w + 1) / jobs;
        std::vector<std::uint32_t> slots(pairs);
        for (std::size_t s = lo; s < hi; ++s) {
          // One stream per sample so results do not depend on the job count.
          std::mt19937_64 rng(options.seed ^ (0x9E3779B97F4A7C15ULL * (s + 1)));
          const std::size_t e = std::uniform_int_distribution<std::size_t>(0, pairs)(rng);
          std::iota(slots.begin(), slots.end(), 0U);
          std::vector<std::pair<Vertex, Vertex>> edges;
          for (std::size_t i = 0; i < e; ++i) {
            const std::size_t pick = std::uniform_int_distribution<std::size_t>(i, pairs - 1)(rng);
            std::swap(slots[i], slots[pick]);
          }
          std::sort(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(e));
          std::size_t k = 0;
          std::size_t next = 0;
          for (Vertex j = 1; j < m && next < e; ++j) {
            for (Vertex i = 0; i < j && next < e; ++i, ++k) {
              if (slots[next] == k) {
                edges.emplace_back(i, j);
                ++next;
              }
            }
          }
          scan_graph(Graph::from_edge_list(m, edges), partial[w]);
        }
      });
    }
  }
  for (auto& t : workers) t.join();
  for (const auto& p : partial) report = merge(std::move(report), p);
  report.m = m;
  finalize(report, options.dedup);
  return report;
}

nlohmann::json to_json(const ExtremalScanReport& report) {
  nlohmann::json j;
  j["m"] = report.m;
  j["bound"] = 2 * report.m >= 4 ? 2 * report.m - 4 : 0;
  j["graphs_scanned"] = report.graphs_scanned;
  j["thick_count"] = report.thick_count;
  j["min_edges_among_thick"] =
      report.min_edges_among_thick ? nlohmann::json(*report.min_edges_among_thick) : nlohmann::json(nullptr);
  j["order_histogram"] = report.order_histogram;
  j["extremal_witnesses"] = report.extremal_witnesses;
  j["violations"] = report.violations;
  j["order0_bound_violations"] = report.order0_bound_violations;
  j["theorem_holds"] = report.theorem_holds();
  return j;
}

}  // namespace racg
