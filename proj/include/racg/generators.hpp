#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "racg/graph.hpp"

namespace racg {

// Vertices 0..m-1 (1-based label i+1); i ~ j iff |ceil((i+1)/2) - ceil((j+1)/2)| = 1.
Graph path_of_squares(std::size_t m);

// Side A is 0..a-1, side B is a..a+b-1.
Graph complete_bipartite(std::size_t a, std::size_t b);

enum class GlueOrientation {
  straight,  // f2.u -> f1.u, f2.v -> f1.v
  crossed,   // f2.u -> f1.v, f2.v -> f1.u
};

// Disjoint union of g1 and g2 with the endpoints of f2 identified onto those
// of f1. Vertices of g1 keep their ids; the remaining vertices of g2 follow
// in increasing order.
Graph glue_along_non_edges(const Graph& g1, NonEdge f1, const Graph& g2, NonEdge f2,
                           GlueOrientation orientation = GlueOrientation::straight);

// path_of_squares(12) glued along its non-edge {2,12} (1-based) to the
// 2-side non-edge of K_{2,5}: 17 vertices, 30 edges, thick of order 2.
Graph glued_order2_example(GlueOrientation orientation = GlueOrientation::straight);

// Graph on m vertices whose edges are the set bits of `mask`, bit k being
// the k-th pair in graph6 order (0,1),(0,2),(1,2),(0,3),...
Graph graph_from_pair_mask(std::size_t m, std::uint64_t mask);

// Lexicographically least graph6 string over all vertex relabelings.
// Brute force; m <= 9.
std::string canonical_graph6(const Graph& g);

enum class ScanMode { exhaustive, sampled };

struct ScanOptions {
  ScanMode mode = ScanMode::exhaustive;
  std::size_t samples = 100000;  // sampled mode only
  std::uint64_t seed = 1;        // sampled mode only
  unsigned jobs = 1;
  bool dedup = false;  // collapse witnesses to isomorphism classes
};

struct ExtremalScanReport {
  std::size_t m = 0;
  std::size_t graphs_scanned = 0;
  std::size_t thick_count = 0;
  std::optional<std::size_t> min_edges_among_thick;
  std::map<std::string, std::size_t> order_histogram;  // order token -> count
  std::vector<std::string> extremal_witnesses;         // thick, exactly 2m-4 edges
  std::vector<std::string> violations;                 // thick with < 2m-4 edges
  std::vector<std::string> order0_bound_violations;    // e < |A|(m-|A|) or < 2(m-2)

  bool theorem_holds() const { return violations.empty(); }
};

// Partial reports over disjoint slices of the scan space combine by merge.
ExtremalScanReport merge(ExtremalScanReport a, const ExtremalScanReport& b);

ExtremalScanReport extremal_scan(std::size_t m, const ScanOptions& options = {});

nlohmann::json to_json(const ExtremalScanReport& report);

}  // namespace racg
