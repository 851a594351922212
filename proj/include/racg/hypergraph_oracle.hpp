#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "racg/graph.hpp"

namespace racg::oracle {

// Small-graph ground truth for thickness via the hypergraph index ladder.
// Vertex sets are bitmasks, so every entry point refuses graphs with more
// than kMaxVertices vertices.

inline constexpr std::size_t kMaxVertices = 16;

using Mask = std::uint32_t;

class SizeGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Selection {
  maximal,  // only inclusion-maximal order-0 sets and strips
  all,      // every order-0 set and every strip
};

struct OracleOptions {
  Selection selection = Selection::maximal;
  // Accept a bare non-edge (empty clique part) as a strip.
  bool strips_allow_empty = false;
};

// Adjacency bitmasks of a graph with at most kMaxVertices vertices.
class MaskGraph {
 public:
  explicit MaskGraph(const Graph& g);

  std::size_t order() const { return n_; }
  Mask full() const { return n_ == 32 ? ~Mask{0} : ((Mask{1} << n_) - 1); }
  Mask neighbors(unsigned v) const { return adj_[v]; }
  bool adjacent(unsigned u, unsigned v) const { return (adj_[u] >> v) & 1U; }
  // True when g[s] has a non-edge.
  bool has_non_edge(Mask s) const;
  bool is_clique(Mask s) const { return !has_non_edge(s); }
  bool is_thick_order0(Mask s) const;

 private:
  std::size_t n_ = 0;
  std::vector<Mask> adj_;
};

std::vector<Mask> order0_subsets(const MaskGraph& g, Selection selection);
std::vector<Mask> strips(const MaskGraph& g, Selection selection, bool allow_empty);

std::vector<VertexSet> maximal_order0_subsets(const Graph& g);
std::vector<VertexSet> maximal_strips(const Graph& g, bool allow_empty = false);

// True when `s` is a non-edge {u, v} completely joined to a clique K
// (K nonempty unless allow_empty).
bool is_strip(const MaskGraph& g, Mask s, bool allow_empty = false);

struct IndexResult {
  std::optional<int> index;  // nullopt means infinite
  int levels_built = 0;
};

IndexResult hypergraph_index(const Graph& g, const OracleOptions& options = {});

}  // namespace racg::oracle
