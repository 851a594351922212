#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace racg {

using Vertex = std::uint32_t;
using VertexList = std::vector<Vertex>;
using PairIndex = std::uint64_t;

inline constexpr std::size_t kDefaultDenseThreshold = 512;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A pair {u, v} with u < v that is not an edge of its host graph.
struct NonEdge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const NonEdge&, const NonEdge&) = default;
  friend auto operator<=>(const NonEdge&, const NonEdge&) = default;
};

// Fixed-universe bitset over vertex ids 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet all(std::size_t universe);

  std::size_t universe() const { return universe_; }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  std::size_t size() const;
  bool empty() const;
  VertexList members() const;

  VertexSet& operator|=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Immutable undirected simple graph on vertices 0..n-1.
//
// Neighbors are kept as sorted CSR rows. Graphs with at most
// `dense_threshold` vertices also carry one adjacency bitset per vertex so
// that adjacency tests and neighborhood intersections are word-parallel.
class Graph {
 public:
  Graph() = default;

  static Graph from_edge_list(std::size_t n,
                              std::span<const std::pair<Vertex, Vertex>> edges,
                              std::size_t dense_threshold = kDefaultDenseThreshold);

  // Builds from edges already sorted lexicographically with u < v and no
  // duplicates; skips the normalization pass.
  static Graph from_sorted_edges(std::size_t n,
                                 std::span<const std::pair<Vertex, Vertex>> edges,
                                 std::size_t dense_threshold = kDefaultDenseThreshold);

  std::size_t order() const { return n_; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t non_edge_count() const { return pair_count() - edge_count(); }
  std::size_t pair_count() const { return n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2; }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool is_dense() const { return !dense_rows_.empty() || n_ == 0; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  bool adjacent(Vertex u, Vertex v) const;

  // Lexicographic edge list with u < v.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  // Dense index of the unordered pair {u, v}, u != v, in lexicographic
  // order over all C(n, 2) pairs.
  PairIndex pair_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    const auto uu = static_cast<PairIndex>(u);
    return uu * (2 * n_ - uu - 1) / 2 + (v - u - 1);
  }
  std::pair<Vertex, Vertex> pair_at(PairIndex index) const;

  // Packed key u*n + v with u < v.
  std::uint64_t pair_key(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return static_cast<std::uint64_t>(u) * n_ + v;
  }

  const std::uint64_t* dense_row(Vertex v) const { return dense_rows_.data() + v * words_per_row_; }
  std::size_t words_per_row() const { return words_per_row_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> dense_rows_;
};

NonEdge make_non_edge(const Graph& g, Vertex a, Vertex b);

// susp(f): vertices adjacent to both endpoints of the non-edge f, ascending.
VertexList common_neighbors(const Graph& g, NonEdge f);

struct ComplementComponent {
  VertexList vertices;
  bool has_complement_edge = false;
};

// Connected components of the complement of g[s], in order of their
// smallest vertex.
std::vector<ComplementComponent> complement_components(const Graph& g, const VertexSet& s);

std::vector<NonEdge> non_edges(const Graph& g);
void for_each_non_edge(const Graph& g, const std::function<void(NonEdge)>& fn);

// Number of edges of g with both endpoints in `s`.
std::size_t induced_edge_count(const Graph& g, const VertexSet& s);

}  // namespace racg
