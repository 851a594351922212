#include "racg/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace racg {

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) {
    if (v >= universe) throw GraphError("vertex " + std::to_string(v) + " outside vertex set universe");
    insert(v);
  }
}

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  for (Vertex v = 0; v < universe; ++v) s.insert(v);
  return s;
}

std::size_t VertexSet::size() const {
  std::size_t count = 0;
  for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool VertexSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

VertexList VertexSet::members() const {
  VertexList out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

Graph Graph::from_edge_list(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                            std::size_t dense_threshold) {
  std::vector<std::pair<Vertex, Vertex>> canon;
  canon.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) {
      throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") has endpoint out of range for n=" +
                       std::to_string(n));
    }
    if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
    canon.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return from_sorted_edges(n, canon, dense_threshold);
}

Graph Graph::from_sorted_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                               std::size_t dense_threshold) {
  Graph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  for (auto [a, b] : edges) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  g.neighbors_.resize(edges.size() * 2);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lexicographic input fills every row in increasing order: for row v the
  // smaller neighbors arrive (as second coordinates) before the larger ones.
  for (auto [a, b] : edges) g.neighbors_[cursor[b]++] = a;
  for (auto [a, b] : edges) g.neighbors_[cursor[a]++] = b;
  if (n <= dense_threshold) {
    g.words_per_row_ = (n + 63) / 64;
    g.dense_rows_.assign(n * g.words_per_row_, 0);
    for (auto [a, b] : edges) {
      g.dense_rows_[a * g.words_per_row_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
      g.dense_rows_[b * g.words_per_row_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
    }
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (!dense_rows_.empty()) return (dense_row(u)[v >> 6] >> (v & 63)) & 1U;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::pair<Vertex, Vertex> Graph::pair_at(PairIndex index) const {
  // Row u starts at u*(2n-u-1)/2; solve the quadratic then fix rounding.
  const double nn = static_cast<double>(n_);
  const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
  auto u = static_cast<PairIndex>(std::max(0.0, std::floor(((2 * nn - 1) - std::sqrt(std::max(0.0, disc))) / 2)));
  auto row_start = [this](PairIndex r) { return r * (2 * n_ - r - 1) / 2; };
  while (u > 0 && row_start(u) > index) --u;
  while (u + 1 < n_ && row_start(u + 1) <= index) ++u;
  const PairIndex v = index - row_start(u) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

NonEdge make_non_edge(const Graph& g, Vertex a, Vertex b) {
  if (a >= g.order() || b >= g.order()) throw GraphError("non-edge endpoint out of range");
  if (a == b) throw GraphError("non-edge endpoints must be distinct");
  if (g.adjacent(a, b)) {
    throw GraphError("pair (" + std::to_string(a) + "," + std::to_string(b) + ") is an edge, not a non-edge");
  }
  return {std::min(a, b), std::max(a, b)};
}

VertexList common_neighbors(const Graph& g, NonEdge f) {
  if (f.u >= g.order() || f.v >= g.order() || f.u == f.v || g.adjacent(f.u, f.v)) {
    throw GraphError("common_neighbors requires a non-edge of the graph");
  }
  VertexList out;
  if (g.is_dense()) {
    const auto* ru = g.dense_row(f.u);
    const auto* rv = g.dense_row(f.v);
    for (std::size_t i = 0; i < g.words_per_row(); ++i) {
      std::uint64_t w = ru[i] & rv[i];
      while (w != 0) {
        out.push_back(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
        w &= w - 1;
      }
    }
    return out;
  }
  auto a = g.neighbors(f.u);
  auto b = g.neighbors(f.v);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ComplementComponent> complement_components(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.order()) throw GraphError("vertex set universe does not match graph order");
  std::vector<ComplementComponent> out;
  VertexSet unvisited = s;
  std::vector<Vertex> stack;
  for (Vertex root : s.members()) {
    if (!unvisited.contains(root)) continue;
    ComplementComponent comp;
    unvisited.erase(root);
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      comp.vertices.push_back(x);
      // Complement neighbors of x among unvisited members of s.
      for (Vertex y : unvisited.members()) {
        if (!g.adjacent(x, y)) {
          unvisited.erase(y);
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.has_complement_edge = comp.vertices.size() >= 2;
    out.push_back(std::move(comp));
  }
  return out;
}

void for_each_non_edge(const Graph& g, const std::function<void(NonEdge)>& fn) {
  for (Vertex u = 0; u < g.order(); ++u) {
    auto row = g.neighbors(u);
    auto it = std::upper_bound(row.begin(), row.end(), u);
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (it != row.end() && *it == v) {
        ++it;
        continue;
      }
      fn(NonEdge{u, v});
    }
  }
}

std::vector<NonEdge> non_edges(const Graph& g) {
  std::vector<NonEdge> out;
  out.reserve(g.non_edge_count());
  for_each_non_edge(g, [&](NonEdge f) { out.push_back(f); });
  return out;
}

std::size_t induced_edge_count(const Graph& g, const VertexSet& s) {
  std::size_t count = 0;
  for (Vertex u : s.members()) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && s.contains(v)) ++count;
    }
  }
  return count;
}

}  // namespace racg
