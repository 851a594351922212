#include "racg/hypergraph_oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "racg/union_find.hpp"

namespace racg::oracle {

namespace {

void guard(std::size_t n) {
  if (n > kMaxVertices) {
    throw SizeGuardError("hypergraph oracle is limited to " + std::to_string(kMaxVertices) + " vertices, got " +
                         std::to_string(n));
  }
}

Mask bit(unsigned v) { return Mask{1} << v; }

void sort_unique(std::vector<Mask>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Keeps the inclusion-maximal sets of a deduplicated family.
std::vector<Mask> maximal_only(const std::vector<Mask>& family) {
  std::vector<Mask> out;
  for (Mask s : family) {
    const bool dominated =
        std::any_of(family.begin(), family.end(), [s](Mask t) { return t != s && (s & t) == s; });
    if (!dominated) out.push_back(s);
  }
  return out;
}

// Bron-Kerbosch with pivoting over the vertices of `candidates`.
void maximal_cliques(const MaskGraph& g, Mask r, Mask p, Mask x, std::vector<Mask>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  const unsigned pivot = static_cast<unsigned>(std::countr_zero(p | x));
  Mask branch = p & ~g.neighbors(pivot);
  while (branch != 0) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(branch));
    branch &= branch - 1;
    maximal_cliques(g, r | bit(v), p & g.neighbors(v), x & g.neighbors(v), out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

std::vector<VertexSet> to_vertex_sets(const std::vector<Mask>& masks, std::size_t n) {
  std::vector<VertexSet> out;
  for (Mask m : masks) {
    VertexSet s(n);
    for (Mask w = m; w != 0; w &= w - 1) s.insert(static_cast<Vertex>(std::countr_zero(w)));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

MaskGraph::MaskGraph(const Graph& g) : n_(g.order()), adj_(g.order(), 0) {
  guard(n_);
  for (auto [u, v] : g.edges()) {
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }
}

bool MaskGraph::has_non_edge(Mask s) const {
  for (Mask w = s; w != 0; w &= w - 1) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(w));
    if ((s & ~adj_[v] & ~bit(v)) != 0) return true;
  }
  return false;
}

bool MaskGraph::is_thick_order0(Mask s) const {
  int edge_components = 0;
  Mask remaining = s;
  while (remaining != 0) {
    Mask comp = remaining & (~remaining + 1);
    Mask frontier = comp;
    while (frontier != 0) {
      Mask reach = 0;
      for (Mask w = frontier; w != 0; w &= w - 1) reach |= ~adj_[std::countr_zero(w)];
      frontier = reach & remaining & ~comp;
      comp |= frontier;
    }
    remaining &= ~comp;
    if (std::popcount(comp) >= 2 && ++edge_components >= 2) return true;
  }
  return false;
}

std::vector<Mask> order0_subsets(const MaskGraph& g, Selection selection) {
  const std::size_t n = g.order();
  const std::size_t total = std::size_t{1} << n;
  std::vector<char> thick(total, 0);
  for (Mask s = 0; s < total; ++s) {
    if (std::popcount(s) >= 4 && g.is_thick_order0(s)) thick[s] = 1;
  }
  std::vector<Mask> out;
  if (selection == Selection::all) {
    for (Mask s = 0; s < total; ++s) {
      if (thick[s]) out.push_back(s);
    }
    return out;
  }
  // above[s]: some superset of s (including s) is thick.
  std::vector<char> above(thick);
  for (unsigned i = 0; i < n; ++i) {
    for (Mask s = 0; s < total; ++s) {
      if ((s & bit(i)) == 0) above[s] = static_cast<char>(above[s] | above[s | bit(i)]);
    }
  }
  for (Mask s = 0; s < total; ++s) {
    if (!thick[s]) continue;
    bool maximal = true;
    for (unsigned v = 0; v < n && maximal; ++v) {
      if ((s & bit(v)) == 0 && above[s | bit(v)]) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<Mask> strips(const MaskGraph& g, Selection selection, bool allow_empty) {
  std::vector<Mask> candidates;
  const auto n = static_cast<unsigned>(g.order());
  for (unsigned u = 0; u < n; ++u) {
    for (unsigned v = u + 1; v < n; ++v) {
      if (g.adjacent(u, v)) continue;
      const Mask f = bit(u) | bit(v);
      const Mask susp = g.neighbors(u) & g.neighbors(v);
      if (selection == Selection::all) {
        // Every clique inside the suspension, including the empty one when allowed.
        for (Mask k = susp;; k = (k - 1) & susp) {
          if ((k != 0 || allow_empty) && g.is_clique(k)) candidates.push_back(f | k);
          if (k == 0) break;
        }
      } else {
        std::vector<Mask> cliques;
        maximal_cliques(g, 0, susp, 0, cliques);
        for (Mask k : cliques) {
          if (k != 0 || allow_empty) candidates.push_back(f | k);
        }
      }
    }
  }
  sort_unique(candidates);
  return selection == Selection::all ? candidates : maximal_only(candidates);
}

bool is_strip(const MaskGraph& g, Mask s, bool allow_empty) {
  for (Mask wu = s; wu != 0; wu &= wu - 1) {
    const unsigned u = static_cast<unsigned>(std::countr_zero(wu));
    for (Mask wv = wu & (wu - 1); wv != 0; wv &= wv - 1) {
      const unsigned v = static_cast<unsigned>(std::countr_zero(wv));
      if (g.adjacent(u, v)) continue;
      const Mask k = s & ~bit(u) & ~bit(v);
      if (k == 0 && !allow_empty) continue;
      if ((k & ~(g.neighbors(u) & g.neighbors(v))) == 0 && g.is_clique(k)) return true;
    }
  }
  return false;
}

std::vector<VertexSet> maximal_order0_subsets(const Graph& g) {
  const MaskGraph mg(g);
  return to_vertex_sets(order0_subsets(mg, Selection::maximal), g.order());
}

std::vector<VertexSet> maximal_strips(const Graph& g, bool allow_empty) {
  const MaskGraph mg(g);
  return to_vertex_sets(strips(mg, Selection::maximal, allow_empty), g.order());
}

IndexResult hypergraph_index(const Graph& g, const OracleOptions& options) {
  const MaskGraph mg(g);
  IndexResult result;
  std::vector<Mask> hyperedges = order0_subsets(mg, options.selection);
  if (hyperedges.empty()) return result;
  const auto strip_sets = strips(mg, options.selection, options.strips_allow_empty);
  hyperedges.insert(hyperedges.end(), strip_sets.begin(), strip_sets.end());
  sort_unique(hyperedges);

  const Mask full = mg.full();
  for (int level = 0;; ++level) {
    result.levels_built = level;
    if (std::binary_search(hyperedges.begin(), hyperedges.end(), full)) {
      result.index = level;
      return result;
    }
    UnionFind classes(hyperedges.size());
    for (std::uint32_t i = 0; i < hyperedges.size(); ++i) {
      for (std::uint32_t j = i + 1; j < hyperedges.size(); ++j) {
        if (mg.has_non_edge(hyperedges[i] & hyperedges[j])) classes.unite(i, j);
      }
    }
    std::vector<Mask> merged(hyperedges.size(), 0);
    for (std::uint32_t i = 0; i < hyperedges.size(); ++i) merged[classes.find(i)] |= hyperedges[i];
    std::vector<Mask> next;
    for (std::uint32_t i = 0; i < hyperedges.size(); ++i) {
      if (classes.find(i) == i) next.push_back(merged[i]);
    }
    sort_unique(next);
    if (next == hyperedges) return result;
    hyperedges = std::move(next);
  }
}

}  // namespace racg::oracle
