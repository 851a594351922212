#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "racg/graph.hpp"

namespace testing {

inline racg::Graph make(std::size_t n, std::initializer_list<std::pair<racg::Vertex, racg::Vertex>> edges) {
  std::vector<std::pair<racg::Vertex, racg::Vertex>> e(edges);
  return racg::Graph::from_edge_list(n, e);
}

inline racg::Graph cycle(std::size_t n) {
  std::vector<std::pair<racg::Vertex, racg::Vertex>> e;
  for (racg::Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<racg::Vertex>((i + 1) % n));
  return racg::Graph::from_edge_list(n, e);
}

inline racg::Graph complete(std::size_t n) {
  std::vector<std::pair<racg::Vertex, racg::Vertex>> e;
  for (racg::Vertex i = 0; i < n; ++i) {
    for (racg::Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return racg::Graph::from_edge_list(n, e);
}

// Path 0-1-2.
inline racg::Graph cherry() { return make(3, {{0, 1}, {1, 2}}); }

// Two vertex-disjoint squares 0-1-2-3 and 4-5-6-7.
inline racg::Graph two_squares() {
  return make(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}});
}

}  // namespace testing
