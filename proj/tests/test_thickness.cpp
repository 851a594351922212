#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "racg/generators.hpp"
#include "racg/graph_io.hpp"
#include "racg/hypergraph_oracle.hpp"
#include "racg/thickness.hpp"

using namespace racg;
using testing::make;

namespace {

Graph k23() { return complete_bipartite(2, 3); }

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edge_list(n, edges);
}

int order_or_inf(const ThicknessReport& r) { return r.is_finite() ? r.order : -1; }
int index_or_inf(const oracle::IndexResult& r) { return r.index ? *r.index : -1; }

// Brute force over all bipartitions of s into two non-cliques joined completely.
bool brute_order0(const Graph& g, const VertexList& s) {
  const std::size_t k = s.size();
  if (k < 4) return false;
  for (std::uint32_t mask = 1; mask + 1 < (1U << k); ++mask) {
    if (mask & 1U) continue;  // fix s[0] in B to visit each split once
    VertexList a, b;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1U ? a : b).push_back(s[i]);
    auto non_clique = [&](const VertexList& x) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
          if (!g.adjacent(x[i], x[j])) return true;
        }
      }
      return false;
    };
    bool joined = true;
    for (Vertex x : a) {
      for (Vertex y : b) joined = joined && g.adjacent(x, y);
    }
    if (joined && non_clique(a) && non_clique(b)) return true;
  }
  return false;
}

std::set<Vertex> support_set(const LevelState& s, std::uint32_t c) {
  const auto sp = s.support(c);
  return {sp.begin(), sp.end()};
}

std::uint32_t component_of(const LevelState& s, NonEdge f) { return s.component_of(s.index().id(f.u, f.v)); }

}  // namespace

TEST_CASE("is_thick_order0") {
  JoinPartition w;
  REQUIRE(is_thick_order0(testing::cycle(4), VertexSet::all(4), &w));
  CHECK(w.a == VertexList{0, 2});
  CHECK(w.b == VertexList{1, 3});
  CHECK_FALSE(is_thick_order0(testing::cherry(), VertexSet::all(3)));
  CHECK(is_thick_order0(k23(), VertexSet::all(5)));
  CHECK_FALSE(is_thick_order0(testing::complete(5), VertexSet::all(5)));
}

TEST_CASE("is_thick_order0 matches bipartition brute force on all graphs up to 6 vertices") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const auto g = graph_from_pair_mask(n, mask);
      VertexList all(n);
      for (Vertex v = 0; v < n; ++v) all[v] = v;
      JoinPartition w;
      const bool fast = is_thick_order0(g, VertexSet::all(n), &w);
      REQUIRE(fast == brute_order0(g, all));
      if (fast) {
        // The witness is a genuine join of two non-cliques.
        for (Vertex a : w.a) {
          for (Vertex b : w.b) REQUIRE(g.adjacent(a, b));
        }
        REQUIRE(w.a.size() + w.b.size() == n);
      }
    }
  }
}

TEST_CASE("is_thick_order0 on random subsets of 7-vertex graphs") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 3000; ++i) {
    const auto g = random_graph(rng, 7, 0.6);
    VertexList s;
    VertexSet set(7);
    for (Vertex v = 0; v < 7; ++v) {
      if (rng() % 5) {
        s.push_back(v);
        set.insert(v);
      }
    }
    REQUIRE(is_thick_order0(g, set) == brute_order0(g, s));
  }
}

TEST_CASE("enumerate_induced_squares") {
  auto sq = enumerate_induced_squares(testing::cycle(4));
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].first == NonEdge{0, 2});
  CHECK(sq[0].second == NonEdge{1, 3});

  sq = enumerate_induced_squares(k23());
  CHECK(sq.size() == 3);
  for (const auto& s : sq) CHECK(s.first == NonEdge{0, 1});

  // Path of squares on 6 vertices is K_{2,4} with the 2-side {2,3}.
  sq = enumerate_induced_squares(path_of_squares(6));
  CHECK(sq.size() == 6);
  for (const auto& s : sq) CHECK((s.first == NonEdge{2, 3} || s.second == NonEdge{2, 3}));

  CHECK(enumerate_induced_squares(testing::complete(5)).empty());
  CHECK(enumerate_induced_squares(testing::cherry()).empty());
}

TEST_CASE("squares are disjoint non-edge pairs inducing exactly four edges, each listed once") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_graph(rng, 4 + rng() % 9, 0.5);
    const auto squares = enumerate_induced_squares(g);
    std::set<std::pair<NonEdge, NonEdge>> seen;
    for (const auto& s : squares) {
      CHECK(s.first < s.second);
      CHECK(seen.insert({s.first, s.second}).second);
      const Vertex vs[4] = {s.first.u, s.first.v, s.second.u, s.second.v};
      std::set<Vertex> distinct(vs, vs + 4);
      CHECK(distinct.size() == 4);
      int edges = 0;
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) edges += g.adjacent(vs[a], vs[b]) ? 1 : 0;
      }
      CHECK(edges == 4);
      CHECK_FALSE(g.adjacent(s.first.u, s.first.v));
      CHECK_FALSE(g.adjacent(s.second.u, s.second.v));
    }
    // Brute force count over 4-subsets: each induced C4 has exactly one diagonal split.
    std::size_t brute = 0;
    const auto n = static_cast<Vertex>(g.order());
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b)
        for (Vertex c = b + 1; c < n; ++c)
          for (Vertex d = c + 1; d < n; ++d) {
            const Vertex q[4] = {a, b, c, d};
            int e = 0;
            int deg[4] = {0, 0, 0, 0};
            for (int x = 0; x < 4; ++x)
              for (int y = x + 1; y < 4; ++y)
                if (g.adjacent(q[x], q[y])) {
                  ++e;
                  ++deg[x];
                  ++deg[y];
                }
            if (e == 4 && deg[0] == 2 && deg[1] == 2 && deg[2] == 2 && deg[3] == 2) ++brute;
          }
    CHECK(squares.size() == brute);
  }
}

TEST_CASE("square graph components") {
  const SquareGraph c4(testing::cycle(4));
  CHECK(c4.node_count() == 2);
  CHECK(c4.component_count() == 1);
  CHECK(c4.component_size(0) == 2);

  const SquareGraph k5(testing::complete(5));
  CHECK(k5.node_count() == 0);
  CHECK(k5.component_count() == 0);

  const auto g = testing::two_squares();
  const SquareGraph two(g);
  CHECK(two.node_count() == 20);
  CHECK(two.component_count() == 18);
  CHECK(two.same_component({0, 2}, {1, 3}));
  CHECK(two.same_component({4, 6}, {5, 7}));
  CHECK_FALSE(two.same_component({0, 2}, {4, 6}));
  CHECK(two.component_size(two.index().id(0, 4)) == 1);
}

TEST_CASE("level 1 supports and latches") {
  const auto c4 = testing::cycle(4);
  const SquareGraph sq(c4);
  for (bool susp : {true, false}) {
    const auto s = level_state_from_squares(c4, sq, susp);
    REQUIRE(s.component_count() == 1);
    CHECK(support_set(s, 0) == std::set<Vertex>{0, 1, 2, 3});
    CHECK(s.latch(c4, 0) == std::vector<NonEdge>{{0, 2}, {1, 3}});
  }

  // Path of squares on 8 vertices: the component of {0,1} reaches every vertex.
  const auto pos8 = path_of_squares(8);
  const SquareGraph sq8(pos8);
  for (bool susp : {true, false}) {
    const auto s = level_state_from_squares(pos8, sq8, susp);
    CHECK(s.support(component_of(s, {0, 1})).size() == 8);
  }

  // A singleton component: {0,4} in two disjoint squares lies in no square.
  const auto two = testing::two_squares();
  const SquareGraph sq2(two);
  const auto literal = level_state_from_squares(two, sq2, false);
  const auto c = component_of(literal, {0, 4});
  CHECK(literal.members(c).size() == 1);
  CHECK(support_set(literal, c) == std::set<Vertex>{0, 4});
  CHECK(literal.latch(two, c) == std::vector<NonEdge>{{0, 4}});

  // With suspensions a cone point joins the support.
  const auto cone = make(4, {{0, 3}, {1, 3}, {2, 3}});
  const SquareGraph sqc(cone);
  const auto with = level_state_from_squares(cone, sqc, true);
  CHECK(support_set(with, component_of(with, {0, 1})) == std::set<Vertex>{0, 1, 3});
}

TEST_CASE("next_level") {
  // C4 is already a fixpoint.
  const auto c4 = testing::cycle(4);
  const SquareGraph sq(c4);
  const auto l1 = level_state_from_squares(c4, sq);
  const auto l2 = next_level(c4, l1);
  CHECK(l2.level() == 2);
  CHECK(l2.component_count() == 1);
  CHECK(support_set(l2, 0) == std::set<Vertex>{0, 1, 2, 3});

  // Gluing: the path-of-squares component and the K_{2,5} component share
  // the glued non-edge {1, 11} and merge at level 2.
  const auto fig2 = glued_order2_example();
  const SquareGraph sqf(fig2);
  const auto f1 = level_state_from_squares(fig2, sqf);
  const NonEdge glued{1, 11};
  const NonEdge in_path{0, 1};
  const NonEdge in_k25{12, 13};
  CHECK_FALSE(f1.same_component(in_path, in_k25));
  const auto f2 = next_level(fig2, f1);
  CHECK(f2.same_component(in_path, in_k25));
  CHECK(f2.same_component(glued, in_k25));
  CHECK(f2.support(component_of(f2, glued)).size() == 17);

  // The cherry's lone non-edge stays alone.
  const auto ch = testing::cherry();
  const SquareGraph sqc(ch);
  const auto c1 = level_state_from_squares(ch, sqc);
  const auto c2 = next_level(ch, c1);
  CHECK(c2.component_count() == 1);
  CHECK(c2.members(0).size() == 1);
  CHECK(support_set(c2, 0) == std::set<Vertex>{0, 1, 2});
}

TEST_CASE("fixture orders and divergence labels") {
  struct Fixture {
    const char* name;
    Graph g;
    int order;  // -1: infinite
  };
  const std::vector<Fixture> fixtures = {
      {"C4", testing::cycle(4), 0},
      {"K25", complete_bipartite(2, 5), 0},
      {"K23", complete_bipartite(2, 3), 0},
      {"pos6", path_of_squares(6), 0},
      {"pos8", path_of_squares(8), 1},
      {"pos12", path_of_squares(12), 1},
      {"fig2", glued_order2_example(GlueOrientation::straight), 2},
      {"K5", testing::complete(5), -1},
      {"cherry", testing::cherry(), -1},
      {"two squares", testing::two_squares(), -1},
      {"K1", make(1, {}), -1},
      {"empty2", make(2, {}), -1},
      {"K11", make(2, {{0, 1}}), -1},
  };
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    const auto r = thickness_order(f.g);
    CHECK(order_or_inf(r) == f.order);
    CHECK(r.rel_hyperbolic == (f.order < 0));
    if (f.order >= 0) {
      CHECK(r.divergence_label() == "poly_degree_" + std::to_string(f.order + 1));
      CHECK(r.order_token() == std::to_string(f.order));
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->level == f.order);
      CHECK(r.witness->support_size == f.g.order());
    } else {
      CHECK(r.divergence_label() == "exponential");
      CHECK(r.order_token() == "inf");
    }
  }
}

TEST_CASE("order-2 witness lists the merged T1 pieces") {
  const auto r = thickness_order(glued_order2_example());
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->level == 2);
  CHECK(r.witness->pieces.size() >= 2);
  const auto j = to_json(r);
  CHECK(j["order"] == 2);
  CHECK(j["divergence"] == "poly_degree_3");
  CHECK(j["rel_hyperbolic"] == false);
  CHECK(j["witness"]["supp_size"] == 17);
}

TEST_CASE("level cap yields an explicit indeterminate verdict") {
  EngineOptions o;
  o.max_level = 1;
  const auto r = thickness_order(glued_order2_example(), o);
  CHECK(r.verdict == ThicknessVerdict::indeterminate);
  CHECK_FALSE(r.rel_hyperbolic);
  CHECK(r.order_token() == "cap");
  CHECK(r.divergence_label() == "indeterminate");
  const auto j = to_json(r);
  CHECK(j["order"].is_null());
  CHECK(j["indeterminate_cap"] == true);

  o.max_level = 2;
  CHECK(order_or_inf(thickness_order(glued_order2_example(), o)) == 2);
  const auto k5 = to_json(thickness_order(testing::complete(5)));
  CHECK(k5["order"] == "infinite");
  CHECK(k5["rel_hyperbolic"] == true);
}

TEST_CASE("default level cap") {
  const auto g = testing::two_squares();
  CHECK(default_level_cap(g) == static_cast<int>(g.non_edge_count() + g.order() + 2));
}

TEST_CASE("largest_component_stats") {
  auto s = largest_component_stats(testing::cycle(4));
  CHECK(s.max_t1_component == 2);
  CHECK(s.max_supp1 == 4);
  CHECK(order_or_inf(s.report) == 0);

  s = largest_component_stats(testing::complete(5));
  CHECK(s.max_t1_component == 0);
  CHECK(s.max_supp1 == 0);
  CHECK(order_or_inf(s.report) == -1);

  s = largest_component_stats(testing::two_squares());
  CHECK(s.max_t1_component == 2);
  CHECK(s.max_supp1 == 4);
  CHECK(order_or_inf(s.report) == -1);
}

TEST_CASE("level invariants on random graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 5 + rng() % 20;
    const auto g = random_graph(rng, n, 0.25 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
    const SquareGraph sq(g);
    LevelState prev = level_state_from_squares(g, sq);
    const auto& index = prev.index();
    for (int k = 2; k <= 6; ++k) {
      const LevelState next = next_level(g, prev);
      for (std::uint32_t c = 0; c < prev.component_count(); ++c) {
        const auto members = prev.members(c);
        const auto target = next.component_of(members.front());
        for (auto id : members) REQUIRE(next.component_of(id) == target);  // coarsening
        const auto old_supp = support_set(prev, c);
        const auto new_supp = support_set(next, target);
        REQUIRE(std::includes(new_supp.begin(), new_supp.end(), old_supp.begin(), old_supp.end()));
        // C is inside its own latch set.
        for (auto id : members) {
          const auto f = index.at(id);
          REQUIRE(old_supp.count(f.u) == 1);
          REQUIRE(old_supp.count(f.v) == 1);
        }
      }
      // Supports follow the suspension rule.
      for (std::uint32_t c = 0; c < next.component_count(); ++c) {
        std::set<Vertex> expect;
        for (auto id : next.members(c)) {
          const auto f = index.at(id);
          expect.insert(f.u);
          expect.insert(f.v);
          for (Vertex z : common_neighbors(g, f)) expect.insert(z);
        }
        REQUIRE(support_set(next, c) == expect);
      }
      // Every latch set sits inside one component of the next level.
      for (std::uint32_t c = 0; c < prev.component_count(); ++c) {
        const auto latch = prev.latch(g, c);
        for (const auto& f : latch) {
          REQUIRE(next.same_component(f, latch.front()));
        }
      }
      prev = next;
    }
  }
}

TEST_CASE("fixpoint is stable") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(rng, 6 + rng() % 10, 0.5);
    const SquareGraph sq(g);
    LevelState s = next_level(g, level_state_from_squares(g, sq));
    for (int k = 0; k < 20; ++k) {
      LevelState t = next_level(g, s);
      if (t.component_count() == s.component_count()) {
        // Unchanged partition: every later level repeats it.
        LevelState u = next_level(g, t);
        REQUIRE(u.component_count() == t.component_count());
        for (std::uint32_t c = 0; c < t.component_count(); ++c) {
          REQUIRE(support_set(u, u.component_of(t.members(c).front())) == support_set(t, c));
        }
        break;
      }
      s = std::move(t);
    }
  }
}

TEST_CASE("support rules coincide with suspension-inclusive level 1") {
  std::mt19937_64 rng(4);
  EngineOptions any;
  any.support_rule = SupportRule::any_level;
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(rng, 4 + rng() % 10, 0.3 + 0.5 * static_cast<double>(rng() % 100) / 100.0);
    REQUIRE(order_or_inf(thickness_order(g)) == order_or_inf(thickness_order(g, any)));
  }
}

TEST_CASE("literal supp1 misses the cone over K33 minus an edge") {
  const auto g = parse_graph6("Fs~v?");
  const auto oracle_index = index_or_inf(oracle::hypergraph_index(g));
  EngineOptions literal;
  literal.level1_includes_suspensions = false;
  CHECK(order_or_inf(thickness_order(g)) == oracle_index);
  CHECK(order_or_inf(thickness_order(g, literal)) != oracle_index);
}

TEST_CASE("engine agrees with the hypergraph oracle on random 8 to 10 vertex graphs") {
  std::mt19937_64 rng(1234);
  std::size_t finite = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t n = 8 + rng() % 3;
    const auto g = random_graph(rng, n, 0.35 + 0.45 * static_cast<double>(rng() % 100) / 100.0);
    const auto engine = order_or_inf(thickness_order(g));
    CAPTURE(emit_graph6(g));
    REQUIRE(engine == index_or_inf(oracle::hypergraph_index(g)));
    finite += engine >= 0 ? 1 : 0;
  }
  CHECK(finite > 100);
}

TEST_CASE("relabeling does not change the order") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 12;
    const auto g = random_graph(rng, n, 0.5);
    std::vector<Vertex> perm(n);
    for (Vertex v = 0; v < n; ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    auto edges = g.edges();
    for (auto& [a, b] : edges) {
      a = perm[a];
      b = perm[b];
    }
    const auto h = Graph::from_edge_list(n, edges);
    REQUIRE(order_or_inf(thickness_order(g)) == order_or_inf(thickness_order(h)));
  }
}
