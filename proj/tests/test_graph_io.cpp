#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "racg/graph_io.hpp"

using namespace racg;

namespace {

Graph random_graph(std::mt19937_64& rng, std::size_t n, unsigned percent) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng() % 100 < percent) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edge_list(n, edges);
}

}  // namespace

TEST_CASE("graph6 fixtures") {
  CHECK(parse_graph6("C~") == testing::complete(4));
  const auto c4 = parse_graph6("Cl");
  CHECK(c4 == testing::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  CHECK(emit_graph6(c4) == "Cl");
  CHECK(emit_graph6(testing::complete(4)) == "C~");
  CHECK(emit_graph6(testing::make(1, {})) == "@");
  CHECK(emit_graph6(testing::make(0, {})) == "?");
  CHECK(parse_graph6("@").order() == 1);
  CHECK(parse_graph6(">>graph6<<Cl") == c4);
  CHECK(parse_graph6("Cl\n") == c4);
}

TEST_CASE("graph6 multi-byte sizes") {
  for (std::size_t n : {61, 62, 63, 100, 3000}) {
    std::mt19937_64 rng(n);
    const auto g = random_graph(rng, n, 10);
    const auto s = emit_graph6(g);
    if (n <= 62) {
      CHECK(s[0] == static_cast<char>(63 + n));
    } else {
      CHECK(s[0] == '~');
      CHECK(s[1] != '~');
    }
    CHECK(parse_graph6(s) == g);
    CHECK(emit_graph6(parse_graph6(s)) == s);
  }
}

TEST_CASE("graph6 round trip on random graphs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_graph(rng, rng() % 11, static_cast<unsigned>(rng() % 101));
    const auto s = emit_graph6(g);
    CHECK(parse_graph6(s) == g);
    CHECK(emit_graph6(parse_graph6(s)) == s);
  }
}

TEST_CASE("graph6 parse errors carry byte offsets") {
  auto offset_of = [](std::string_view s) -> long {
    try {
      parse_graph6(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("C") == 1);       // body missing
  CHECK(offset_of("C~~") == 2);     // trailing garbage
  CHECK(offset_of("C\x7f") == 1);   // byte outside 63..126
  CHECK(offset_of("C ") == 1);
  CHECK(offset_of("B@") == 1);      // padding bit set: n=3 uses 3 of 6 bits
  CHECK(offset_of(">>graph6<<") == 10);
  CHECK(offset_of("Cl\n\n") == 2);  // first byte past the body
  CHECK(offset_of("Bw") == -1);
  CHECK(parse_graph6("Bw") == testing::complete(3));
}

TEST_CASE("edge-list text format") {
  const auto g = parse_graph6("Cl");
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "4 4\n0 1\n0 3\n1 2\n2 3\n");
  std::istringstream in(out.str());
  CHECK(read_edge_list(in) == g);

  std::istringstream bad_count("3 2\n0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad_count), ParseError);
  std::istringstream trailing("3 1\n0 1\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(trailing), ParseError);
  std::istringstream range("3 1\n0 3\n");
  CHECK_THROWS(read_edge_list(range));
}

TEST_CASE("adjacency json") {
  const auto j = adjacency_json(parse_graph6("Cl"));
  CHECK(j["n"] == 4);
  CHECK(j["m"] == 4);
  CHECK(j["adjacency"][0] == nlohmann::json::array({1, 3}));
}
