#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "racg/graph.hpp"

namespace racg {

// Parse failure carrying the byte offset of the first offending byte.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// graph6: optional ">>graph6<<" header, N(n), then the upper triangle
// column by column ((0,1),(0,2),(1,2),(0,3),...) packed six bits per byte,
// each byte offset by 63. A single trailing newline is tolerated.
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

// Edge-list text: first line "n m", then m lines "u v" (0-based).
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

// {"n": n, "m": m, "adjacency": [[...], ...]}
nlohmann::json adjacency_json(const Graph& g);

}  // namespace racg
