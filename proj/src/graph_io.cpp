#include "racg/graph_io.hpp"

#include <sstream>
#include <vector>

namespace racg {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";
constexpr unsigned char kLow = 63;
constexpr unsigned char kHigh = 126;

unsigned char checked_byte(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) throw ParseError("graph6: unexpected end of input", pos);
  const auto c = static_cast<unsigned char>(text[pos]);
  if (c < kLow || c > kHigh) throw ParseError("graph6: byte " + std::to_string(c) + " outside 63..126", pos);
  return c;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  if (text.substr(0, kHeader.size()) == kHeader) pos = kHeader.size();
  // Drop one trailing line terminator; anything else is trailing garbage.
  std::size_t end = text.size();
  if (end > pos && text[end - 1] == '\n') --end;
  if (end > pos && text[end - 1] == '\r') --end;
  text = text.substr(0, end);

  std::uint64_t n = 0;
  const unsigned char first = checked_byte(text, pos);
  if (first < kHigh) {
    n = first - kLow;
    pos += 1;
  } else if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == kHigh) {
    for (std::size_t i = 0; i < 6; ++i) n = (n << 6) | (checked_byte(text, pos + 2 + i) - kLow);
    if (n < 258048) throw ParseError("graph6: non-canonical 8-byte vertex count", pos);
    pos += 8;
  } else {
    for (std::size_t i = 0; i < 3; ++i) n = (n << 6) | (checked_byte(text, pos + 1 + i) - kLow);
    if (n < 63) throw ParseError("graph6: non-canonical 4-byte vertex count", pos);
    pos += 4;
  }
  if (n > 0xFFFFFFFFULL) throw ParseError("graph6: vertex count too large", pos);

  const std::uint64_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  const std::uint64_t bytes = (bits + 5) / 6;
  if (text.size() - pos < bytes) throw ParseError("graph6: truncated adjacency data", text.size());
  if (text.size() - pos > bytes) throw ParseError("graph6: trailing garbage", pos + bytes);

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint64_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const auto byte = checked_byte(text, pos + k / 6) - kLow;
      if ((byte >> (5 - k % 6)) & 1U) edges.emplace_back(i, j);
    }
  }
  if (bits % 6 != 0) {
    const std::size_t last = pos + bytes - 1;
    const auto byte = checked_byte(text, last) - kLow;
    const unsigned pad_mask = (1U << (6 - bits % 6)) - 1;
    if ((byte & pad_mask) != 0) throw ParseError("graph6: nonzero padding bits", last);
  }
  return Graph::from_edge_list(static_cast<std::size_t>(n), edges);
}

std::string emit_graph6(const Graph& g) {
  const std::uint64_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kLow));
  } else if (n <= 258047) {
    out.push_back(static_cast<char>(kHigh));
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kLow));
  } else {
    out.push_back(static_cast<char>(kHigh));
    out.push_back(static_cast<char>(kHigh));
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kLow));
  }
  unsigned acc = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1U : 0U);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kLow));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kLow));
  return out;
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw ParseError("edge list: expected header \"n m\"", 0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long a = 0;
    long long b = 0;
    if (!(in >> a >> b)) throw ParseError("edge list: expected edge line " + std::to_string(i + 1), i + 1);
    if (a < 0 || b < 0) throw ParseError("edge list: negative vertex id", i + 1);
    edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  std::string rest;
  if (in >> rest) throw ParseError("edge list: trailing content \"" + rest + "\"", m + 1);
  return Graph::from_edge_list(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

nlohmann::json adjacency_json(const Graph& g) {
  nlohmann::json adj = nlohmann::json::array();
  for (Vertex v = 0; v < g.order(); ++v) {
    auto row = g.neighbors(v);
    adj.push_back(std::vector<Vertex>(row.begin(), row.end()));
  }
  return {{"n", g.order()}, {"m", g.edge_count()}, {"adjacency", adj}};
}

}  // namespace racg
