#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "racg/graph.hpp"
#include "racg/union_find.hpp"

namespace racg {

using NonEdgeId = std::uint32_t;
inline constexpr NonEdgeId kNoNonEdge = 0xFFFFFFFFU;

// Dense ids 0..N-1 for the non-edges of a graph, in lexicographic order.
class NonEdgeIndex {
 public:
  explicit NonEdgeIndex(const Graph& g);

  std::size_t size() const { return pairs_.size(); }
  NonEdge at(NonEdgeId id) const { return pairs_[id]; }
  std::span<const NonEdge> all() const { return pairs_; }
  // kNoNonEdge when {u, v} is an edge.
  NonEdgeId id(Vertex u, Vertex v) const { return id_of_pair_[graph_pair_index(u, v)]; }

 private:
  PairIndex graph_pair_index(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    const auto uu = static_cast<PairIndex>(u);
    return uu * (2 * n_ - uu - 1) / 2 + (v - u - 1);
  }

  std::size_t n_ = 0;
  std::vector<NonEdge> pairs_;
  std::vector<NonEdgeId> id_of_pair_;
};

// An induced C4, given by its two diagonals with first < second.
struct Square {
  NonEdge first;
  NonEdge second;
  friend bool operator==(const Square&, const Square&) = default;
};

// Order 0: the complement of g[s] has at least two components that contain
// a complement edge. The witness puts one such component in A, the rest in B.
struct JoinPartition {
  VertexList a;
  VertexList b;
};
bool is_thick_order0(const Graph& g, const VertexSet& s, JoinPartition* witness = nullptr);

// Each induced square once. For each non-edge f, non-adjacent pairs of
// susp(f) are the opposite diagonals.
void for_each_induced_square(const Graph& g, const std::function<void(const Square&)>& fn);
std::vector<Square> enumerate_induced_squares(const Graph& g);

// T1: disjoint-set partition of the non-edges, one union per square.
class SquareGraph {
 public:
  explicit SquareGraph(const Graph& g);

  const NonEdgeIndex& index() const { return *index_; }
  std::shared_ptr<const NonEdgeIndex> shared_index() const { return index_; }
  std::size_t node_count() const { return index_->size(); }
  std::size_t square_count() const { return squares_; }
  std::size_t component_count() const { return partition_.set_count(); }
  NonEdgeId representative(NonEdgeId id) const { return partition_.find(id); }
  bool same_component(NonEdge a, NonEdge b) const;
  std::size_t component_size(NonEdgeId id) const { return partition_.set_size(id); }

 private:
  std::shared_ptr<const NonEdgeIndex> index_;
  mutable UnionFind partition_;
  std::size_t squares_ = 0;
};

// Level-k components with their supports. Members and supports are stored
// flat; component c owns members()[member_offsets[c] .. member_offsets[c+1]).
// Latch sets are implied: every non-edge inside the support.
class LevelState {
 public:
  int level() const { return level_; }
  std::size_t component_count() const { return birth_.size(); }
  std::uint32_t component_of(NonEdgeId id) const { return component_of_[id]; }
  std::span<const NonEdgeId> members(std::uint32_t c) const {
    return {members_.data() + member_offsets_[c], members_.data() + member_offsets_[c + 1]};
  }
  std::span<const Vertex> support(std::uint32_t c) const {
    return {supports_.data() + support_offsets_[c], supports_.data() + support_offsets_[c + 1]};
  }
  // Least level at which this member set is a component.
  int birth_level(std::uint32_t c) const { return birth_[c]; }
  std::vector<NonEdge> latch(const Graph& g, std::uint32_t c) const;
  const NonEdgeIndex& index() const { return *index_; }
  // Whether supports already follow the f ∪ susp(f) rule.
  bool supports_include_suspensions() const { return level_ > 1 || level1_suspensions_; }

  bool same_component(NonEdge a, NonEdge b) const;

 private:
  friend LevelState level_state_from_squares(const Graph& g, const SquareGraph& sq, bool include_suspensions);
  friend LevelState next_level(const Graph& g, const LevelState& state);

  int level_ = 1;
  bool level1_suspensions_ = true;
  std::shared_ptr<const NonEdgeIndex> index_;
  std::vector<std::uint32_t> component_of_;
  std::vector<std::size_t> member_offsets_{0};
  std::vector<NonEdgeId> members_;
  std::vector<std::size_t> support_offsets_{0};
  std::vector<Vertex> supports_;
  std::vector<int> birth_;
};

// supp1(C) is the union of f and susp(f) over the members f of C. With
// `include_suspensions` off it is the bare union of the members, which
// leaves out cone points and disagrees with the hypergraph index from seven
// vertices on.
LevelState level_state_from_squares(const Graph& g, const SquareGraph& sq, bool include_suspensions = true);

// T(k+1) from T(k): every latch set is merged into one block, so components
// whose latch sets share a non-edge coalesce. Supports switch to the
// suspension-inclusive rule.
LevelState next_level(const Graph& g, const LevelState& state);

enum class ThicknessVerdict { finite, infinite, indeterminate };

// How full support is certified.
enum class SupportRule {
  // A component certifies order k0 only with supp at its first level k0.
  first_appearance,
  // Any component of T_k with supp_k = V certifies order k.
  any_level,
};

struct EngineOptions {
  // 0 selects the default |non-edges| + n + 2.
  int max_level = 0;
  SupportRule support_rule = SupportRule::first_appearance;
  // With suspensions in supp1 the two support rules coincide.
  bool level1_includes_suspensions = true;
};

struct WitnessPiece {
  NonEdge representative;  // smallest member of a T1 component
  std::size_t size = 0;
  std::size_t support_size = 0;
};

struct ThicknessWitness {
  int level = 0;
  std::size_t component_size = 0;
  std::size_t support_size = 0;
  // Order 0: the join partition. Higher orders: the T1 components merged
  // into the full-support component.
  std::optional<JoinPartition> join;
  std::vector<WitnessPiece> pieces;
};

struct T1Stats {
  std::size_t non_edges = 0;
  std::size_t squares = 0;
  std::size_t components = 0;
  std::size_t max_component = 0;
  std::size_t max_support = 0;
};

struct ThicknessReport {
  ThicknessVerdict verdict = ThicknessVerdict::infinite;
  int order = -1;  // meaningful when verdict == finite
  int levels_examined = 0;
  int level_cap = 0;
  std::optional<ThicknessWitness> witness;
  bool rel_hyperbolic = true;
  T1Stats t1;

  bool is_finite() const { return verdict == ThicknessVerdict::finite; }
  // "exponential", "poly_degree_<order+1>", or "indeterminate".
  std::string divergence_label() const;
  // "0", "1", ..., "inf", or "cap".
  std::string order_token() const;
};

int default_level_cap(const Graph& g);

ThicknessReport thickness_order(const Graph& g, const EngineOptions& options = {});

struct LargestComponentStats {
  std::size_t max_t1_component = 0;
  std::size_t max_supp1 = 0;
  ThicknessReport report;
};
LargestComponentStats largest_component_stats(const Graph& g, const EngineOptions& options = {});

nlohmann::json to_json(const ThicknessReport& report);

}  // namespace racg
