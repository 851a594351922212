#include "racg/thickness.hpp"

#include <algorithm>
#include <limits>

namespace racg {

NonEdgeIndex::NonEdgeIndex(const Graph& g) : n_(g.order()), id_of_pair_(g.pair_count(), kNoNonEdge) {
  if (g.non_edge_count() >= kNoNonEdge) throw GraphError("too many non-edges to index");
  pairs_.reserve(g.non_edge_count());
  for_each_non_edge(g, [&](NonEdge f) {
    id_of_pair_[graph_pair_index(f.u, f.v)] = static_cast<NonEdgeId>(pairs_.size());
    pairs_.push_back(f);
  });
}

bool is_thick_order0(const Graph& g, const VertexSet& s, JoinPartition* witness) {
  const auto comps = complement_components(g, s);
  const auto first = std::find_if(comps.begin(), comps.end(), [](const auto& c) { return c.has_complement_edge; });
  if (first == comps.end()) return false;
  const bool thick = std::any_of(std::next(first), comps.end(), [](const auto& c) { return c.has_complement_edge; });
  if (thick && witness != nullptr) {
    witness->a = first->vertices;
    witness->b.clear();
    for (auto it = comps.begin(); it != comps.end(); ++it) {
      if (it != first) witness->b.insert(witness->b.end(), it->vertices.begin(), it->vertices.end());
    }
    std::sort(witness->b.begin(), witness->b.end());
  }
  return thick;
}

void for_each_induced_square(const Graph& g, const std::function<void(const Square&)>& fn) {
  for_each_non_edge(g, [&](NonEdge f) {
    const auto susp = common_neighbors(g, f);
    for (std::size_t i = 0; i < susp.size(); ++i) {
      for (std::size_t j = i + 1; j < susp.size(); ++j) {
        const NonEdge other{susp[i], susp[j]};
        if (f < other && !g.adjacent(other.u, other.v)) fn(Square{f, other});
      }
    }
  });
}

std::vector<Square> enumerate_induced_squares(const Graph& g) {
  std::vector<Square> out;
  for_each_induced_square(g, [&](const Square& sq) { out.push_back(sq); });
  return out;
}

SquareGraph::SquareGraph(const Graph& g)
    : index_(std::make_shared<const NonEdgeIndex>(g)), partition_(index_->size()) {
  for_each_induced_square(g, [&](const Square& sq) {
    partition_.unite(index_->id(sq.first.u, sq.first.v), index_->id(sq.second.u, sq.second.v));
    ++squares_;
  });
}

bool SquareGraph::same_component(NonEdge a, NonEdge b) const {
  const auto ia = index_->id(a.u, a.v);
  const auto ib = index_->id(b.u, b.v);
  if (ia == kNoNonEdge || ib == kNoNonEdge) throw GraphError("same_component requires non-edges");
  return partition_.same(ia, ib);
}

std::vector<NonEdge> LevelState::latch(const Graph& g, std::uint32_t c) const {
  std::vector<NonEdge> out;
  const auto supp = support(c);
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      if (!g.adjacent(supp[i], supp[j])) out.push_back({supp[i], supp[j]});
    }
  }
  return out;
}

bool LevelState::same_component(NonEdge a, NonEdge b) const {
  const auto ia = index_->id(a.u, a.v);
  const auto ib = index_->id(b.u, b.v);
  if (ia == kNoNonEdge || ib == kNoNonEdge) throw GraphError("same_component requires non-edges");
  return component_of_[ia] == component_of_[ib];
}

namespace {

// Marks vertices with a generation stamp so repeated unions avoid clearing.
class VertexMarker {
 public:
  explicit VertexMarker(std::size_t n) : stamp_(n, 0) {}
  void next() { ++generation_; }
  // True the first time v is seen in the current generation.
  bool mark(Vertex v) {
    if (stamp_[v] == generation_) return false;
    stamp_[v] = generation_;
    return true;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

void append_support_of_members(const Graph& g, const NonEdgeIndex& index, std::span<const NonEdgeId> members,
                               bool include_suspensions, VertexMarker& marker, std::vector<Vertex>& out) {
  const std::size_t start = out.size();
  marker.next();
  for (NonEdgeId id : members) {
    const NonEdge f = index.at(id);
    if (marker.mark(f.u)) out.push_back(f.u);
    if (marker.mark(f.v)) out.push_back(f.v);
    if (include_suspensions) {
      for (Vertex z : common_neighbors(g, f)) {
        if (marker.mark(z)) out.push_back(z);
      }
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
}

}  // namespace

LevelState level_state_from_squares(const Graph& g, const SquareGraph& sq, bool include_suspensions) {
  LevelState state;
  state.level_ = 1;
  state.level1_suspensions_ = include_suspensions;
  state.index_ = sq.shared_index();
  const auto& index = *state.index_;
  const std::size_t count = index.size();

  // Components numbered by their smallest member.
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp_of_root(count, kUnset);
  state.component_of_.resize(count);
  std::vector<std::size_t> sizes;
  for (NonEdgeId id = 0; id < count; ++id) {
    const auto root = sq.representative(id);
    if (comp_of_root[root] == kUnset) {
      comp_of_root[root] = static_cast<std::uint32_t>(sizes.size());
      sizes.push_back(0);
    }
    state.component_of_[id] = comp_of_root[root];
    ++sizes[comp_of_root[root]];
  }
  state.member_offsets_.assign(sizes.size() + 1, 0);
  for (std::size_t c = 0; c < sizes.size(); ++c) state.member_offsets_[c + 1] = state.member_offsets_[c] + sizes[c];
  state.members_.resize(count);
  std::vector<std::size_t> cursor(state.member_offsets_.begin(), state.member_offsets_.end() - 1);
  for (NonEdgeId id = 0; id < count; ++id) state.members_[cursor[state.component_of_[id]]++] = id;

  VertexMarker marker(g.order());
  state.supports_.reserve(count * 2);
  for (std::uint32_t c = 0; c < sizes.size(); ++c) {
    append_support_of_members(g, index, state.members(c), include_suspensions, marker, state.supports_);
    state.support_offsets_.push_back(state.supports_.size());
  }
  state.birth_.assign(sizes.size(), 1);
  return state;
}

LevelState next_level(const Graph& g, const LevelState& state) {
  const auto& index = *state.index_;
  const std::size_t old_count = state.component_count();
  UnionFind blocks(old_count);
  for (std::uint32_t c = 0; c < old_count; ++c) {
    const auto supp = state.support(c);
    for (std::size_t i = 0; i < supp.size(); ++i) {
      for (std::size_t j = i + 1; j < supp.size(); ++j) {
        const NonEdgeId id = index.id(supp[i], supp[j]);
        if (id != kNoNonEdge) blocks.unite(c, state.component_of_[id]);
      }
    }
  }

  LevelState next;
  next.level_ = state.level_ + 1;
  next.index_ = state.index_;

  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> new_of_root(old_count, kUnset);
  std::vector<std::uint32_t> new_of_old(old_count);
  std::vector<std::vector<std::uint32_t>> parts;
  for (std::uint32_t c = 0; c < old_count; ++c) {
    const auto root = blocks.find(c);
    if (new_of_root[root] == kUnset) {
      new_of_root[root] = static_cast<std::uint32_t>(parts.size());
      parts.emplace_back();
    }
    new_of_old[c] = new_of_root[root];
    parts[new_of_root[root]].push_back(c);
  }

  next.component_of_.resize(state.component_of_.size());
  for (std::size_t id = 0; id < next.component_of_.size(); ++id) {
    next.component_of_[id] = new_of_old[state.component_of_[id]];
  }

  VertexMarker marker(g.order());
  next.members_.reserve(state.members_.size());
  next.supports_.reserve(state.supports_.size());
  next.birth_.reserve(parts.size());
  for (const auto& part : parts) {
    const std::size_t member_start = next.members_.size();
    for (auto old : part) {
      const auto m = state.members(old);
      next.members_.insert(next.members_.end(), m.begin(), m.end());
    }
    if (part.size() > 1) {
      std::sort(next.members_.begin() + static_cast<std::ptrdiff_t>(member_start), next.members_.end());
    }
    next.member_offsets_.push_back(next.members_.size());
    next.birth_.push_back(part.size() == 1 ? state.birth_[part.front()] : next.level_);

    if (!state.supports_include_suspensions()) {
      // The support rule changes between level 1 and level 2.
      const std::span<const NonEdgeId> members(next.members_.data() + member_start,
                                               next.members_.size() - member_start);
      append_support_of_members(g, index, members, true, marker, next.supports_);
    } else if (part.size() == 1) {
      const auto s = state.support(part.front());
      next.supports_.insert(next.supports_.end(), s.begin(), s.end());
    } else {
      // Under the suspension rule the support of a union is the union of
      // the supports.
      const std::size_t start = next.supports_.size();
      marker.next();
      for (auto old : part) {
        for (Vertex v : state.support(old)) {
          if (marker.mark(v)) next.supports_.push_back(v);
        }
      }
      std::sort(next.supports_.begin() + static_cast<std::ptrdiff_t>(start), next.supports_.end());
    }
    next.support_offsets_.push_back(next.supports_.size());
  }
  return next;
}

std::string ThicknessReport::divergence_label() const {
  switch (verdict) {
    case ThicknessVerdict::finite:
      return "poly_degree_" + std::to_string(order + 1);
    case ThicknessVerdict::infinite:
      return "exponential";
    case ThicknessVerdict::indeterminate:
      break;
  }
  return "indeterminate";
}

std::string ThicknessReport::order_token() const {
  switch (verdict) {
    case ThicknessVerdict::finite:
      return std::to_string(order);
    case ThicknessVerdict::infinite:
      return "inf";
    case ThicknessVerdict::indeterminate:
      break;
  }
  return "cap";
}

int default_level_cap(const Graph& g) {
  const std::size_t cap = g.non_edge_count() + g.order() + 2;
  return static_cast<int>(std::min<std::size_t>(cap, std::numeric_limits<int>::max()));
}

namespace {

T1Stats t1_stats(const SquareGraph& sq, const LevelState& level1) {
  T1Stats stats;
  stats.non_edges = sq.node_count();
  stats.squares = sq.square_count();
  stats.components = level1.component_count();
  for (std::uint32_t c = 0; c < level1.component_count(); ++c) {
    stats.max_component = std::max(stats.max_component, level1.members(c).size());
    stats.max_support = std::max(stats.max_support, level1.support(c).size());
  }
  return stats;
}

ThicknessWitness component_witness(const LevelState& state, std::uint32_t c, const LevelState& level1) {
  ThicknessWitness w;
  w.level = state.level();
  w.component_size = state.members(c).size();
  w.support_size = state.support(c).size();
  std::vector<std::uint32_t> seen;
  for (NonEdgeId id : state.members(c)) {
    const auto c1 = level1.component_of(id);
    if (std::find(seen.begin(), seen.end(), c1) != seen.end()) continue;
    seen.push_back(c1);
    w.pieces.push_back({level1.index().at(level1.members(c1).front()), level1.members(c1).size(),
                        level1.support(c1).size()});
  }
  return w;
}

// A component of `state` that certifies thickness at state.level(), if any.
std::optional<std::uint32_t> full_support_component(const Graph& g, const LevelState& state, SupportRule rule) {
  for (std::uint32_t c = 0; c < state.component_count(); ++c) {
    if (rule == SupportRule::first_appearance && state.birth_level(c) != state.level()) continue;
    if (state.support(c).size() == g.order()) return c;
  }
  return std::nullopt;
}

}  // namespace

ThicknessReport thickness_order(const Graph& g, const EngineOptions& options) {
  ThicknessReport report;
  report.level_cap = options.max_level > 0 ? options.max_level : default_level_cap(g);

  const SquareGraph sq(g);
  const LevelState level1 = level_state_from_squares(g, sq, options.level1_includes_suspensions);
  report.t1 = t1_stats(sq, level1);

  auto finish = [&report](ThicknessVerdict verdict, int order) {
    report.verdict = verdict;
    report.order = verdict == ThicknessVerdict::finite ? order : -1;
    report.rel_hyperbolic = verdict == ThicknessVerdict::infinite;
    return report;
  };

  JoinPartition join;
  if (is_thick_order0(g, VertexSet::all(g.order()), &join)) {
    ThicknessWitness w;
    w.level = 0;
    w.support_size = g.order();
    w.component_size = g.non_edge_count();
    w.join = std::move(join);
    report.witness = std::move(w);
    return finish(ThicknessVerdict::finite, 0);
  }
  // Without an induced square there is no level-0 component to build on;
  // this also rules out the lone non-edge on two vertices.
  if (sq.square_count() == 0) return finish(ThicknessVerdict::infinite, -1);

  report.levels_examined = 1;
  if (auto c = full_support_component(g, level1, options.support_rule)) {
    report.witness = component_witness(level1, *c, level1);
    return finish(ThicknessVerdict::finite, 1);
  }

  LevelState state = level1;
  while (true) {
    if (state.level() >= report.level_cap) return finish(ThicknessVerdict::indeterminate, -1);
    LevelState next = next_level(g, state);
    report.levels_examined = next.level();
    if (auto c = full_support_component(g, next, options.support_rule)) {
      report.witness = component_witness(next, *c, level1);
      return finish(ThicknessVerdict::finite, next.level());
    }
    // Once supports follow the suspension rule, an unchanged partition means
    // unchanged supports and latch sets, so every later level is identical.
    if (state.supports_include_suspensions() && next.component_count() == state.component_count()) {
      return finish(ThicknessVerdict::infinite, -1);
    }
    state = std::move(next);
  }
}

LargestComponentStats largest_component_stats(const Graph& g, const EngineOptions& options) {
  LargestComponentStats stats;
  stats.report = thickness_order(g, options);
  stats.max_t1_component = stats.report.t1.max_component;
  stats.max_supp1 = stats.report.t1.max_support;
  return stats;
}

nlohmann::json to_json(const ThicknessReport& report) {
  nlohmann::json j;
  switch (report.verdict) {
    case ThicknessVerdict::finite:
      j["order"] = report.order;
      break;
    case ThicknessVerdict::infinite:
      j["order"] = "infinite";
      break;
    case ThicknessVerdict::indeterminate:
      j["order"] = nullptr;
      j["indeterminate_cap"] = true;
      j["level_cap"] = report.level_cap;
      break;
  }
  if (report.witness) {
    const auto& w = *report.witness;
    nlohmann::json wj = {{"level", w.level}, {"component_size", w.component_size}, {"supp_size", w.support_size}};
    if (w.join) wj["join"] = {{"a", w.join->a}, {"b", w.join->b}};
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : w.pieces) {
      pieces.push_back({{"u", p.representative.u},
                        {"v", p.representative.v},
                        {"size", p.size},
                        {"supp_size", p.support_size}});
    }
    wj["pieces"] = std::move(pieces);
    j["witness"] = std::move(wj);
  } else {
    j["witness"] = nullptr;
  }
  j["rel_hyperbolic"] = report.rel_hyperbolic;
  j["divergence"] = report.divergence_label();
  j["levels_examined"] = report.levels_examined;
  j["t1_stats"] = {{"non_edges", report.t1.non_edges},
                   {"squares", report.t1.squares},
                   {"components", report.t1.components},
                   {"max_component", report.t1.max_component},
                   {"max_supp", report.t1.max_support}};
  return j;
}

}  // namespace racg
