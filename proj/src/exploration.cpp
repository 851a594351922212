#include "racg/exploration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "racg/random_lab.hpp"

namespace racg::explore {

const char* to_string(Variant v) { return v == Variant::order1 ? "order1" : "order2"; }

const char* to_string(StopVerdict v) { return v == StopVerdict::large_stop ? "LARGE_STOP" : "EXTINCTION_STOP"; }

std::size_t default_cap(std::size_t n) {
  const double l = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(l * l * l * l)));
}

namespace {

bool induces_square(const Graph& g, NonEdge a, NonEdge b) {
  if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) return false;
  return !g.adjacent(a.u, a.v) && !g.adjacent(b.u, b.v) && g.adjacent(a.u, b.u) && g.adjacent(a.u, b.v) &&
         g.adjacent(a.v, b.u) && g.adjacent(a.v, b.v);
}

NonEdge ordered(Vertex a, Vertex b) { return a < b ? NonEdge{a, b} : NonEdge{b, a}; }

// Stamp-based membership sets sized to the graph, reused across steps.
struct Scratch {
  explicit Scratch(std::size_t n) : in_y(n, 0) {}
  std::vector<std::uint32_t> in_y;
  std::uint32_t generation = 0;
};

void collect_bridge_pairs(const Graph& g, Vertex x1, Vertex y1, const std::vector<bool>& excluded, Scratch& scratch,
                          std::vector<std::pair<NonEdge, NonEdge>>& out) {
  // x2, x3 must see y1 but not x1; y2, y3 must see x1 but not y1.
  std::vector<Vertex> xs;
  for (Vertex x : g.neighbors(y1)) {
    if (x != x1 && !excluded[x] && !g.adjacent(x, x1)) xs.push_back(x);
  }
  const std::uint32_t gen = ++scratch.generation;
  bool any_y = false;
  for (Vertex y : g.neighbors(x1)) {
    if (y != y1 && !excluded[y] && !g.adjacent(y, y1)) {
      scratch.in_y[y] = gen;
      any_y = true;
    }
  }
  if (!any_y || xs.size() < 2) return;

  std::vector<std::pair<Vertex, std::vector<Vertex>>> links;  // x -> its neighbors among the ys
  for (Vertex x : xs) {
    std::vector<Vertex> ys;
    for (Vertex y : g.neighbors(x)) {
      if (scratch.in_y[y] == gen) ys.push_back(y);
    }
    if (ys.size() >= 2) links.emplace_back(x, std::move(ys));
  }
  std::vector<Vertex> shared;
  for (std::size_t i = 0; i < links.size(); ++i) {
    for (std::size_t j = i + 1; j < links.size(); ++j) {
      const Vertex x2 = links[i].first;
      const Vertex x3 = links[j].first;
      if (g.adjacent(x2, x3)) continue;
      shared.clear();
      std::set_intersection(links[i].second.begin(), links[i].second.end(), links[j].second.begin(),
                            links[j].second.end(), std::back_inserter(shared));
      for (std::size_t a = 0; a < shared.size(); ++a) {
        for (std::size_t b = a + 1; b < shared.size(); ++b) {
          if (!g.adjacent(shared[a], shared[b])) out.emplace_back(ordered(x2, x3), ordered(shared[a], shared[b]));
        }
      }
    }
  }
}

ExplorationOutcome explore_impl(const Graph& g, const Square& seed, bool with_bridges, const ExploreOptions& options) {
  if (seed.first.u >= g.order() || seed.first.v >= g.order() || seed.second.u >= g.order() ||
      seed.second.v >= g.order() || !induces_square(g, seed.first, seed.second)) {
    throw GraphError("exploration seed is not an induced square");
  }
  const std::size_t n = g.order();
  const std::size_t cap = options.cap > 0 ? options.cap : default_cap(n);
  if (cap < 2) throw std::invalid_argument("exploration cap must be >= 2");

  struct Active {
    NonEdge pair;
    NonEdge partner;
  };
  ExplorationOutcome out;
  std::vector<bool> discovered(n, false);
  for (Vertex v : {seed.first.u, seed.first.v, seed.second.u, seed.second.v}) discovered[v] = true;
  out.discovered = 4;
  std::deque<Active> active;
  std::unordered_set<std::uint64_t> seen;  // A ∪ R
  std::unordered_set<std::uint64_t> reached;
  auto activate = [&](NonEdge pair, NonEdge partner) {
    if (options.check_invariants && !induces_square(g, pair, partner)) {
      throw std::logic_error("exploration invariant: activated pair does not form a square with its partner");
    }
    seen.insert(g.pair_key(pair.u, pair.v));
    active.push_back({pair, partner});
    out.explored.push_back(pair);
  };
  activate(seed.first, seed.second);
  activate(seed.second, seed.first);

  Scratch scratch(with_bridges ? n : 0);
  std::vector<Vertex> z;
  std::vector<Vertex> pool;
  std::vector<Active> fresh;
  std::vector<std::pair<NonEdge, NonEdge>> bridges;
  std::size_t reached_count = 0;
  while (true) {
    if (reached_count + active.size() > cap) {
      out.verdict = StopVerdict::large_stop;
      break;
    }
    if (active.empty()) {
      out.verdict = StopVerdict::extinction_stop;
      break;
    }
    const Active current = active.front();
    active.pop_front();
    const Vertex x1 = current.pair.u;
    const Vertex y1 = current.pair.v;

    z.clear();
    {
      auto a = g.neighbors(x1);
      auto b = g.neighbors(y1);
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(z));
      z.erase(std::remove_if(z.begin(), z.end(), [&](Vertex v) { return discovered[v]; }), z.end());
    }
    for (Vertex v : z) discovered[v] = true;
    out.discovered += z.size();

    fresh.clear();
    pool.assign(z.begin(), z.end());
    // Bridge partners are not in D, so they can reappear in Z.
    for (Vertex v : {current.partner.u, current.partner.v}) {
      if (std::find(z.begin(), z.end(), v) == z.end()) pool.push_back(v);
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (g.adjacent(pool[i], pool[j])) continue;
        const NonEdge pair = ordered(pool[i], pool[j]);
        if (!seen.contains(g.pair_key(pair.u, pair.v))) fresh.push_back({pair, current.pair});
      }
    }
    const std::size_t regular = fresh.size();

    if (with_bridges) {
      // Scan runs over V \ (D_t ∪ Z_t); Z_t is already marked discovered.
      bridges.clear();
      collect_bridge_pairs(g, x1, y1, discovered, scratch, bridges);
      for (const auto& [xp, yp] : bridges) {
        if (!seen.contains(g.pair_key(xp.u, xp.v))) fresh.push_back({xp, yp});
        if (!seen.contains(g.pair_key(yp.u, yp.v))) fresh.push_back({yp, xp});
      }
    }

    // Lexicographic insertion; the first partner recorded for a pair wins.
    std::stable_sort(fresh.begin(), fresh.end(), [](const Active& a, const Active& b) { return a.pair < b.pair; });
    std::size_t added = 0;
    std::size_t added_bridges = 0;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (i > 0 && fresh[i].pair == fresh[i - 1].pair) continue;
      if (seen.contains(g.pair_key(fresh[i].pair.u, fresh[i].pair.v))) continue;
      activate(fresh[i].pair, fresh[i].partner);
      ++added;
      if (fresh[i].partner != current.pair) ++added_bridges;
    }

    if (options.check_invariants && !reached.insert(g.pair_key(x1, y1)).second) {
      throw std::logic_error("exploration invariant: pair reached twice");
    }
    ++reached_count;
    ++out.steps;
    if (options.keep_trace) {
      out.trace.push_back({current.pair, current.partner, z.size(), added - added_bridges, added_bridges});
    }
    (void)regular;
  }
  out.active_plus_reached = reached_count + active.size();
  return out;
}

}  // namespace

ExplorationOutcome explore_square_component(const Graph& g, const Square& seed, const ExploreOptions& options) {
  return explore_impl(g, seed, false, options);
}

ExplorationOutcome explore_order2(const Graph& g, const Square& seed, const ExploreOptions& options) {
  return explore_impl(g, seed, true, options);
}

ExplorationOutcome run_exploration(const Graph& g, const Square& seed, Variant variant, const ExploreOptions& options) {
  return explore_impl(g, seed, variant == Variant::order2, options);
}

std::vector<std::pair<NonEdge, NonEdge>> bridge_pairs(const Graph& g, Vertex x1, Vertex y1,
                                                      const std::vector<bool>& excluded) {
  if (excluded.size() != g.order()) throw std::invalid_argument("bridge_pairs: exclusion mask has wrong size");
  Scratch scratch(g.order());
  std::vector<std::pair<NonEdge, NonEdge>> out;
  collect_bridge_pairs(g, x1, y1, excluded, scratch, out);
  return out;
}

std::optional<Square> random_induced_square(const Graph& g, std::mt19937_64& rng, std::size_t attempts) {
  const std::size_t n = g.order();
  if (n < 4) return std::nullopt;
  std::vector<Vertex> common;
  for (std::size_t t = 0; t < attempts; ++t) {
    const auto w = static_cast<Vertex>(rng() % n);
    const auto nw = g.neighbors(w);
    if (nw.size() < 2) continue;
    const Vertex a = nw[rng() % nw.size()];
    const Vertex b = nw[rng() % nw.size()];
    if (a == b || g.adjacent(a, b)) continue;
    common.clear();
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(common));
    common.erase(std::remove_if(common.begin(), common.end(), [&](Vertex x) { return x == w || g.adjacent(x, w); }),
                 common.end());
    if (common.empty()) continue;
    const Vertex w2 = common[rng() % common.size()];
    NonEdge d1 = ordered(a, b);
    NonEdge d2 = ordered(w, w2);
    if (d2 < d1) std::swap(d1, d2);
    return Square{d1, d2};
  }
  return std::nullopt;
}

double offspring_mean(const OffspringModel& model) {
  if (model.lambda < 0) throw std::invalid_argument("offspring_mean needs lambda >= 0");
  const double l2 = model.lambda * model.lambda;
  const double l4 = l2 * l2;
  double mean = l4 / 2 + 2 * l2;
  if (model.modified) mean += l4 * l4 / 8;
  return mean;
}

double critical_lambda(bool modified) {
  double lo = 0.0;
  double hi = 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (offspring_mean({mid, modified}) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::size_t sample_offspring(const OffspringModel& model, std::size_t n, std::mt19937_64& rng) {
  const double q = std::min(1.0, model.lambda * model.lambda / static_cast<double>(n));
  const auto z = std::binomial_distribution<std::size_t>(n, q)(rng);
  std::size_t x = (z + 2) * (z + 1) / 2 - 1;
  if (model.modified) {
    const double l2 = model.lambda * model.lambda;
    const double rate = l2 * l2 * l2 * l2 / 8;
    if (rate > 0) x += std::poisson_distribution<std::size_t>(rate)(rng);
  }
  return x;
}

Estimate sample_offspring_mean(const OffspringModel& model, std::size_t n, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = static_cast<double>(sample_offspring(model, n, rng));
    sum += x;
    sum_sq += x * x;
  }
  Estimate e;
  e.trials = samples;
  e.value = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - e.value * e.value);
  e.standard_error = std::sqrt(var / static_cast<double>(samples));
  return e;
}

Estimate bgw_simulate(const OffspringModel& model, std::size_t n, std::size_t generations_cap,
                      std::size_t population_cap, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("bgw_simulate needs trials >= 1");
  Estimate e;
  e.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(lab::mix64(seed ^ lab::mix64(t)));
    std::size_t population = 1;
    bool survived = false;
    for (std::size_t gen = 0; gen < generations_cap; ++gen) {
      std::size_t next = 0;
      for (std::size_t i = 0; i < population && next <= population_cap; ++i) next += sample_offspring(model, n, rng);
      population = next;
      if (population == 0) break;
      if (population > population_cap) {
        survived = true;
        break;
      }
    }
    if (population > 0) survived = true;
    e.successes += survived ? 1 : 0;
  }
  e.value = static_cast<double>(e.successes) / static_cast<double>(trials);
  e.standard_error = std::sqrt(e.value * (1 - e.value) / static_cast<double>(trials));
  return e;
}

std::vector<ExploreTrial> explore_trials(const ExploreConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("explore needs trials >= 1");
  if (config.n < 4) throw std::invalid_argument("explore needs n >= 4");
  if (config.lambda < 0) throw std::invalid_argument("explore needs lambda >= 0");
  const double p = config.lambda / std::sqrt(static_cast<double>(config.n));
  if (p > 1.0) throw std::invalid_argument("lambda / sqrt(n) exceeds 1");
  std::vector<ExploreTrial> out(config.trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < config.trials; i = next++) {
      ExploreTrial& t = out[i];
      t.trial = i;
      t.seed = lab::trial_seed(config.master_seed, config.n, config.lambda, i);
      const Graph g = lab::sample_gnp(config.n, p, t.seed);
      std::mt19937_64 rng(lab::mix64(t.seed));
      const auto square = random_induced_square(g, rng);
      if (!square) continue;
      t.seeded = true;
      ExploreOptions options;
      options.cap = config.cap;
      t.outcome = run_exploration(g, *square, config.variant, options);
      t.outcome.explored.clear();
      t.outcome.explored.shrink_to_fit();
    }
  };
  const unsigned jobs = std::max(1U, config.jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 1; w < jobs; ++w) workers.emplace_back(work);
  work();
  for (auto& t : workers) t.join();
  return out;
}

void write_csv(std::ostream& out, const ExploreConfig& config, const std::vector<ExploreTrial>& trials) {
  out << "n,lambda,variant,trial,seed,verdict,steps,explored,discovered\n";
  for (const auto& t : trials) {
    out << config.n << ',' << lab::format_double(config.lambda) << ',' << to_string(config.variant) << ',' << t.trial
        << ',' << t.seed << ',' << (t.seeded ? to_string(t.outcome.verdict) : "NO_SQUARE") << ','
        << t.outcome.steps << ',' << t.outcome.active_plus_reached << ',' << t.outcome.discovered << '\n';
  }
}

nlohmann::json trials_json(const ExploreConfig& config, const std::vector<ExploreTrial>& trials) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t large = 0;
  std::size_t extinct = 0;
  std::size_t unseeded = 0;
  for (const auto& t : trials) {
    if (!t.seeded) {
      ++unseeded;
    } else if (t.outcome.verdict == StopVerdict::large_stop) {
      ++large;
    } else {
      ++extinct;
    }
    rows.push_back({{"trial", t.trial},
                    {"seed", t.seed},
                    {"verdict", t.seeded ? to_string(t.outcome.verdict) : "NO_SQUARE"},
                    {"steps", t.outcome.steps},
                    {"explored", t.outcome.active_plus_reached},
                    {"discovered", t.outcome.discovered}});
  }
  const std::size_t seeded = large + extinct;
  return {{"n", config.n},
          {"lambda", config.lambda},
          {"variant", to_string(config.variant)},
          {"cap", config.cap > 0 ? config.cap : default_cap(config.n)},
          {"trials", rows},
          {"aggregate",
           {{"large_stop", large},
            {"extinction_stop", extinct},
            {"no_square", unseeded},
            {"frac_large", seeded > 0 ? static_cast<double>(large) / static_cast<double>(seeded) : 0.0}}}};
}

}  // namespace racg::explore
