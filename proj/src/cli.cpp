#include "racg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "racg/exploration.hpp"
#include "racg/generators.hpp"
#include "racg/graph_io.hpp"
#include "racg/hypergraph_oracle.hpp"
#include "racg/random_lab.hpp"
#include "racg/thickness.hpp"

namespace racg::cli {

namespace {

// Raised for bad invocations; maps to kUsage.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw UsageError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

GlueOrientation parse_orientation(std::string_view s) {
  if (s == "straight") return GlueOrientation::straight;
  if (s == "crossed") return GlueOrientation::crossed;
  throw UsageError("glue orientation must be straight or crossed, got '" + std::string(s) + "'");
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  return std::max(1U, std::thread::hardware_concurrency());
}

struct GraphSource {
  std::string g6;
  std::string edges;
  std::string gen;

  void add_to(CLI::App* app) {
    auto* a = app->add_option("--g6", g6, "graph6 string");
    auto* b = app->add_option("--edges", edges, "edge-list file ('n m' then m pairs; '-' for stdin)");
    auto* c = app->add_option("--gen", gen, "generator spec, e.g. path-of-squares:12");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }
  bool given() const { return !g6.empty() || !edges.empty() || !gen.empty(); }

  Graph load(std::istream& in) const {
    if (!given()) throw UsageError("need one of --g6, --edges, --gen");
    if (!g6.empty()) return parse_graph6(g6);
    if (!gen.empty()) return generate(gen);
    if (edges == "-") return read_edge_list(in);
    std::ifstream file(edges);
    if (!file) throw std::runtime_error("cannot open edge-list file '" + edges + "'");
    return read_edge_list(file);
  }
};

struct FormatOption {
  std::string value;
  void add_to(CLI::App* app, std::string fallback) {
    value = std::move(fallback);
    app->add_option("--format", value, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  }
  bool is(std::string_view f) const { return value == f; }
};

// ---- analyze ----

struct AnalyzeArgs {
  GraphSource source;
  FormatOption format;
  int level_cap = 0;
  std::string support_rule = "first";
  bool literal_supp1 = false;
};

EngineOptions engine_options(const AnalyzeArgs& a) {
  EngineOptions o;
  o.max_level = a.level_cap;
  o.support_rule = a.support_rule == "any" ? SupportRule::any_level : SupportRule::first_appearance;
  o.level1_includes_suspensions = !a.literal_supp1;
  return o;
}

void write_report(const Graph& g, const ThicknessReport& r, const FormatOption& format, bool first,
                  std::ostream& out) {
  if (format.is("json")) {
    nlohmann::json j = to_json(r);
    j["graph6"] = emit_graph6(g);
    j["n"] = g.order();
    j["m"] = g.edge_count();
    out << j.dump() << '\n';
  } else if (format.is("csv")) {
    if (first) out << "graph6,n,m,order,rel_hyp,divergence\n";
    out << emit_graph6(g) << ',' << g.order() << ',' << g.edge_count() << ',' << r.order_token() << ','
        << (r.rel_hyperbolic ? 1 : 0) << ',' << r.divergence_label() << '\n';
  } else {
    out << "graph6: " << emit_graph6(g) << '\n'
        << "order: " << r.order_token() << '\n'
        << "rel_hyperbolic: " << (r.rel_hyperbolic ? "true" : "false") << '\n'
        << "divergence: " << r.divergence_label() << '\n';
  }
}

int cmd_analyze(const AnalyzeArgs& a, std::istream& in, std::ostream& out) {
  const auto options = engine_options(a);
  bool indeterminate = false;
  auto handle = [&](const Graph& g, bool first) {
    const auto r = thickness_order(g, options);
    indeterminate = indeterminate || r.verdict == ThicknessVerdict::indeterminate;
    write_report(g, r, a.format, first, out);
  };
  if (a.source.given()) {
    handle(a.source.load(in), true);
  } else {
    // Batch mode: one graph6 string per line on stdin.
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      try {
        handle(parse_graph6(trim(line)), first);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.offset());
      }
      first = false;
    }
  }
  return indeterminate ? kIndeterminate : kOk;
}

// ---- squares ----

struct SquaresArgs {
  GraphSource source;
  FormatOption format;
};

int cmd_squares(const SquaresArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = a.source.load(in);
  const auto squares = enumerate_induced_squares(g);
  if (a.format.is("json")) {
    const SquareGraph sq(g);
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : squares) {
      list.push_back({{s.first.u, s.first.v}, {s.second.u, s.second.v}});
    }
    std::map<NonEdgeId, std::vector<nlohmann::json>> comps;
    const auto& index = sq.index();
    for (NonEdgeId id = 0; id < index.size(); ++id) {
      const auto f = index.at(id);
      comps[sq.representative(id)].push_back({f.u, f.v});
    }
    nlohmann::json components = nlohmann::json::array();
    for (auto& [rep, members] : comps) components.push_back(members);
    out << nlohmann::json{{"n", g.order()},
                          {"non_edges", index.size()},
                          {"squares", list},
                          {"t1_components", sq.component_count()},
                          {"components", components}}
               .dump()
        << '\n';
  } else {
    if (a.format.is("csv")) out << "f_u,f_v,g_u,g_v\n";
    const char sep = a.format.is("csv") ? ',' : ' ';
    for (const auto& s : squares) {
      out << s.first.u << sep << s.first.v << sep << s.second.u << sep << s.second.v << '\n';
    }
  }
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  std::vector<std::size_t> n;
  std::vector<double> c;
  std::vector<double> p;
  bool rel_hyp = false;
  std::string grid;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  int level_cap = 0;
  bool dry_run = false;
  FormatOption format;
};

std::vector<lab::GridPoint> read_grid_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open grid file '" + path + "'");
  std::vector<lab::GridPoint> grid;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields(t);
    std::optional<std::size_t> n;
    std::optional<double> c;
    std::optional<double> p;
    std::string field;
    while (fields >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw UsageError("grid line " + std::to_string(line_no) + ": expected key=value");
      const auto key = field.substr(0, eq);
      const auto value = std::string_view(field).substr(eq + 1);
      if (key == "n") {
        n = parse_number<std::size_t>(value, "n");
      } else if (key == "c") {
        c = parse_number<double>(value, "c");
      } else if (key == "p") {
        p = parse_number<double>(value, "p");
      } else {
        throw UsageError("grid line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
    }
    if (!n || (c.has_value() == p.has_value())) {
      throw UsageError("grid line " + std::to_string(line_no) + ": need n= and exactly one of c=, p=");
    }
    grid.push_back(c ? lab::GridPoint::from_c(*n, *c) : lab::GridPoint::from_p(*n, *p));
  }
  return grid;
}

lab::ExperimentConfig sweep_config(const SweepArgs& a) {
  lab::ExperimentConfig cfg;
  if (!a.grid.empty()) {
    if (!a.n.empty()) throw UsageError("--grid cannot be combined with --n");
    cfg.grid = read_grid_file(a.grid);
  } else {
    if (a.n.empty()) throw UsageError("sweep needs --n or --grid");
    const int modes = (a.c.empty() ? 0 : 1) + (a.p.empty() ? 0 : 1) + (a.rel_hyp ? 1 : 0);
    if (modes == 0) throw UsageError("sweep needs one of --c, --p, --rel-hyp");
    if (modes > 1) throw UsageError("--c, --p and --rel-hyp are mutually exclusive");
    for (const auto n : a.n) {
      if (n < 2) throw UsageError("--n values must be >= 2");
      if (a.rel_hyp) cfg.grid.push_back(lab::GridPoint::from_p(n, lab::rel_hyperbolic_p(n)));
      for (const auto c : a.c) cfg.grid.push_back(lab::GridPoint::from_c(n, c));
      for (const auto p : a.p) cfg.grid.push_back(lab::GridPoint::from_p(n, p));
    }
  }
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.level_cap = a.level_cap;
  cfg.jobs = resolve_jobs(a.jobs);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto cfg = sweep_config(a);
  if (a.dry_run) {
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& g : cfg.grid) grid.push_back({{"n", g.n}, {"c", g.c}, {"p", g.p}});
    out << nlohmann::json{{"grid", grid}, {"trials", cfg.trials}, {"seed", cfg.master_seed}}.dump() << '\n';
    return kOk;
  }
  const auto result = lab::threshold_sweep(cfg);
  if (a.format.is("csv")) {
    lab::write_csv(out, result);
  } else if (a.format.is("json")) {
    out << lab::aggregates_json(result).dump() << '\n';
  } else {
    out << "n c p trials rel_hyp le0 le1 le2 thick cap max_supp1\n";
    for (const auto& g : result.aggregates()) {
      out << g.n << ' ' << lab::format_double(g.c) << ' ' << lab::format_double(g.p) << ' ' << g.trials << ' '
          << g.rel_hyperbolic << ' ' << g.order_at_most_0 << ' ' << g.order_at_most_1 << ' ' << g.order_at_most_2
          << ' ' << g.thick << ' ' << g.indeterminate << ' ' << g.max_supp1 << '\n';
    }
  }
  const bool any_cap = std::any_of(result.rows.begin(), result.rows.end(),
                                   [](const auto& r) { return r.verdict == ThicknessVerdict::indeterminate; });
  return any_cap ? kIndeterminate : kOk;
}

// ---- explore ----

struct ExploreArgs {
  std::size_t n = 1000;
  double lambda = 0.75;
  std::string variant = "order1";
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::size_t cap = 0;
  FormatOption format;
};

int cmd_explore(const ExploreArgs& a, std::ostream& out) {
  explore::ExploreConfig cfg;
  cfg.n = a.n;
  cfg.lambda = a.lambda;
  cfg.variant = a.variant == "order2" ? explore::Variant::order2 : explore::Variant::order1;
  cfg.trials = a.trials;
  cfg.master_seed = a.seed;
  cfg.cap = a.cap;
  cfg.jobs = resolve_jobs(a.jobs);
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  if (cfg.cap == 1) throw UsageError("--cap must be >= 2");
  std::vector<explore::ExploreTrial> trials;
  try {
    trials = explore::explore_trials(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.format.is("csv")) {
    explore::write_csv(out, cfg, trials);
  } else {
    const auto j = explore::trials_json(cfg, trials);
    if (a.format.is("json")) {
      out << j.dump() << '\n';
    } else {
      const auto& agg = j["aggregate"];
      out << "large_stop: " << agg["large_stop"].get<std::size_t>() << '\n'
          << "extinction_stop: " << agg["extinction_stop"].get<std::size_t>() << '\n'
          << "no_square: " << agg["no_square"].get<std::size_t>() << '\n'
          << "frac_large: " << lab::format_double(agg["frac_large"].get<double>()) << '\n';
    }
  }
  return kOk;
}

// ---- extremal-scan ----

struct ScanArgs {
  std::size_t m = 0;
  bool exhaustive = false;
  std::size_t sampled = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool dedup = false;
  FormatOption format;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  ScanOptions o;
  o.mode = a.sampled > 0 ? ScanMode::sampled : ScanMode::exhaustive;
  o.samples = a.sampled;
  o.seed = a.seed;
  o.jobs = resolve_jobs(a.jobs);
  o.dedup = a.dedup;
  if (a.m < 1) throw UsageError("--m must be >= 1");
  ExtremalScanReport r;
  try {
    r = extremal_scan(a.m, o);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.format.is("text")) {
    out << "m: " << r.m << "\nscanned: " << r.graphs_scanned << "\nthick: " << r.thick_count
        << "\nmin_edges_among_thick: "
        << (r.min_edges_among_thick ? std::to_string(*r.min_edges_among_thick) : std::string("none"))
        << "\nviolations: " << r.violations.size() << "\nextremal_witnesses:";
    for (const auto& w : r.extremal_witnesses) out << ' ' << w;
    out << '\n';
  } else if (a.format.is("csv")) {
    out << "kind,graph6\n";
    for (const auto& w : r.extremal_witnesses) out << "extremal," << w << '\n';
    for (const auto& w : r.violations) out << "violation," << w << '\n';
    for (const auto& w : r.order0_bound_violations) out << "order0_bound_violation," << w << '\n';
  } else {
    out << to_json(r).dump() << '\n';
  }
  return kOk;
}

// ---- oracle index ----

struct OracleArgs {
  GraphSource source;
  FormatOption format;
  bool strips_allow_empty = false;
  bool all_sets = false;
};

int cmd_oracle(const OracleArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = a.source.load(in);
  oracle::OracleOptions o;
  o.strips_allow_empty = a.strips_allow_empty;
  o.selection = a.all_sets ? oracle::Selection::all : oracle::Selection::maximal;
  oracle::IndexResult r;
  try {
    r = oracle::hypergraph_index(g, o);
  } catch (const oracle::SizeGuardError& e) {
    throw UsageError(e.what());
  }
  const std::string token = r.index ? std::to_string(*r.index) : "inf";
  if (a.format.is("json")) {
    out << nlohmann::json{{"graph6", emit_graph6(g)},
                          {"index", r.index ? nlohmann::json(*r.index) : nlohmann::json("infinite")},
                          {"levels_built", r.levels_built}}
               .dump()
        << '\n';
  } else if (a.format.is("csv")) {
    out << "graph6,index,levels_built\n" << emit_graph6(g) << ',' << token << ',' << r.levels_built << '\n';
  } else {
    out << "index: " << token << '\n';
  }
  return kOk;
}

// ---- gen ----

struct GenArgs {
  std::string spec;
  FormatOption format;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Graph g = generate(a.spec);
  if (a.format.is("json")) {
    out << adjacency_json(g).dump() << '\n';
  } else if (a.format.is("csv")) {
    out << "u,v\n";
    for (const auto& [u, v] : g.edges()) out << u << ',' << v << '\n';
  } else {
    out << emit_graph6(g) << '\n';
  }
  return kOk;
}

// ---- critical-lambda, bgw ----

struct CriticalArgs {
  bool modified = false;
  FormatOption format;
};

int cmd_critical(const CriticalArgs& a, std::ostream& out) {
  const double x = explore::critical_lambda(a.modified);
  if (a.format.is("json")) {
    out << nlohmann::json{{"modified", a.modified}, {"lambda", x}}.dump() << '\n';
  } else if (a.format.is("csv")) {
    out << "modified,lambda\n" << (a.modified ? 1 : 0) << ',' << lab::format_double(x) << '\n';
  } else {
    out << lab::format_double(x) << '\n';
  }
  return kOk;
}

struct BgwArgs {
  double lambda = 0.7;
  std::size_t n = 100000;
  std::size_t generations = 50;
  std::size_t population = 10000;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  bool modified = false;
  FormatOption format;
};

int cmd_bgw(const BgwArgs& a, std::ostream& out) {
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.lambda < 0) throw UsageError("--lambda must be >= 0");
  const explore::OffspringModel model{a.lambda, a.modified};
  const auto e = explore::bgw_simulate(model, a.n, a.generations, a.population, a.trials, a.seed);
  if (a.format.is("csv")) {
    out << "lambda,modified,n,trials,survivors,survival,standard_error\n"
        << lab::format_double(a.lambda) << ',' << (a.modified ? 1 : 0) << ',' << a.n << ',' << e.trials << ','
        << e.successes << ',' << lab::format_double(e.value) << ',' << lab::format_double(e.standard_error) << '\n';
  } else if (a.format.is("json")) {
    out << nlohmann::json{{"lambda", a.lambda},
                          {"modified", a.modified},
                          {"offspring_mean", explore::offspring_mean(model)},
                          {"n", a.n},
                          {"trials", e.trials},
                          {"survivors", e.successes},
                          {"survival", e.value},
                          {"standard_error", e.standard_error}}
               .dump()
        << '\n';
  } else {
    out << lab::format_double(e.value) << " +- " << lab::format_double(e.standard_error) << '\n';
  }
  return kOk;
}

// ---- config file ----

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    auto key = trim(std::string_view(t).substr(0, eq));
    auto value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

bool flag_given(const std::vector<std::string>& args, const std::string& name) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == name || a.rfind(name + "=", 0) == 0; });
}

}  // namespace

Graph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw UsageError("generator spec needs 'kind:args', got '" + std::string(spec) + "'");
  const auto kind = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  auto need = [&](std::size_t k) {
    if (args.size() != k) {
      throw UsageError("generator '" + std::string(kind) + "' takes " + std::to_string(k) + " argument(s)");
    }
  };
  auto size_arg = [&](std::size_t i) { return parse_number<std::size_t>(args[i], "generator argument"); };
  try {
    if (kind == "path-of-squares") {
      need(1);
      return path_of_squares(size_arg(0));
    }
    if (kind == "k2m") {
      need(1);
      const auto m = size_arg(0);
      if (m < 3) throw UsageError("k2m needs m >= 3");
      return complete_bipartite(2, m - 2);
    }
    if (kind == "kab") {
      need(2);
      return complete_bipartite(size_arg(0), size_arg(1));
    }
    if (kind == "complete" || kind == "cycle" || kind == "empty") {
      need(1);
      const auto n = size_arg(0);
      std::vector<std::pair<Vertex, Vertex>> edges;
      if (kind == "complete") {
        for (Vertex u = 0; u < n; ++u) {
          for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        }
      } else if (kind == "cycle") {
        if (n < 3) throw UsageError("cycle needs n >= 3");
        for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
      }
      return Graph::from_edge_list(n, edges);
    }
    if (kind == "gnp") {
      need(3);
      const auto n = size_arg(0);
      const auto p = parse_number<double>(args[1], "probability");
      if (!(p >= 0.0 && p <= 1.0)) throw UsageError("gnp probability must lie in [0, 1]");
      return lab::sample_gnp(n, p, parse_number<std::uint64_t>(args[2], "seed"));
    }
    if (kind == "glue") {
      if (args.size() == 1 && args[0] == "fig2") return glued_order2_example(GlueOrientation::straight);
      if (args.size() == 1 && args[0] == "fig2-crossed") return glued_order2_example(GlueOrientation::crossed);
      if (args.size() != 6 && args.size() != 7) {
        throw UsageError("glue takes fig2, fig2-crossed or <g6>,<u>,<v>,<g6>,<u>,<v>[,straight|crossed]");
      }
      const Graph g1 = parse_graph6(args[0]);
      const Graph g2 = parse_graph6(args[3]);
      const NonEdge f1{parse_number<Vertex>(args[1], "vertex"), parse_number<Vertex>(args[2], "vertex")};
      const NonEdge f2{parse_number<Vertex>(args[4], "vertex"), parse_number<Vertex>(args[5], "vertex")};
      const auto orientation = args.size() == 7 ? parse_orientation(args[6]) : GlueOrientation::straight;
      return glue_along_non_edges(g1, f1, g2, f2, orientation);
    }
  } catch (const GraphError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown generator '" + std::string(kind) + "'");
}

int run(const std::vector<std::string>& raw_args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thickness and divergence of right-angled Coxeter groups", "racg"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file; command-line flags take precedence");

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "thickness order of a graph (stdin: one graph6 per line)");
  analyze.source.add_to(c_analyze);
  analyze.format.add_to(c_analyze, "json");
  c_analyze->add_option("--level-cap", analyze.level_cap, "highest level examined (0: default)")
      ->check(CLI::NonNegativeNumber);
  c_analyze->add_option("--support-rule", analyze.support_rule, "first or any")
      ->check(CLI::IsMember({"first", "any"}));
  c_analyze->add_flag("--literal-supp1", analyze.literal_supp1, "level-1 supports without suspensions");

  SquaresArgs squares;
  auto* c_squares = app.add_subcommand("squares", "induced squares and square-graph components");
  squares.source.add_to(c_squares);
  squares.format.add_to(c_squares, "json");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "threshold sweep over G(n, p)");
  c_sweep->add_option("--n", sweep.n, "vertex counts")->delimiter(',');
  c_sweep->add_option("--c", sweep.c, "p = c / sqrt(n)")->delimiter(',');
  c_sweep->add_option("--p", sweep.p, "raw edge probabilities")->delimiter(',');
  c_sweep->add_flag("--rel-hyp", sweep.rel_hyp, "p = 1 / (4 sqrt(n ln n))");
  c_sweep->add_option("--grid", sweep.grid, "grid file, one 'n=<n> c=<c>' or 'n=<n> p=<p>' per line");
  c_sweep->add_option("--trials", sweep.trials, "trials per grid point");
  c_sweep->add_option("--seed", sweep.seed, "master seed");
  c_sweep->add_option("--jobs", sweep.jobs, "worker threads (0: all cores)");
  c_sweep->add_option("--level-cap", sweep.level_cap, "engine level cap (0: default)")->check(CLI::NonNegativeNumber);
  c_sweep->add_flag("--dry-run", sweep.dry_run, "print the resolved grid and exit");
  sweep.format.add_to(c_sweep, "csv");

  ExploreArgs exp;
  auto* c_explore = app.add_subcommand("explore", "square-component exploration on G(n, lambda/sqrt(n))");
  c_explore->add_option("--n", exp.n, "vertices");
  c_explore->add_option("--lambda", exp.lambda, "p = lambda / sqrt(n)");
  c_explore->add_option("--variant", exp.variant, "order1 or order2")->check(CLI::IsMember({"order1", "order2"}));
  c_explore->add_option("--trials", exp.trials, "trials");
  c_explore->add_option("--seed", exp.seed, "master seed");
  c_explore->add_option("--jobs", exp.jobs, "worker threads (0: all cores)");
  c_explore->add_option("--cap", exp.cap, "LARGE_STOP threshold (0: ceil((ln n)^4))");
  exp.format.add_to(c_explore, "json");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("extremal-scan", "thick graphs with few edges on m vertices");
  c_scan->add_option("--m", scan.m, "vertices")->required();
  auto* o_exh = c_scan->add_flag("--exhaustive", scan.exhaustive, "all labeled graphs (default, m <= 7)");
  auto* o_smp = c_scan->add_option("--sampled", scan.sampled, "number of random samples instead");
  o_exh->excludes(o_smp);
  c_scan->add_option("--seed", scan.seed, "seed for --sampled");
  c_scan->add_option("--jobs", scan.jobs, "worker threads (0: all cores)");
  c_scan->add_flag("--dedup", scan.dedup, "collapse witnesses up to isomorphism");
  scan.format.add_to(c_scan, "json");

  OracleArgs oracle_args;
  auto* c_oracle = app.add_subcommand("oracle", "reference computations on small graphs");
  c_oracle->require_subcommand(1);
  auto* c_index = c_oracle->add_subcommand("index", "hypergraph index (at most 16 vertices)");
  oracle_args.source.add_to(c_index);
  oracle_args.format.add_to(c_index, "json");
  c_index->add_flag("--strips-allow-empty", oracle_args.strips_allow_empty, "bare non-edges count as strips");
  c_index->add_flag("--all-sets", oracle_args.all_sets, "use every order-0 set and strip, not just maximal ones");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "emit a generated graph (graph6 by default)");
  c_gen->add_option("spec", gen.spec, "generator spec")->required();
  gen.format.add_to(c_gen, "text");

  CriticalArgs critical;
  auto* c_critical = app.add_subcommand("critical-lambda", "root of the offspring mean = 1");
  c_critical->add_flag("--modified", critical.modified, "include the bridge-pair term");
  critical.format.add_to(c_critical, "text");

  BgwArgs bgw;
  auto* c_bgw = app.add_subcommand("bgw", "branching-process survival estimate");
  c_bgw->add_option("--lambda", bgw.lambda, "rescaled edge probability");
  c_bgw->add_option("--n", bgw.n, "binomial size");
  c_bgw->add_option("--generations", bgw.generations, "generation cap");
  c_bgw->add_option("--population", bgw.population, "population cap");
  c_bgw->add_option("--trials", bgw.trials, "trials");
  c_bgw->add_option("--seed", bgw.seed, "seed");
  c_bgw->add_flag("--modified", bgw.modified, "include the bridge-pair term");
  bgw.format.add_to(c_bgw, "text");

  try {
    std::vector<std::string> args = raw_args;
    // Merge the config file: its keys become flags of the chosen command
    // unless that flag was given explicitly.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      std::size_t erase = 0;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        erase = 2;
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        erase = 1;
      } else {
        continue;
      }
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + erase));
      CLI::App* target = nullptr;
      std::size_t insert_at = 0;
      for (std::size_t k = 0; k < args.size(); ++k) {
        auto* sub = (target ? target : &app)->get_subcommand_no_throw(args[k]);
        if (sub != nullptr) {
          target = sub;
          insert_at = k + 1;
        } else if (target != nullptr) {
          break;
        }
      }
      if (target == nullptr) throw UsageError("--config needs a command");
      std::vector<std::string> extra;
      for (const auto& [key, value] : read_config(path)) {
        const auto flag = "--" + key;
        if (key == "config" || target->get_option_no_throw(flag) == nullptr) {
          throw UsageError("unknown config key '" + key + "' for command '" + target->get_name() + "'");
        }
        if (!flag_given(args, flag)) extra.push_back(flag + "=" + value);
      }
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), extra.begin(), extra.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::Error& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kUsage;
  }

  try {
    if (c_analyze->parsed()) return cmd_analyze(analyze, in, out);
    if (c_squares->parsed()) return cmd_squares(squares, in, out);
    if (c_sweep->parsed()) return cmd_sweep(sweep, out);
    if (c_explore->parsed()) return cmd_explore(exp, out);
    if (c_scan->parsed()) return cmd_scan(scan, out);
    if (c_index->parsed()) return cmd_oracle(oracle_args, in, out);
    if (c_gen->parsed()) return cmd_gen(gen, out);
    if (c_critical->parsed()) return cmd_critical(critical, out);
    if (c_bgw->parsed()) return cmd_bgw(bgw, out);
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: parse: " << one_line(e.what()) << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kFailure;
  }
  err << "error: usage: no command\n";
  return kUsage;
}

}  // namespace racg::cli
