#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "spinnet/abelian.hpp"
#include "spinnet/cli.hpp"
#include "spinnet/coloring.hpp"
#include "spinnet/error.hpp"
#include "spinnet/moduli.hpp"
#include "spinnet/network.hpp"

namespace spinnet::cli {

namespace {

using coloring::Coloring;
using coloring::SpinNetwork;
using topology::Graph;

class InputError : public Error {
 public:
  using Error::Error;
};

// Reads input files and folds every argument and file into the digest.
class Inputs {
 public:
  explicit Inputs(const std::vector<std::string>& args) {
    for (const auto& a : args) hash_ = fnv1a(std::string_view(a.c_str(), a.size() + 1), hash_);
  }

  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    std::string text = s.str();
    hash_ = fnv1a(text, hash_);
    return text;
  }

  Graph graph(const std::string& path, topology::Validation mode = topology::Validation::closed_trivalent) {
    return topology::parse_graph(read(path), mode);
  }

  std::string digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = kFnvOffset;
};

std::optional<std::uint64_t> random_spec(const std::string& spec, std::uint64_t default_seed) {
  if (spec == "random") return default_seed;
  if (spec.rfind("random:", 0) != 0) return std::nullopt;
  std::uint64_t seed = 0;
  const char* first = spec.data() + 7;
  const char* last = spec.data() + spec.size();
  const auto [ptr, ec] = std::from_chars(first, last, seed);
  if (ec != std::errc() || ptr != last || first == last) throw InputError("bad random seed in '" + spec + "'");
  return seed;
}

Json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

Json quaternion_json(const su2rep::GroupElement& u) {
  return Json::array({u.w(), u.x(), u.y(), u.z()});
}

Json edge_map(const Graph& g, const std::function<Json(topology::EdgeIndex)>& f) {
  Json out = Json::object();
  for (topology::EdgeIndex e = 0; e < g.edge_count(); ++e) out[g.edge_id(e)] = f(e);
  return out;
}

Json orientation_json(const Graph& g, const topology::Orientation& o) {
  return edge_map(g, [&](auto e) {
    return Json{{"tail", g.vertex_id(topology::tail_vertex(g, o, e))},
                {"head", g.vertex_id(topology::head_vertex(g, o, e))}};
  });
}

topology::Validation parse_mode(const std::string& mode) {
  if (mode == "closed") return topology::Validation::closed_trivalent;
  if (mode == "trivalent") return topology::Validation::trivalent;
  return topology::Validation::multigraph;
}

Json error_json(const std::exception& e) {
  Json j;
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    j["type"] = "ParseError";
    j["line"] = p->line();
    j["column"] = p->column();
  } else if (dynamic_cast<const DomainError*>(&e)) {
    j["type"] = "DomainError";
  } else if (dynamic_cast<const NumericError*>(&e)) {
    j["type"] = "NumericError";
  } else if (dynamic_cast<const InputError*>(&e)) {
    j["type"] = "InputError";
  } else {
    j["type"] = "InternalError";
  }
  j["message"] = e.what();
  return j;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPINNET_SEED")) {
    std::uint64_t seed = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return seed;
    throw CLI::ValidationError("SPINNET_SEED", "not an unsigned integer: " + std::string(s));
  }
  return 0;
}

// Outcome of a subcommand: payload plus whether its own check passed.
struct Outcome {
  Json result;
  bool passed = true;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string format = "json";
  std::vector<std::string> tolerance_args;
  std::string corpus;
#ifdef SPINNET_DEFAULT_CORPUS_DIR
  corpus = SPINNET_DEFAULT_CORPUS_DIR;
#endif

  CLI::App app{"Spin networks on trivalent graphs", "spinnet"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  auto* seed_opt = app.add_option("--seed", config.seed, "Seed for random inputs (default: $SPINNET_SEED or 0)");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tolerance", tolerance_args, "Override a tolerance, name=value")->take_all();
  app.add_option("--workers", config.workers, "Monte Carlo worker threads")->check(CLI::Range(1u, 256u));

  // Options shared by the subcommands, filled by whichever one runs.
  std::string graph_file, coloring_file, at, point_file, c1_file, c2_file, b_file, mode = "closed";
  int level = 0, genus = 0, trials = 100;
  std::uint64_t samples = 100000;
  std::optional<int> check_level;
  std::optional<std::uint64_t> sub_seed;
  bool list = false;
  std::function<Outcome(Inputs&)> action;

  auto graph_opt = [&](CLI::App* sub) { sub->add_option("--graph", graph_file, "Graph file")->required(); };
  auto coloring_opt = [&](CLI::App* sub) {
    sub->add_option("--coloring", coloring_file, "Coloring file")->required();
  };
  auto seed_of = [&]() { return sub_seed.value_or(config.seed); };

  auto* graph_cmd = app.add_subcommand("graph", "Graph utilities")->require_subcommand(1)->fallthrough();
  auto* info = graph_cmd->add_subcommand("info", "Structure of a graph file")->fallthrough();
  info->add_option("file,--graph", graph_file, "Graph file")->required();
  info->add_option("--mode", mode, "Validation mode")->check(CLI::IsMember({"closed", "trivalent", "multigraph"}));
  info->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file, parse_mode(mode));
      Json r;
      r["name"] = g.name();
      r["vertices"] = g.vertex_count();
      r["edges"] = g.edge_count();
      r["loops"] = g.loop_count();
      r["open_ends"] = g.open_end_count();
      r["flags"] = g.flag_count();
      r["components"] = topology::connected_components(g).size();
      r["betti_number"] = topology::betti_number(g);
      r["closed_trivalent"] = g.is_closed_trivalent();
      if (g.is_closed_trivalent() && topology::is_connected(g)) {
        r["genus"] = topology::genus(g);
        const auto o = topology::find_orientation(g);
        r["orientation"] = orientation_json(g, o);
        const auto m = topology::spanning_tree(g);
        Json tree = Json::array(), complement = Json::array();
        for (auto e : m.tree) tree.push_back(g.edge_id(e));
        for (auto e : m.complement) complement.push_back(g.edge_id(e));
        r["marking"] = {{"tree", tree}, {"complement", complement}};
      }
      return Outcome{r};
    };
  });

  auto* count = app.add_subcommand("count", "Count level-k spin networks")->fallthrough();
  graph_opt(count);
  count->add_option("--level", level, "Level k")->required()->check(CLI::NonNegativeNumber);
  count->add_flag("--list", list, "List the colorings");
  count->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      Json r;
      r["graph"] = g.name();
      r["level"] = level;
      if (list) {
        const auto e = coloring::enumerate_level_k(g, level);
        r["count"] = e.count;
        Json items = Json::array();
        for (const auto& c : e.colorings) items.push_back(edge_map(g, [&](auto i) { return Json(c[i]); }));
        r["colorings"] = items;
      } else {
        r["count"] = coloring::count_level_k(g, level);
      }
      return Outcome{r};
    };
  });

  auto* verlinde = app.add_subcommand("verlinde", "Verlinde number")->fallthrough();
  verlinde->add_option("--genus", genus, "Genus g >= 2")->required();
  verlinde->add_option("--level", level, "Level k")->required();
  verlinde->callback([&] {
    action = [&](Inputs&) {
      const auto v = coloring::verlinde_number(genus, level);
      return Outcome{{{"genus", genus}, {"level", level}, {"value", v.value}, {"integer", v.integer}}};
    };
  });

  auto* check = app.add_subcommand("check", "Admissibility verdict for a coloring")->fallthrough();
  graph_opt(check);
  coloring_opt(check);
  check->add_option("--level", check_level, "Also check level k");
  check->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const Coloring c = coloring::parse_coloring(in.read(coloring_file), g);
      Json r;
      r["admissible"] = coloring::is_admissible(g, c);
      r["inadmissible_vertices"] = coloring::inadmissible_vertices(g, c);
      if (check_level) {
        r["level"] = *check_level;
        r["level_ok"] = coloring::is_level_k(g, c, *check_level);
      }
      return Outcome{r};
    };
  });

  auto* eval = app.add_subcommand("eval", "Evaluate a spin network state")->fallthrough();
  graph_opt(eval);
  coloring_opt(eval);
  eval->add_option("--at", at, "Assignment file or random[:seed]")->required();
  eval->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const SpinNetwork n(g, coloring::parse_coloring(in.read(coloring_file), g));
      su2rep::EdgeAssignment t;
      if (auto s = random_spec(at, config.seed)) {
        su2rep::Rng rng(*s);
        t = su2rep::random_assignment(g.edge_count(), rng);
      } else {
        t = su2rep::parse_assignment(in.read(at), g);
      }
      const auto o = topology::find_orientation(g);
      Json r;
      r["value"] = complex_json(su2rep::evaluate(n, o, t));
      r["at"] = edge_map(g, [&](auto e) { return quaternion_json(t[e]); });
      return Outcome{r};
    };
  });

  auto* gauge = app.add_subcommand("check-gauge", "Gauge invariance trials")->fallthrough();
  graph_opt(gauge);
  coloring_opt(gauge);
  gauge->add_option("--trials", trials, "Number of random (g, t) pairs")->check(CLI::PositiveNumber);
  gauge->add_option("--seed", sub_seed, "Seed (default: global seed)");
  gauge->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const SpinNetwork n(g, coloring::parse_coloring(in.read(coloring_file), g));
      const auto o = topology::find_orientation(g);
      const su2rep::NetworkTensor nt(n, o);
      su2rep::Rng rng(seed_of());
      double worst = 0;
      for (int i = 0; i < trials; ++i) {
        const auto t = su2rep::random_assignment(g.edge_count(), rng);
        const auto h = su2rep::random_gauge(g.vertex_count(), rng);
        worst = std::max(worst, std::abs(su2rep::evaluate(nt, t) - su2rep::evaluate(nt, su2rep::gauge_act(g, o, h, t))));
      }
      const double tol = config.tolerance("gauge");
      return Outcome{{{"trials", trials}, {"max_residual", worst}, {"tolerance", tol}, {"passed", worst < tol}},
                     worst < tol};
    };
  });

  auto* ortho = app.add_subcommand("orthogonality", "Monte Carlo inner product of two states")->fallthrough();
  graph_opt(ortho);
  ortho->add_option("--c1", c1_file, "First coloring")->required();
  ortho->add_option("--c2", c2_file, "Second coloring")->required();
  ortho->add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  ortho->add_option("--seed", sub_seed, "Seed (default: global seed)");
  ortho->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const SpinNetwork a(g, coloring::parse_coloring(in.read(c1_file), g));
      const SpinNetwork b(g, coloring::parse_coloring(in.read(c2_file), g));
      const auto est = su2rep::state_inner_product(a, b, {samples, seed_of(), config.workers});
      const double bound = config.tolerance("orthogonality") / std::sqrt(static_cast<double>(samples));
      Json r;
      r["value"] = complex_json(est.value);
      r["standard_error"] = est.standard_error;
      r["samples"] = samples;
      r["bound"] = bound;
      r["same_coloring"] = a.coloring() == b.coloring();
      r["within_bound"] = std::abs(est.value) < bound;
      return Outcome{r};
    };
  });

  auto* bs = app.add_subcommand("bs", "Bohr-Sommerfeld points")->fallthrough();
  graph_opt(bs);
  bs->add_option("--level", level, "Level k >= 1")->required();
  bs->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const auto points = moduli::bs_points(g, level);
      Json list_json = Json::array();
      for (const auto& p : points) list_json.push_back(p.coordinates());
      return Outcome{{{"edges", g.edge_ids()}, {"level", level}, {"count", points.size()}, {"points", list_json}}};
    };
  });

  auto* fiber = app.add_subcommand("fiber", "Classify the fiber over a moment point")->fallthrough();
  graph_opt(fiber);
  fiber->add_option("--point", point_file, "Moment point file")->required();
  fiber->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const auto f = moduli::classify_fiber(g, moduli::parse_moment_point(in.read(point_file), g));
      Json r;
      r["edges"] = edge_map(g, [&](auto e) { return Json(moduli::to_string(f.edges[e])); });
      Json vertices = Json::object();
      for (topology::VertexIndex v = 0; v < g.vertex_count(); ++v) {
        vertices[g.vertex_id(v)] = moduli::to_string(f.vertices[v]);
      }
      r["vertices"] = vertices;
      if (f.resolved()) {
        r["dimension"] = f.dimension_upper;
      } else {
        r["dimension"] = {{"lower", f.dimension_lower}, {"upper", f.dimension_upper}};
      }
      r["type"] = moduli::to_string(f.type);
      return Outcome{r};
    };
  });

  auto* schottky = app.add_subcommand("schottky-eval", "Evaluate on the Schottky chart")->fallthrough();
  graph_opt(schottky);
  coloring_opt(schottky);
  schottky->add_option("--b", b_file, "Handle file or random[:seed]")->required();
  schottky->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const SpinNetwork n(g, coloring::parse_coloring(in.read(coloring_file), g));
      const auto m = topology::spanning_tree(g);
      moduli::SchottkyPoint s;
      if (auto seed = random_spec(b_file, config.seed)) {
        su2rep::Rng rng(*seed);
        s = moduli::random_schottky_point(m.genus(), rng);
      } else {
        s = moduli::parse_schottky_point(in.read(b_file), g, m);
      }
      Json handles = Json::object();
      for (std::size_t i = 0; i < m.complement.size(); ++i) {
        handles[g.edge_id(m.complement[i])] = quaternion_json(s.handles[i]);
      }
      return Outcome{{{"handles", handles}, {"value", complex_json(moduli::evaluate_schottky(n, m, s))}}};
    };
  });

  auto* abelian_cmd = app.add_subcommand("abelian", "U(1) spin networks")->require_subcommand(1)->fallthrough();
  auto* acount = abelian_cmd->add_subcommand("count", "Count Z_k cycles")->fallthrough();
  graph_opt(acount);
  acount->add_option("--level", level, "Level k >= 1")->required();
  acount->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const auto n = abelian::abelian_for_each(g, topology::find_orientation(g), level, nullptr);
      const int gg = topology::genus(g);
      return Outcome{{{"graph", g.name()},
                      {"level", level},
                      {"count", n},
                      {"genus", gg},
                      {"quotient_torus_dimension", abelian::quotient_torus_dimension(g)}}};
    };
  });
  auto* aeval = abelian_cmd->add_subcommand("eval", "Evaluate a U(1) character state")->fallthrough();
  graph_opt(aeval);
  coloring_opt(aeval);
  aeval->add_option("--level", level, "Level k >= 1")->required();
  aeval->add_option("--at", at, "Phase file or random[:seed]")->required();
  aeval->callback([&] {
    action = [&](Inputs& in) {
      const Graph g = in.graph(graph_file);
      const auto c = abelian::parse_abelian_coloring(in.read(coloring_file), g, level);
      abelian::PhasePoint p;
      if (auto seed = random_spec(at, config.seed)) {
        std::mt19937_64 rng(*seed);
        p = abelian::random_phase_point(g.edge_count(), rng);
      } else {
        p = abelian::parse_phase_point(in.read(at), g);
      }
      const auto o = topology::find_orientation(g);
      return Outcome{{{"orientation", orientation_json(g, o)},
                      {"value", complex_json(abelian::abelian_evaluate(g, o, c, p))}}};
    };
  });

  auto* verify = app.add_subcommand("verify-all", "Run the acceptance checklist")->fallthrough();
  verify->add_option("--corpus", corpus, "Directory of .g files");
  verify->add_option("--samples", config.samples, "Monte Carlo samples per inner product")
      ->check(CLI::PositiveNumber);
  verify->callback([&] {
    action = [&](Inputs&) {
      config.corpus_dir = corpus;
      const auto checks = verify_all(config);
      Json list_json = Json::array();
      bool all = true;
      for (const auto& c : checks) {
        all = all && c.passed;
        list_json.push_back({{"number", c.number},
                             {"name", c.name},
                             {"passed", c.passed},
                             {"seconds", c.seconds},
                             {"measured", c.measured}});
      }
      return Outcome{{{"passed", all}, {"checks", list_json}}, all};
    };
  });

  std::vector<std::string> argv_storage{"spinnet"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (seed_opt->count() == 0) config.seed = default_seed();
    config.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    for (const auto& t : tolerance_args) {
      const auto eq = t.find('=');
      const std::string name = t.substr(0, eq);
      if (eq == std::string::npos || !default_tolerances().contains(name)) {
        throw CLI::ValidationError("--tolerance", "expected name=value with a known name, got '" + t + "'");
      }
      try {
        config.tolerances[name] = std::stod(t.substr(eq + 1));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--tolerance", "bad value in '" + t + "'");
      }
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "spinnet: " << e.what() << "\n" << "Run with --help for usage.\n";
    return 2;
  }
  if (!action) {
    err << "spinnet: no command given\n";
    return 2;
  }

  Report report;
  report.command = args;
  Inputs inputs(args);
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    Outcome o = action(inputs);
    report.result = std::move(o.result);
    report.status = o.passed ? "ok" : "failed";
    code = o.passed ? 0 : 1;
  } catch (const Error& e) {
    report.status = "error";
    report.error = error_json(e);
    code = 1;
  } catch (const std::exception& e) {
    report.status = "error";
    report.error = error_json(e);
    code = 1;
  }
  report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.inputs_digest = inputs.digest();
  out << render(report, config.format);
  if (report.status == "error") err << "spinnet: " << report.error["message"].get<std::string>() << "\n";
  return code;
}

}  // namespace spinnet::cli
