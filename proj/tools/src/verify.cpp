#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
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

constexpr const char* kTheta = "name theta\nedge e1 u v\nedge e2 u v\nedge e3 v u\n";
constexpr const char* kTristar = "name tristar\nedge a c OPEN\nedge b c OPEN\nedge d c OPEN\n";

std::vector<Graph> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw DomainError("corpus directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".g") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DomainError("corpus directory '" + dir.string() + "' has no .g files");
  std::vector<Graph> graphs;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::ostringstream text;
    text << in.rdbuf();
    try {
      Graph g = topology::parse_graph(text.str());
      if (g.name().empty()) g = g.renamed(f.stem().string());
      topology::genus(g);
      graphs.push_back(std::move(g));
    } catch (const Error& e) {
      throw DomainError("corpus file '" + f.filename().string() + "': " + e.what());
    }
  }
  return graphs;
}

su2rep::Rng check_rng(const RunConfig& config, int check) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(check)};
  return su2rep::Rng(seq);
}

// Every admissible coloring with all colors <= max_color.
std::vector<Coloring> admissible_up_to(const Graph& g, int max_color) {
  std::vector<Coloring> out;
  std::vector<int> c(g.edge_count(), 0);
  for (;;) {
    Coloring col(c);
    if (coloring::is_admissible(g, col)) out.push_back(std::move(col));
    std::size_t i = 0;
    while (i < c.size() && c[i] == max_color) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  return out;
}

struct Context {
  const RunConfig& config;
  const std::vector<Graph>& corpus;
};

CheckResult verlinde_agreement(const Context& ctx) {
  CheckResult r{1, "Verlinde agreement", true, Json::object(), 0};
  const double tol = ctx.config.tolerance("verlinde");
  double worst = 0;
  Json rows = Json::array();
  for (const auto& g : ctx.corpus) {
    const int genus = topology::genus(g);
    Json counts = Json::array();
    for (int k = 1; k <= 6; ++k) {
      const auto n = coloring::count_level_k(g, k);
      const auto v = coloring::verlinde_number(genus, k);
      worst = std::max(worst, std::abs(v.value - static_cast<double>(v.integer)));
      counts.push_back(n);
      if (n != static_cast<std::uint64_t>(v.integer)) r.passed = false;
    }
    rows.push_back({{"graph", g.name()}, {"genus", genus}, {"counts_k1_to_k6", counts}});
  }
  r.passed = r.passed && worst < tol;
  r.measured = {{"graphs", rows}, {"max_distance_from_integer", worst}};
  return r;
}

CheckResult graph_independence(const Context& ctx) {
  CheckResult r{2, "Graph independence", true, Json::object(), 0};
  std::map<int, std::vector<std::uint64_t>> first;
  Json rows = Json::array();
  for (const auto& g : ctx.corpus) {
    const int genus = topology::genus(g);
    std::vector<std::uint64_t> counts;
    for (int k = 0; k <= 6; ++k) counts.push_back(coloring::count_level_k(g, k));
    auto [it, inserted] = first.emplace(genus, counts);
    if (!inserted && it->second != counts) r.passed = false;
    rows.push_back({{"graph", g.name()}, {"genus", genus}, {"counts_k0_to_k6", counts}});
  }
  r.measured = {{"graphs", rows}};
  return r;
}

CheckResult abelian_count(const Context& ctx) {
  CheckResult r{3, "Abelian count k^g", true, Json::object(), 0};
  Json rows = Json::array();
  for (const auto& g : ctx.corpus) {
    const int genus = topology::genus(g);
    const auto o = topology::find_orientation(g);
    Json counts = Json::array();
    for (int k = 1; k <= 8; ++k) {
      const auto n = abelian::abelian_for_each(g, o, k, nullptr);
      counts.push_back(n);
      if (n != static_cast<std::uint64_t>(std::llround(std::pow(k, genus)))) r.passed = false;
    }
    rows.push_back({{"graph", g.name()}, {"genus", genus}, {"counts_k1_to_k8", counts}});
  }
  r.measured = {{"graphs", rows}};
  return r;
}

CheckResult gauge_invariance(const Context& ctx) {
  CheckResult r{4, "Gauge invariance", true, Json::object(), 0};
  const double tol = ctx.config.tolerance("gauge");
  auto rng = check_rng(ctx.config, 4);
  double worst = 0;
  std::size_t networks = 0;
  for (const auto& g : ctx.corpus) {
    const auto o = topology::find_orientation(g);
    for (const auto& c : admissible_up_to(g, 3)) {
      const su2rep::NetworkTensor nt(SpinNetwork(g, c), o);
      ++networks;
      for (int trial = 0; trial < 100; ++trial) {
        const auto t = su2rep::random_assignment(g.edge_count(), rng);
        const auto gauge = su2rep::random_gauge(g.vertex_count(), rng);
        const double d = std::abs(su2rep::evaluate(nt, t) - su2rep::evaluate(nt, su2rep::gauge_act(g, o, gauge, t)));
        worst = std::max(worst, d);
      }
    }
  }
  r.passed = worst < tol;
  r.measured = {{"networks", networks}, {"trials_per_network", 100}, {"max_residual", worst}, {"tolerance", tol}};
  return r;
}

CheckResult peter_weyl(const Context& ctx) {
  CheckResult r{5, "Peter-Weyl orthogonality", true, Json::object(), 0};
  const Graph theta = topology::parse_graph(kTheta);
  const auto o = topology::find_orientation(theta);
  const auto level2 = coloring::enumerate_level_k(theta, 2).colorings;
  std::vector<su2rep::NetworkTensor> nets;
  for (const auto& c : level2) nets.emplace_back(SpinNetwork(theta, c), o);

  const std::uint64_t n = ctx.config.samples;
  const double bound = ctx.config.tolerance("orthogonality") / std::sqrt(static_cast<double>(n));
  double worst_distinct = 0;
  std::uint64_t stream = 0;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    for (std::size_t j = i + 1; j < nets.size(); ++j) {
      const su2rep::SamplingPlan plan{n, ctx.config.seed + stream++, ctx.config.workers};
      worst_distinct = std::max(worst_distinct, std::abs(su2rep::state_inner_product(nets[i], nets[j], plan).value));
    }
  }
  const double sigmas = ctx.config.tolerance("stability");
  Json selfs = Json::array();
  bool self_ok = true;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto a = su2rep::state_inner_product(nets[i], nets[i], {n, ctx.config.seed + stream++, ctx.config.workers});
    const auto b = su2rep::state_inner_product(nets[i], nets[i], {n, ctx.config.seed + stream++, ctx.config.workers});
    const double spread = std::hypot(a.standard_error, b.standard_error);
    const bool ok = a.value.real() > 0 && b.value.real() > 0 && std::abs(a.value - b.value) <= sigmas * spread;
    self_ok = self_ok && ok;
    selfs.push_back({{"coloring", level2[i].values()},
                     {"first_seed", a.value.real()},
                     {"second_seed", b.value.real()},
                     {"standard_error", spread},
                     {"stable", ok}});
  }
  r.passed = worst_distinct < bound && self_ok;
  r.measured = {{"networks", nets.size()},       {"samples", n},
                {"max_abs_distinct", worst_distinct}, {"bound", bound},
                {"self_products", selfs}};
  return r;
}

CheckResult polytope_membership(const Context& ctx) {
  CheckResult r{6, "Polytope membership", true, Json::object(), 0};
  const double tol = ctx.config.tolerance("polytope");
  std::size_t points = 0;
  std::size_t outside = 0;
  for (const auto& g : ctx.corpus) {
    for (int k = 1; k <= 6; ++k) {
      for (const auto& p : moduli::bs_points(g, k)) {
        ++points;
        if (!moduli::polytope_contains(g, p, tol)) ++outside;
      }
    }
  }
  r.passed = outside == 0;
  r.measured = {{"points", points}, {"outside", outside}};
  return r;
}

CheckResult fiber_dimensions(const Context& ctx) {
  CheckResult r{7, "Fiber dimensions", true, Json::object(), 0};
  Json rows = Json::array();
  for (const auto& g : ctx.corpus) {
    const int expected = 3 * topology::genus(g) - 3;
    const auto generic = moduli::classify_fiber(g, moduli::MomentPoint(std::vector<double>(g.edge_count(), 0.4)));
    const auto zero = moduli::classify_fiber(g, moduli::MomentPoint(std::vector<double>(g.edge_count(), 0.0)));
    const bool ok = generic.resolved() && generic.dimension_upper == expected &&
                    generic.type == moduli::FiberType::generic_torus && zero.resolved() &&
                    zero.dimension_upper == expected && zero.type == moduli::FiberType::schottky;
    r.passed = r.passed && ok;
    rows.push_back({{"graph", g.name()},
                    {"expected", expected},
                    {"generic", generic.dimension_upper},
                    {"zero", zero.dimension_upper}});
  }
  r.measured = {{"graphs", rows}};
  return r;
}

CheckResult schottky_invariance(const Context& ctx) {
  CheckResult r{8, "Schottky invariance", true, Json::object(), 0};
  const double tol = ctx.config.tolerance("schottky");
  auto rng = check_rng(ctx.config, 8);
  double worst = 0;
  std::size_t networks = 0;
  bool identity_zero = true;
  for (const auto& g : ctx.corpus) {
    const auto m = topology::spanning_tree(g);
    const auto o = topology::find_orientation(g);
    const moduli::SchottkyPoint id{std::vector<su2rep::GroupElement>(m.genus())};
    identity_zero = identity_zero && moduli::moment_point(moduli::schottky_embed(g, m, id)).is_zero();
    for (const auto& c : coloring::enumerate_level_k(g, 2).colorings) {
      const SpinNetwork net(g, c);
      ++networks;
      for (int trial = 0; trial < 100; ++trial) {
        const auto s = moduli::random_schottky_point(m.genus(), rng);
        const auto h = su2rep::haar_sample(rng);
        const auto a = moduli::evaluate_schottky(net, m, s, o);
        const auto b = moduli::evaluate_schottky(net, m, moduli::conjugated(s, h), o);
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  r.passed = worst < tol && identity_zero;
  r.measured = {{"networks", networks},
                {"trials_per_network", 100},
                {"max_residual", worst},
                {"identity_moment_point_is_zero", identity_zero}};
  return r;
}

CheckResult structural_identities(const Context& ctx) {
  CheckResult r{9, "Structural identities", true, Json::object(), 0};
  auto rng = check_rng(ctx.config, 9);
  std::size_t checked = 0;
  std::size_t failures = 0;
  auto identities = [&](const Graph& g) {
    ++checked;
    const auto flags = g.flag_count();
    const int genus = topology::genus(g);
    const bool ok = 2 * g.edge_count() - g.loop_count() == flags && 3 * g.vertex_count() - g.loop_count() == flags &&
                    static_cast<int>(g.vertex_count()) == 2 * genus - 2 &&
                    static_cast<int>(g.edge_count()) == 3 * genus - 3;
    if (!ok) ++failures;
  };
  for (const auto& g : ctx.corpus) identities(g);

  const Graph theta = topology::parse_graph(kTheta);
  const auto doubled = topology::double_graph(topology::parse_graph(kTristar, topology::Validation::trivalent));
  identities(doubled.graph);
  const bool tristar_theta = topology::are_isomorphic(doubled.graph, theta);

  std::vector<Graph> pool = ctx.corpus;
  std::vector<std::string> names;
  for (const auto& g : pool) names.push_back(g.name());
  bool additive = true;
  Json sums = Json::array();
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t ia = rng() % pool.size(), ib = rng() % pool.size();
    const Graph& a = pool[ia];
    const Graph& b = pool[ib];
    const auto& ea = a.edge_id(rng() % a.edge_count());
    const auto& eb = b.edge_id(rng() % b.edge_count());
    auto sum = topology::connected_sum(a, ea, b, eb);
    identities(sum.graph);
    const int ga = topology::genus(a), gb = topology::genus(b), gs = topology::genus(sum.graph);
    additive = additive && gs == ga + gb;
    sums.push_back({{"left", names[ia]}, {"right", names[ib]}, {"genus", {ga, gb, gs}}});
    names.push_back("(" + names[ia] + " # " + names[ib] + ")");
    pool.push_back(std::move(sum.graph));
  }
  r.passed = failures == 0 && tristar_theta && additive;
  r.measured = {{"graphs_checked", checked},
                {"identity_failures", failures},
                {"double_tristar_is_theta", tristar_theta},
                {"connected_sums", sums}};
  return r;
}

CheckResult representation_numerics(const Context& ctx) {
  CheckResult r{10, "Representation numerics", true, Json::object(), 0};
  const double rep_tol = ctx.config.tolerance("representation");
  const double int_tol = ctx.config.tolerance("intertwiner");
  auto rng = check_rng(ctx.config, 10);
  double mult = 0;
  double unit = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const auto a = su2rep::haar_sample(rng);
    const auto b = su2rep::haar_sample(rng);
    for (int c = 0; c <= 6; ++c) {
      const Eigen::MatrixXcd ra = su2rep::irrep_matrix(c, a);
      mult = std::max(mult, (ra * su2rep::irrep_matrix(c, b) - su2rep::irrep_matrix(c, a * b)).norm());
      unit = std::max(unit, (ra * ra.adjoint() - Eigen::MatrixXcd::Identity(c + 1, c + 1)).norm());
    }
  }
  double inv = 0;
  std::size_t triples = 0;
  for (int c1 = 0; c1 <= 4; ++c1) {
    for (int c2 = 0; c2 <= 4; ++c2) {
      for (int c3 = 0; c3 <= 4; ++c3) {
        if (!coloring::triple_admissible({c1, c2, c3})) continue;
        ++triples;
        const auto t = su2rep::intertwiner(c1, c2, c3);
        for (int s = 0; s < 20; ++s) inv = std::max(inv, su2rep::invariance_residual(t, su2rep::haar_sample(rng)));
      }
    }
  }
  r.passed = mult < rep_tol && unit < rep_tol && inv < int_tol;
  r.measured = {{"max_multiplicativity_residual", mult},
                {"max_unitarity_residual", unit},
                {"admissible_triples", triples},
                {"max_intertwiner_residual", inv}};
  return r;
}

}  // namespace

std::vector<CheckResult> verify_all(const RunConfig& config) {
  const auto corpus = load_corpus(config.corpus_dir);
  const Context ctx{config, corpus};
  const std::vector<std::function<CheckResult(const Context&)>> checks{
      verlinde_agreement, graph_independence, abelian_count,    gauge_invariance,      peter_weyl,
      polytope_membership, fiber_dimensions,  schottky_invariance, structural_identities, representation_numerics};
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = checks[i](ctx);
    } catch (const Error& e) {
      r = CheckResult{static_cast<int>(i + 1), "check " + std::to_string(i + 1), false, {{"error", e.what()}}, 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace spinnet::cli
