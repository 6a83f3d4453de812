#include "spinnet/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "spinnet/error.hpp"
#include "spinnet/keyed_text.hpp"

namespace spinnet::coloring {

Coloring::Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {
  for (auto c : colors_) {
    if (c < 0) throw DomainError("colors must be nonnegative");
  }
}

Color Coloring::max() const {
  return colors_.empty() ? 0 : *std::max_element(colors_.begin(), colors_.end());
}

void check_total(const Graph& g, const Coloring& c) {
  if (c.size() != g.edge_count()) {
    throw DomainError("coloring has " + std::to_string(c.size()) + " colors for " +
                      std::to_string(g.edge_count()) + " edges");
  }
}

Coloring parse_coloring(std::string_view text, const Graph& g) {
  auto lines = keyed_by_edge(parse_keyed_lines(text), g, 1);
  std::vector<Color> colors;
  colors.reserve(lines.size());
  for (const auto& kl : lines) {
    const long long v = parse_integer(kl, 0);
    if (v < 0 || v > 1'000'000) {
      throw ParseError(kl.line, kl.value_column, "color out of range for '" + kl.key + "'");
    }
    colors.push_back(static_cast<Color>(v));
  }
  return Coloring(std::move(colors));
}

std::string serialize_coloring(const Graph& g, const Coloring& c) {
  check_total(g, c);
  std::ostringstream out;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out << g.edge_id(e) << " = " << c[e] << '\n';
  return out.str();
}

VertexTriple vertex_triple(const Graph& g, const Coloring& c, VertexIndex v) {
  const auto half = g.incident(v);
  if (half.size() != 3) {
    throw DomainError("vertex '" + g.vertex_id(v) + "' is not trivalent");
  }
  return {c[half[0].edge], c[half[1].edge], c[half[2].edge]};
}

VertexTriple vertex_triple(const Graph& g, const Coloring& c, std::string_view vertex) {
  return vertex_triple(g, c, g.vertex_index(vertex));
}

bool triple_admissible(const VertexTriple& t) {
  const auto [a, b, c] = t;
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  return a <= b + c && b <= a + c && c <= a + b;
}

bool triple_level_k(const VertexTriple& t, int k) {
  return t[0] <= k && t[1] <= k && t[2] <= k && t[0] + t[1] + t[2] <= 2 * k;
}

bool is_admissible(const Graph& g, const Coloring& c) {
  check_total(g, c);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!triple_admissible(vertex_triple(g, c, v))) return false;
  }
  return true;
}

bool is_level_k(const Graph& g, const Coloring& c, int k) {
  check_total(g, c);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (c[e] > k) return false;
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!triple_level_k(vertex_triple(g, c, v), k)) return false;
  }
  return true;
}

std::vector<std::string> inadmissible_vertices(const Graph& g, const Coloring& c) {
  check_total(g, c);
  std::vector<std::string> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!triple_admissible(vertex_triple(g, c, v))) out.push_back(g.vertex_id(v));
  }
  return out;
}

SpinNetwork::SpinNetwork(Graph graph, Coloring c, std::optional<int> level)
    : graph_(std::move(graph)), coloring_(std::move(c)), level_(level) {
  check_total(graph_, coloring_);
  if (auto bad = inadmissible_vertices(graph_, coloring_); !bad.empty()) {
    throw DomainError("coloring is not admissible at vertex '" + bad.front() + "'");
  }
  if (level_) {
    if (*level_ < 0) throw DomainError("level must be nonnegative");
    if (!is_level_k(graph_, coloring_, *level_)) {
      throw DomainError("coloring exceeds level " + std::to_string(*level_));
    }
  }
}

std::uint64_t for_each_level_k(const Graph& g, int k,
                               const std::function<void(const Coloring&)>& visit) {
  topology::validate(g, topology::Validation::closed_trivalent);
  if (k < 0) throw DomainError("level must be nonnegative");

  // completes[e]: vertices whose last incident edge (by index) is e.
  std::vector<std::vector<VertexIndex>> completes(g.edge_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    EdgeIndex last = 0;
    for (const auto& h : g.incident(v)) last = std::max(last, h.edge);
    completes[last].push_back(v);
  }

  std::vector<Color> colors(g.edge_count(), 0);
  std::uint64_t count = 0;
  auto vertex_ok = [&](VertexIndex v) {
    const auto half = g.incident(v);
    const VertexTriple t{colors[half[0].edge], colors[half[1].edge], colors[half[2].edge]};
    return triple_admissible(t) && triple_level_k(t, k);
  };
  std::function<void(EdgeIndex)> descend = [&](EdgeIndex e) {
    if (e == g.edge_count()) {
      ++count;
      if (visit) visit(Coloring(colors));
      return;
    }
    for (Color c = 0; c <= k; ++c) {
      colors[e] = c;
      if (std::all_of(completes[e].begin(), completes[e].end(), vertex_ok)) descend(e + 1);
    }
    colors[e] = 0;
  };
  descend(0);
  return count;
}

Enumeration enumerate_level_k(const Graph& g, int k) {
  Enumeration out;
  out.count = for_each_level_k(g, k, [&](const Coloring& c) { out.colorings.push_back(c); });
  return out;
}

std::uint64_t count_level_k(const Graph& g, int k) { return for_each_level_k(g, k, nullptr); }

VerlindeValue verlinde_number(int genus, int k) {
  if (genus < 2) throw DomainError("Verlinde number needs genus >= 2");
  if (k < 0) throw DomainError("level must be nonnegative");
  const long double pi = std::numbers::pi_v<long double>;
  long double sum = 0;
  for (int n = 1; n <= k + 1; ++n) {
    const long double s = std::sin(static_cast<long double>(n) * pi / (k + 2));
    sum += std::pow(s, -static_cast<long double>(2 * genus - 2));
  }
  const long double value = std::pow((k + 2) / 2.0L, static_cast<long double>(genus - 1)) * sum;
  const long double rounded = std::round(value);
  if (std::fabs(value - rounded) >= 1e-6L) {
    throw NumericError("Verlinde sum " + std::to_string(static_cast<double>(value)) +
                       " is not within 1e-6 of an integer");
  }
  return {static_cast<double>(value), static_cast<std::int64_t>(rounded)};
}

GenusTable count_all_genus(int genus, int k, const std::vector<Graph>& corpus) {
  GenusTable table{genus, k, {}, true};
  for (const auto& g : corpus) {
    const int gg = topology::genus(g);
    if (gg != genus) {
      throw DomainError("graph '" + g.name() + "' has genus " + std::to_string(gg) +
                        ", expected " + std::to_string(genus));
    }
  }
  for (const auto& g : corpus) {
    table.rows.push_back({g.name(), count_level_k(g, k)});
    table.all_equal = table.all_equal && table.rows.back().count == table.rows.front().count;
  }
  return table;
}

SpinNetwork colored_connected_sum(const SpinNetwork& left, std::string_view left_edge,
                                  const SpinNetwork& right, std::string_view right_edge,
                                  Color bridge_color) {
  const Color cl = left.coloring()[left.graph().edge_index(left_edge)];
  const Color cr = right.coloring()[right.graph().edge_index(right_edge)];
  if (!triple_admissible({cl, cl, bridge_color}) || !triple_admissible({cr, cr, bridge_color})) {
    throw DomainError("bridge color " + std::to_string(bridge_color) +
                      " is inadmissible with split colors " + std::to_string(cl) + " and " +
                      std::to_string(cr));
  }
  auto sum = topology::connected_sum(left.graph(), left_edge, right.graph(), right_edge);
  std::vector<Color> colors(sum.graph.edge_count());
  for (EdgeIndex e = 0; e < colors.size(); ++e) {
    if (!sum.origin[e]) {
      colors[e] = bridge_color;
      continue;
    }
    const auto& src = sum.origin[e]->part == 0 ? left : right;
    colors[e] = src.coloring()[sum.origin[e]->edge];
  }
  return SpinNetwork(std::move(sum.graph), Coloring(std::move(colors)));
}

std::vector<SpinNetwork> excise_and_double(const Graph& g, const Coloring& c) {
  check_total(g, c);
  const auto bad = inadmissible_vertices(g, c);
  if (bad.empty()) return {SpinNetwork(g, c)};

  std::vector<SpinNetwork> out;
  for (const auto& piece : topology::excise_vertices(g, {bad.begin(), bad.end()})) {
    auto color_of = [&](EdgeIndex piece_edge) { return c[g.edge_index(piece.edge_id(piece_edge))]; };
    if (piece.open_end_count() == 0) {
      std::vector<Color> colors(piece.edge_count());
      for (EdgeIndex e = 0; e < colors.size(); ++e) colors[e] = color_of(e);
      out.emplace_back(piece, Coloring(std::move(colors)));
      continue;
    }
    auto doubled = topology::double_graph(piece);
    std::vector<Color> colors(doubled.graph.edge_count());
    for (EdgeIndex e = 0; e < colors.size(); ++e) colors[e] = color_of(doubled.source_edge[e]);
    out.emplace_back(std::move(doubled.graph), Coloring(std::move(colors)));
  }
  return out;
}

}  // namespace spinnet::coloring
