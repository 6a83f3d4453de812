#include "spinnet/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinnet/error.hpp"
#include "spinnet/keyed_text.hpp"

namespace spinnet::moduli {

MomentPoint::MomentPoint(std::vector<double> coordinates) : coordinates_(std::move(coordinates)) {
  for (double c : coordinates_) {
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      throw DomainError("moment coordinate " + std::to_string(c) + " is outside [0,1]");
    }
  }
}

bool MomentPoint::is_zero() const {
  return std::all_of(coordinates_.begin(), coordinates_.end(), [](double c) { return c == 0.0; });
}

MomentPoint parse_moment_point(std::string_view text, const Graph& g) {
  auto lines = keyed_by_edge(parse_keyed_lines(text), g, 1);
  std::vector<double> coords;
  coords.reserve(lines.size());
  for (const auto& kl : lines) {
    const double v = parse_real(kl, 0);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ParseError(kl.line, kl.value_column, "coordinate for '" + kl.key + "' is outside [0,1]");
    }
    coords.push_back(v);
  }
  return MomentPoint(std::move(coords));
}

double moment_coordinate(const su2rep::GroupElement& u) {
  const double half_trace = std::clamp(u.trace() / 2.0, -1.0, 1.0);
  return std::acos(half_trace) / std::numbers::pi;
}

MomentPoint moment_point(const su2rep::EdgeAssignment& t) {
  std::vector<double> coords;
  coords.reserve(t.size());
  for (const auto& u : t) coords.push_back(moment_coordinate(u));
  return MomentPoint(std::move(coords));
}

namespace {

std::array<double, 3> triple(const Graph& g, const MomentPoint& p, VertexIndex v) {
  const auto half = g.incident(v);
  if (half.size() != 3) throw DomainError("vertex '" + g.vertex_id(v) + "' is not trivalent");
  return {p[half[0].edge], p[half[1].edge], p[half[2].edge]};
}

void check_size(const Graph& g, const MomentPoint& p) {
  if (p.size() != g.edge_count()) {
    throw DomainError("moment point has " + std::to_string(p.size()) + " coordinates for " +
                      std::to_string(g.edge_count()) + " edges");
  }
}

}  // namespace

bool polytope_contains(const Graph& g, const MomentPoint& p, double tolerance) {
  check_size(g, p);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto [a, b, c] = triple(g, p, v);
    if (std::abs(a - b) > c + tolerance || c > a + b + tolerance) return false;
    if (a + b + c > 2.0 + tolerance) return false;
  }
  return true;
}

std::vector<MomentPoint> bs_points(const Graph& g, int k) {
  if (k < 1) throw DomainError("Bohr-Sommerfeld points need level k >= 1");
  std::vector<MomentPoint> out;
  coloring::for_each_level_k(g, k, [&](const coloring::Coloring& c) {
    std::vector<double> coords;
    coords.reserve(c.size());
    for (auto v : c.values()) coords.push_back(static_cast<double>(v) / k);
    out.emplace_back(std::move(coords));
  });
  return out;
}

const char* to_string(EdgeStabilizer s) { return s == EdgeStabilizer::u1 ? "U1" : "SU2"; }

const char* to_string(VertexStabilizer s) {
  switch (s) {
    case VertexStabilizer::z2: return "Z2";
    case VertexStabilizer::su2: return "SU2";
    case VertexStabilizer::other: return "OTHER";
  }
  return "OTHER";
}

const char* to_string(FiberType t) {
  switch (t) {
    case FiberType::generic_torus: return "GENERIC_TORUS";
    case FiberType::schottky: return "SCHOTTKY";
    case FiberType::mixed: return "MIXED";
  }
  return "MIXED";
}

FiberDescriptor classify_fiber(const Graph& g, const MomentPoint& p, double tolerance) {
  topology::validate(g, topology::Validation::closed_trivalent);
  if (!polytope_contains(g, p, tolerance)) throw DomainError("point is outside the moment polytope");

  auto interior = [tolerance](double c) { return c > tolerance && c < 1.0 - tolerance; };
  FiberDescriptor out{p, {}, {}, 0, 0, FiberType::mixed};
  int edge_dim = 0;
  bool all_u1 = true;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const bool u1 = interior(p[e]);
    out.edges.push_back(u1 ? EdgeStabilizer::u1 : EdgeStabilizer::su2);
    edge_dim += u1 ? 1 : 3;
    all_u1 = all_u1 && u1;
  }
  int resolved_vertex_dim = 0;
  int other = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto [a, b, c] = triple(g, p, v);
    const bool generic = interior(a) && interior(b) && interior(c) &&
                         std::abs(a - b) < c - tolerance && c < a + b - tolerance &&
                         a + b + c < 2.0 - tolerance;
    const bool zero = a <= tolerance && b <= tolerance && c <= tolerance;
    if (generic) {
      out.vertices.push_back(VertexStabilizer::z2);
    } else if (zero) {
      out.vertices.push_back(VertexStabilizer::su2);
      resolved_vertex_dim += 3;
    } else {
      out.vertices.push_back(VertexStabilizer::other);
      ++other;
    }
  }
  out.dimension_upper = edge_dim - resolved_vertex_dim;
  out.dimension_lower = std::max(0, edge_dim - resolved_vertex_dim - 3 * other);
  const bool zero_point = std::all_of(p.coordinates().begin(), p.coordinates().end(),
                                      [tolerance](double c) { return c <= tolerance; });
  if (zero_point) {
    out.type = FiberType::schottky;
  } else if (all_u1) {
    out.type = FiberType::generic_torus;
  }
  return out;
}

SchottkyPoint random_schottky_point(std::size_t genus, su2rep::Rng& rng) {
  SchottkyPoint s;
  for (std::size_t i = 0; i < genus; ++i) s.handles.push_back(su2rep::haar_sample(rng));
  return s;
}

SchottkyPoint parse_schottky_point(std::string_view text, const Graph& g, const topology::Marking& m) {
  const auto lines = parse_keyed_lines(text);
  std::vector<std::optional<su2rep::GroupElement>> handles(m.complement.size());
  for (const auto& kl : lines) {
    const auto e = g.find_edge(kl.key);
    auto it = e ? std::find(m.complement.begin(), m.complement.end(), *e) : m.complement.end();
    if (it == m.complement.end()) {
      throw ParseError(kl.line, 1, "'" + kl.key + "' is not a complement edge of the marking");
    }
    if (kl.values.size() != 4) throw ParseError(kl.line, kl.value_column, "expected w x y z");
    handles[static_cast<std::size_t>(it - m.complement.begin())] =
        su2rep::GroupElement(parse_real(kl, 0), parse_real(kl, 1), parse_real(kl, 2), parse_real(kl, 3));
  }
  SchottkyPoint s;
  for (std::size_t i = 0; i < handles.size(); ++i) {
    if (!handles[i]) throw DomainError("no handle given for edge '" + g.edge_id(m.complement[i]) + "'");
    s.handles.push_back(*handles[i]);
  }
  return s;
}

SchottkyPoint conjugated(const SchottkyPoint& s, const su2rep::GroupElement& h) {
  SchottkyPoint out;
  for (const auto& b : s.handles) out.handles.push_back(h * b * h.inverse());
  return out;
}

su2rep::EdgeAssignment schottky_embed(const Graph& g, const topology::Marking& m, const SchottkyPoint& s) {
  topology::validate_marking(g, m);
  if (s.handles.size() != m.complement.size()) {
    throw DomainError("Schottky point has " + std::to_string(s.handles.size()) + " handles, genus is " +
                      std::to_string(m.complement.size()));
  }
  su2rep::EdgeAssignment t(g.edge_count(), su2rep::GroupElement::identity());
  for (std::size_t i = 0; i < m.complement.size(); ++i) t[m.complement[i]] = s.handles[i];
  return t;
}

su2rep::Complex evaluate_schottky(const coloring::SpinNetwork& n, const topology::Marking& m,
                                  const SchottkyPoint& s, const std::optional<topology::Orientation>& o) {
  const auto orientation = o ? *o : topology::find_orientation(n.graph());
  return su2rep::evaluate(n, orientation, schottky_embed(n.graph(), m, s));
}

}  // namespace spinnet::moduli
