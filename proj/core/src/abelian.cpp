#include "spinnet/abelian.hpp"

#include <cmath>
#include <numbers>
#include <queue>

#include "spinnet/error.hpp"
#include "spinnet/keyed_text.hpp"

namespace spinnet::abelian {

namespace {

long long reduce(long long x, long long k) { return k == 0 ? x : ((x % k) + k) % k; }

void check_total(const Graph& g, const Orientation& o, std::size_t labels) {
  if (labels != g.edge_count()) throw DomainError("abelian coloring is not total on the edges");
  if (o.size() != g.edge_count()) throw DomainError("orientation does not match the graph");
}

// +1 when v is the tail of e, -1 when it is the head, 0 for a loop.
int sign_at(const Graph& g, const Orientation& o, EdgeIndex e, VertexIndex v) {
  if (g.is_loop(e)) return 0;
  return topology::tail_vertex(g, o, e) == v ? 1 : -1;
}

// Fills the tree edges of `values` so that every vertex is conserved
// (mod `modulus`, or exactly when modulus is 0). Complement entries must
// already be set.
void solve_tree(const Graph& g, const Orientation& o, const topology::Marking& m,
                std::vector<long long>& values, long long modulus) {
  std::vector<bool> known(g.edge_count(), true);
  for (auto e : m.tree) known[e] = false;
  std::vector<int> unknown(g.vertex_count(), 0);
  for (auto e : m.tree) {
    ++unknown[*g.ends(e)[0]];
    ++unknown[*g.ends(e)[1]];
  }
  std::queue<VertexIndex> ready;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (unknown[v] == 1) ready.push(v);
  }
  while (!ready.empty()) {
    const VertexIndex v = ready.front();
    ready.pop();
    if (unknown[v] != 1) continue;
    EdgeIndex target = 0;
    long long rest = 0;
    for (const auto& h : g.incident(v)) {
      if (!known[h.edge]) {
        target = h.edge;
      } else if (!g.is_loop(h.edge)) {
        rest += (h.slot == o.tail_slot(h.edge) ? 1 : -1) * values[h.edge];
      }
    }
    values[target] = reduce(-sign_at(g, o, target, v) * rest, modulus);
    known[target] = true;
    for (int s = 0; s < 2; ++s) {
      const VertexIndex w = *g.ends(target)[s];
      if (--unknown[w] == 1) ready.push(w);
    }
  }
}

}  // namespace

AbelianColoring::AbelianColoring(std::vector<int> labels, int level)
    : labels_(std::move(labels)), level_(level) {
  if (level_ < 1) throw DomainError("abelian level must be >= 1");
  for (int j : labels_) {
    if (j < 0 || j >= level_) {
      throw DomainError("abelian label " + std::to_string(j) + " is outside [0, " +
                        std::to_string(level_ - 1) + "]");
    }
  }
}

AbelianColoring parse_abelian_coloring(std::string_view text, const Graph& g, int level) {
  auto lines = keyed_by_edge(parse_keyed_lines(text), g, 1);
  std::vector<int> labels;
  for (const auto& kl : lines) {
    const long long v = parse_integer(kl, 0);
    if (v < 0 || v >= level) {
      throw ParseError(kl.line, kl.value_column, "label for '" + kl.key + "' is outside [0, k-1]");
    }
    labels.push_back(static_cast<int>(v));
  }
  return AbelianColoring(std::move(labels), level);
}

long long signed_sum(const Graph& g, const Orientation& o, const std::vector<long long>& labels,
                     VertexIndex v) {
  long long s = 0;
  for (const auto& h : g.incident(v)) {
    s += (h.slot == o.tail_slot(h.edge) ? 1 : -1) * labels.at(h.edge);
  }
  return s;
}

bool abelian_is_admissible(const Graph& g, const Orientation& o, const AbelianColoring& c) {
  check_total(g, o, c.size());
  const std::vector<long long> labels(c.labels().begin(), c.labels().end());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (reduce(signed_sum(g, o, labels, v), c.level()) != 0) return false;
  }
  return true;
}

std::uint64_t abelian_for_each(const Graph& g, const Orientation& o, int k,
                               const std::function<void(const AbelianColoring&)>& visit) {
  topology::validate(g, topology::Validation::closed_trivalent);
  check_total(g, o, g.edge_count());
  if (k < 1) throw DomainError("abelian level must be >= 1");

  std::vector<std::vector<VertexIndex>> completes(g.edge_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    EdgeIndex last = 0;
    for (const auto& h : g.incident(v)) last = std::max(last, h.edge);
    completes[last].push_back(v);
  }
  std::vector<long long> labels(g.edge_count(), 0);
  std::uint64_t count = 0;
  std::function<void(EdgeIndex)> descend = [&](EdgeIndex e) {
    if (e == g.edge_count()) {
      ++count;
      if (visit) visit(AbelianColoring(std::vector<int>(labels.begin(), labels.end()), k));
      return;
    }
    for (int j = 0; j < k; ++j) {
      labels[e] = j;
      bool ok = true;
      for (auto v : completes[e]) ok = ok && reduce(signed_sum(g, o, labels, v), k) == 0;
      if (ok) descend(e + 1);
    }
    labels[e] = 0;
  };
  descend(0);
  return count;
}

AbelianEnumeration abelian_enumerate(const Graph& g, const Orientation& o, int k) {
  AbelianEnumeration out;
  out.count = abelian_for_each(g, o, k, [&](const AbelianColoring& c) { out.colorings.push_back(c); });
  return out;
}

int incidence_rank(const Graph& g, const Orientation& o) {
  const std::size_t rows = g.vertex_count();
  const std::size_t cols = g.edge_count();
  std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols, 0));
  for (EdgeIndex e = 0; e < cols; ++e) {
    if (g.has_open_end(e) || g.is_loop(e)) continue;
    a[topology::tail_vertex(g, o, e)][e] += 1;
    a[topology::head_vertex(g, o, e)][e] -= 1;
  }
  // Fraction-free (Bareiss) elimination keeps every entry an integer.
  int rank = 0;
  long long prev = 1;
  for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[static_cast<std::size_t>(rank)]);
    const auto r = static_cast<std::size_t>(rank);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++rank;
  }
  return rank;
}

int quotient_torus_dimension(const Graph& g) {
  const int expected = topology::genus(g);
  const int dim = static_cast<int>(g.edge_count()) - incidence_rank(g, Orientation::as_written(g));
  if (dim != expected) {
    throw NumericError("incidence rank gives dimension " + std::to_string(dim) + ", genus is " +
                       std::to_string(expected));
  }
  return dim;
}

PhasePoint::PhasePoint(std::vector<double> angles) : angles_(std::move(angles)) {
  const double two_pi = 2 * std::numbers::pi;
  for (double& a : angles_) {
    if (!std::isfinite(a)) throw DomainError("phase angle must be finite");
    a = std::fmod(a, two_pi);
    if (a < 0) a += two_pi;
    if (a >= two_pi) a = 0;
  }
}

PhasePoint parse_phase_point(std::string_view text, const Graph& g) {
  auto lines = keyed_by_edge(parse_keyed_lines(text), g, 1);
  std::vector<double> angles;
  for (const auto& kl : lines) angles.push_back(parse_real(kl, 0));
  return PhasePoint(std::move(angles));
}

PhasePoint random_phase_point(std::size_t edges, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::vector<double> out(edges);
  for (auto& a : out) a = angle(rng);
  return PhasePoint(std::move(out));
}

PhasePoint gauge_shift(const Graph& g, const Orientation& o, const std::vector<double>& phi,
                       const PhasePoint& p) {
  if (phi.size() != g.vertex_count()) throw DomainError("gauge phases are not total on the vertices");
  std::vector<double> out(p.angles());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    out[e] += phi[topology::head_vertex(g, o, e)] - phi[topology::tail_vertex(g, o, e)];
  }
  return PhasePoint(std::move(out));
}

std::vector<long long> integer_lift(const Graph& g, const Orientation& o, const topology::Marking& m,
                                    const AbelianColoring& c) {
  topology::validate_marking(g, m);
  if (!abelian_is_admissible(g, o, c)) throw DomainError("abelian coloring is not conserved mod k");
  std::vector<long long> values(g.edge_count(), 0);
  for (auto e : m.complement) values[e] = c[e];
  solve_tree(g, o, m, values, 0);
  return values;
}

std::complex<double> abelian_evaluate(const Graph& g, const Orientation& o, const AbelianColoring& c,
                                      const PhasePoint& p) {
  if (p.size() != g.edge_count()) throw DomainError("phase point is not total on the edges");
  const auto lift = integer_lift(g, o, topology::spanning_tree(g), c);
  double phase = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) phase += static_cast<double>(lift[e]) * p[e];
  return std::polar(1.0, phase);
}

std::vector<int> order_k_coordinates(const Graph& g, const Orientation& o, const AbelianColoring& c,
                                     const topology::Marking& m) {
  topology::validate_marking(g, m);
  if (!abelian_is_admissible(g, o, c)) throw DomainError("abelian coloring is not conserved mod k");
  std::vector<int> out;
  for (auto e : m.complement) out.push_back(c[e]);
  return out;
}

AbelianColoring reconstruct_from_coordinates(const Graph& g, const Orientation& o,
                                             const topology::Marking& m, const std::vector<int>& coords,
                                             int k) {
  topology::validate_marking(g, m);
  if (coords.size() != m.complement.size()) throw DomainError("need one coordinate per complement edge");
  std::vector<long long> values(g.edge_count(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= k) throw DomainError("coordinate outside Z_k");
    values[m.complement[i]] = coords[i];
  }
  solve_tree(g, o, m, values, k);
  AbelianColoring out(std::vector<int>(values.begin(), values.end()), k);
  if (!abelian_is_admissible(g, o, out)) throw NumericError("tree solve left a vertex unbalanced");
  return out;
}

}  // namespace spinnet::abelian
