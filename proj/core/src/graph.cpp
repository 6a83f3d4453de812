#include "spinnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "spinnet/error.hpp"

namespace spinnet::topology {

namespace {

constexpr std::string_view kOpenKeyword = "OPEN";

void check_identifier(const std::string& id, const char* what) {
  if (id.empty()) {
    throw DomainError(std::string("empty ") + what + " id");
  }
  if (id == kOpenKeyword) {
    throw DomainError(std::string(what) + " id may not be OPEN");
  }
  if (std::any_of(id.begin(), id.end(), [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#';
      })) {
    throw DomainError(std::string(what) + " id '" + id +
                      "' contains whitespace or '#'");
  }
}

template <class Range>
std::optional<std::size_t> rank_of(const Range& sorted, std::string_view id) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), id,
                             [](const std::string& a, std::string_view b) {
                               return std::string_view(a) < b;
                             });
  if (it == sorted.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

Graph::Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
             std::string name)
    : name_(std::move(name)), vertex_ids_(std::move(vertices)) {
  for (const auto& v : vertex_ids_) check_identifier(v, "vertex");
  std::sort(vertex_ids_.begin(), vertex_ids_.end());
  if (auto dup = std::adjacent_find(vertex_ids_.begin(), vertex_ids_.end());
      dup != vertex_ids_.end()) {
    throw DomainError("duplicate vertex id '" + *dup + "'");
  }

  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    check_identifier(edges[i].id, "edge");
    if (i > 0 && edges[i].id == edges[i - 1].id) {
      throw DomainError("duplicate edge id '" + edges[i].id + "'");
    }
  }

  edge_ids_.reserve(edges.size());
  ends_.reserve(edges.size());
  for (const auto& spec : edges) {
    std::array<std::optional<VertexIndex>, 2> ends;
    const std::array<const std::optional<std::string>*, 2> named{&spec.first,
                                                                 &spec.second};
    for (int s = 0; s < 2; ++s) {
      if (!named[s]->has_value()) continue;
      auto idx = rank_of(vertex_ids_, **named[s]);
      if (!idx) {
        throw DomainError("edge '" + spec.id + "' references unknown vertex '" +
                          **named[s] + "'");
      }
      ends[s] = *idx;
    }
    edge_ids_.push_back(spec.id);
    ends_.push_back(ends);
  }

  std::vector<std::size_t> degree(vertex_ids_.size(), 0);
  for (const auto& e : ends_) {
    for (const auto& end : e) {
      if (end) ++degree[*end];
    }
  }
  offset_.assign(vertex_ids_.size() + 1, 0);
  for (std::size_t v = 0; v < degree.size(); ++v) {
    offset_[v + 1] = offset_[v] + degree[v];
  }
  incidence_.resize(offset_.back());
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  // Edges are visited in index order and slots in 0,1 order, so each
  // vertex's block comes out sorted.
  for (EdgeIndex e = 0; e < ends_.size(); ++e) {
    for (std::uint8_t s = 0; s < 2; ++s) {
      if (ends_[e][s]) incidence_[fill[*ends_[e][s]]++] = HalfEdge{e, s};
    }
  }
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  return rank_of(vertex_ids_, id);
}

std::optional<EdgeIndex> Graph::find_edge(std::string_view id) const {
  return rank_of(edge_ids_, id);
}

VertexIndex Graph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw DomainError("unknown vertex '" + std::string(id) + "'");
}

EdgeIndex Graph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw DomainError("unknown edge '" + std::string(id) + "'");
}

bool Graph::is_loop(EdgeIndex e) const {
  const auto& en = ends_.at(e);
  return en[0] && en[1] && *en[0] == *en[1];
}

bool Graph::has_open_end(EdgeIndex e) const {
  const auto& en = ends_.at(e);
  return !en[0] || !en[1];
}

std::span<const HalfEdge> Graph::incident(VertexIndex v) const {
  if (v >= vertex_ids_.size()) throw DomainError("vertex index out of range");
  return std::span<const HalfEdge>(incidence_.data() + offset_[v],
                                   offset_[v + 1] - offset_[v]);
}

std::size_t Graph::loop_count() const {
  std::size_t n = 0;
  for (EdgeIndex e = 0; e < ends_.size(); ++e) n += is_loop(e) ? 1 : 0;
  return n;
}

std::size_t Graph::open_end_count() const {
  std::size_t n = 0;
  for (const auto& en : ends_) n += (!en[0] ? 1 : 0) + (!en[1] ? 1 : 0);
  return n;
}

std::vector<Flag> Graph::flags() const {
  std::vector<Flag> out;
  for (EdgeIndex e = 0; e < ends_.size(); ++e) {
    const auto& en = ends_[e];
    if (en[0]) out.push_back({e, *en[0]});
    if (en[1] && !(en[0] && *en[0] == *en[1])) out.push_back({e, *en[1]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Graph::is_trivalent() const {
  for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
    if (valence(v) != 3) return false;
  }
  return true;
}

std::vector<EdgeSpec> Graph::edge_specs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edge_ids_.size());
  for (EdgeIndex e = 0; e < edge_ids_.size(); ++e) {
    EdgeSpec spec{edge_ids_[e], std::nullopt, std::nullopt};
    if (ends_[e][0]) spec.first = vertex_ids_[*ends_[e][0]];
    if (ends_[e][1]) spec.second = vertex_ids_[*ends_[e][1]];
    out.push_back(std::move(spec));
  }
  return out;
}

Graph Graph::renamed(std::string name) const {
  Graph copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

void validate(const Graph& g, Validation mode) {
  if (mode == Validation::multigraph) return;
  if (mode == Validation::closed_trivalent) {
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (g.has_open_end(e)) {
        throw DomainError("edge '" + g.edge_id(e) +
                          "' has an open end in a closed graph");
      }
    }
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) != 3) {
      throw DomainError("vertex '" + g.vertex_id(v) + "' has valence " +
                        std::to_string(g.valence(v)) + ", expected 3");
    }
  }
}

std::vector<std::vector<VertexIndex>> connected_components(const Graph& g) {
  std::vector<int> comp(g.vertex_count(), -1);
  std::vector<std::vector<VertexIndex>> out;
  for (VertexIndex start = 0; start < g.vertex_count(); ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<VertexIndex> pending;
    pending.push(start);
    comp[start] = id;
    while (!pending.empty()) {
      const VertexIndex v = pending.front();
      pending.pop();
      out.back().push_back(v);
      for (const auto& h : g.incident(v)) {
        const auto& other = g.ends(h.edge)[1 - h.slot];
        if (other && comp[*other] < 0) {
          comp[*other] = id;
          pending.push(*other);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool is_connected(const Graph& g) {
  return connected_components(g).size() <= 1;
}

int genus(const Graph& g) {
  validate(g, Validation::closed_trivalent);
  if (g.vertex_count() == 0) throw DomainError("genus of an empty graph");
  if (!is_connected(g)) {
    throw DomainError("genus requires a connected graph; use component_genera");
  }
  return static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
}

std::vector<int> component_genera(const Graph& g) {
  validate(g, Validation::closed_trivalent);
  const auto comps = connected_components(g);
  std::vector<int> which(g.vertex_count(), 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (auto v : comps[c]) which[v] = static_cast<int>(c);
  }
  std::vector<int> edges(comps.size(), 0);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) ++edges[which[*g.ends(e)[0]]];
  std::vector<int> out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out.push_back(edges[c] - static_cast<int>(comps[c].size()) + 1);
  }
  return out;
}

int betti_number(const Graph& g) {
  int attached = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    attached += g.has_open_end(e) ? 0 : 1;
  }
  return attached - static_cast<int>(g.vertex_count()) +
         static_cast<int>(connected_components(g).size());
}

Orientation::Orientation(std::vector<std::uint8_t> tail_slots)
    : tail_slots_(std::move(tail_slots)) {
  for (auto s : tail_slots_) {
    if (s > 1) throw DomainError("orientation slot must be 0 or 1");
  }
}

Orientation Orientation::as_written(const Graph& g) {
  return Orientation(std::vector<std::uint8_t>(g.edge_count(), 0));
}

Orientation Orientation::flipped(EdgeIndex e) const {
  Orientation copy = *this;
  copy.tail_slots_.at(e) ^= 1;
  return copy;
}

VertexIndex tail_vertex(const Graph& g, const Orientation& o, EdgeIndex e) {
  const auto& end = g.ends(e)[o.tail_slot(e)];
  if (!end) throw DomainError("edge '" + g.edge_id(e) + "' has an open tail");
  return *end;
}

VertexIndex head_vertex(const Graph& g, const Orientation& o, EdgeIndex e) {
  const auto& end = g.ends(e)[o.head_slot(e)];
  if (!end) throw DomainError("edge '" + g.edge_id(e) + "' has an open head");
  return *end;
}

bool has_in_and_out(const Graph& g, const Orientation& o) {
  if (o.size() != g.edge_count()) return false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    bool in = false;
    bool out = false;
    for (const auto& h : g.incident(v)) {
      if (h.slot == o.tail_slot(h.edge)) {
        out = true;
      } else {
        in = true;
      }
    }
    if (!(in && out)) return false;
  }
  return true;
}

Orientation find_orientation(const Graph& g) {
  validate(g, Validation::closed_trivalent);
  // Join every vertex to one extra node. All degrees become even (4 at the
  // original vertices, |V| at the extra node since 3|V| = 2|E|), so the
  // augmented graph splits into closed trails. Orienting along the trails
  // balances every vertex at 2 in / 2 out; dropping the extra edge leaves
  // 2/1 or 1/2 on the real ones.
  const std::size_t n = g.vertex_count();
  const std::size_t extra = n;
  struct AugEdge {
    std::size_t a, b;
    std::optional<EdgeIndex> real;
  };
  std::vector<AugEdge> aug;
  aug.reserve(g.edge_count() + n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    aug.push_back({*g.ends(e)[0], *g.ends(e)[1], e});
  }
  for (VertexIndex v = 0; v < n; ++v) aug.push_back({v, extra, std::nullopt});

  std::vector<std::vector<std::size_t>> adj(n + 1);
  for (std::size_t i = 0; i < aug.size(); ++i) {
    adj[aug[i].a].push_back(i);
    if (aug[i].b != aug[i].a) adj[aug[i].b].push_back(i);
  }

  std::vector<std::uint8_t> tail(g.edge_count(), 0);
  std::vector<bool> used(aug.size(), false);
  std::vector<std::size_t> cursor(n + 1, 0);
  for (std::size_t start = 0; start <= n; ++start) {
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      auto& c = cursor[u];
      while (c < adj[u].size() && used[adj[u][c]]) ++c;
      if (c == adj[u].size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t id = adj[u][c];
      used[id] = true;
      const std::size_t w = aug[id].a == u ? aug[id].b : aug[id].a;
      if (aug[id].real) {
        const EdgeIndex e = *aug[id].real;
        tail[e] = (*g.ends(e)[0] == u) ? 0 : 1;
      }
      stack.push_back(w);
    }
  }

  Orientation o(std::move(tail));
  if (!has_in_and_out(g, o)) {
    throw NumericError("orientation search produced an invalid orientation");
  }
  return o;
}

std::string fresh_id(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

}  // namespace spinnet::topology
