#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

#include "spinnet/error.hpp"
#include "spinnet/graph.hpp"

namespace spinnet::topology {

namespace {

std::set<std::string> id_set(const std::vector<std::string>& ids) {
  return {ids.begin(), ids.end()};
}

// Reassembles a source-edge table aligned with the sorted edges of `g`.
std::vector<EdgeIndex> align_sources(const Graph& g,
                                     const std::map<std::string, EdgeIndex>& by_id) {
  std::vector<EdgeIndex> out(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) out[e] = by_id.at(g.edge_id(e));
  return out;
}

}  // namespace

Doubled double_graph(const Graph& g) {
  validate(g, Validation::trivalent);
  if (g.vertex_count() == 0) {
    throw DomainError("cannot double a graph without vertices");
  }
  if (g.open_end_count() == 0) {
    throw DomainError("cannot double a graph without open ends");
  }

  auto vertex_taken = id_set(g.vertex_ids());
  auto edge_taken = id_set(g.edge_ids());
  std::vector<std::string> mirror(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    mirror[v] = fresh_id("_gen_m_" + g.vertex_id(v), vertex_taken);
    vertex_taken.insert(mirror[v]);
  }

  std::vector<EdgeSpec> specs;
  std::map<std::string, EdgeIndex> source;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& ends = g.ends(e);
    if (!ends[0] && !ends[1]) {
      throw DomainError("edge '" + g.edge_id(e) + "' has no attached end");
    }
    if (ends[0] && ends[1]) {
      specs.push_back({g.edge_id(e), g.vertex_id(*ends[0]), g.vertex_id(*ends[1])});
      std::string m = fresh_id("_gen_m_" + g.edge_id(e), edge_taken);
      edge_taken.insert(m);
      specs.push_back({m, mirror[*ends[0]], mirror[*ends[1]]});
      source[g.edge_id(e)] = e;
      source[m] = e;
    } else {
      const VertexIndex v = ends[0] ? *ends[0] : *ends[1];
      EdgeSpec spec{g.edge_id(e), std::nullopt, std::nullopt};
      if (ends[0]) {
        spec.first = g.vertex_id(v);
        spec.second = mirror[v];
      } else {
        spec.first = mirror[v];
        spec.second = g.vertex_id(v);
      }
      specs.push_back(std::move(spec));
      source[g.edge_id(e)] = e;
    }
  }

  std::vector<std::string> vertices = g.vertex_ids();
  vertices.insert(vertices.end(), mirror.begin(), mirror.end());
  Graph doubled(std::move(vertices), std::move(specs), g.name());
  validate(doubled, Validation::closed_trivalent);
  auto sources = align_sources(doubled, source);
  return {std::move(doubled), std::move(sources)};
}

ConnectedSum connected_sum(const Graph& left, std::string_view left_edge,
                           const Graph& right, std::string_view right_edge) {
  validate(left, Validation::closed_trivalent);
  validate(right, Validation::closed_trivalent);
  const EdgeIndex le = left.edge_index(left_edge);
  const EdgeIndex re = right.edge_index(right_edge);

  auto vertex_taken = id_set(left.vertex_ids());
  auto edge_taken = id_set(left.edge_ids());
  std::vector<std::string> right_vertex(right.vertex_count());
  for (VertexIndex v = 0; v < right.vertex_count(); ++v) {
    const auto& id = right.vertex_id(v);
    right_vertex[v] = vertex_taken.contains(id) ? fresh_id("_gen_r_" + id, vertex_taken) : id;
    vertex_taken.insert(right_vertex[v]);
  }
  std::vector<std::string> right_edge_id(right.edge_count());
  for (EdgeIndex e = 0; e < right.edge_count(); ++e) {
    const auto& id = right.edge_id(e);
    right_edge_id[e] = edge_taken.contains(id) ? fresh_id("_gen_r_" + id, edge_taken) : id;
    edge_taken.insert(right_edge_id[e]);
  }

  ConnectedSum out;
  out.midpoints[0] = fresh_id("_gen_mid_" + left.edge_id(le), vertex_taken);
  vertex_taken.insert(out.midpoints[0]);
  out.midpoints[1] = fresh_id("_gen_mid_" + right_edge_id[re], vertex_taken);
  vertex_taken.insert(out.midpoints[1]);

  auto take_edge = [&](const std::string& base) {
    std::string id = fresh_id(base, edge_taken);
    edge_taken.insert(id);
    return id;
  };
  // Left halves first so their generated ids do not depend on the right
  // operand's split.
  out.halves[0] = take_edge("_gen_" + left.edge_id(le) + "_a");
  out.halves[1] = take_edge("_gen_" + left.edge_id(le) + "_b");
  out.halves[2] = take_edge("_gen_" + right_edge_id[re] + "_a");
  out.halves[3] = take_edge("_gen_" + right_edge_id[re] + "_b");
  out.bridge = take_edge("_gen_bridge");

  std::vector<std::string> vertices = left.vertex_ids();
  vertices.insert(vertices.end(), right_vertex.begin(), right_vertex.end());
  vertices.push_back(out.midpoints[0]);
  vertices.push_back(out.midpoints[1]);

  std::vector<EdgeSpec> specs;
  std::map<std::string, EdgeOrigin> origin;
  for (EdgeIndex e = 0; e < left.edge_count(); ++e) {
    const auto a = left.vertex_id(*left.ends(e)[0]);
    const auto b = left.vertex_id(*left.ends(e)[1]);
    if (e == le) {
      specs.push_back({out.halves[0], a, out.midpoints[0]});
      specs.push_back({out.halves[1], out.midpoints[0], b});
      origin[out.halves[0]] = {0, e};
      origin[out.halves[1]] = {0, e};
    } else {
      specs.push_back({left.edge_id(e), a, b});
      origin[left.edge_id(e)] = {0, e};
    }
  }
  for (EdgeIndex e = 0; e < right.edge_count(); ++e) {
    const auto a = right_vertex[*right.ends(e)[0]];
    const auto b = right_vertex[*right.ends(e)[1]];
    if (e == re) {
      specs.push_back({out.halves[2], a, out.midpoints[1]});
      specs.push_back({out.halves[3], out.midpoints[1], b});
      origin[out.halves[2]] = {1, e};
      origin[out.halves[3]] = {1, e};
    } else {
      specs.push_back({right_edge_id[e], a, b});
      origin[right_edge_id[e]] = {1, e};
    }
  }
  specs.push_back({out.bridge, out.midpoints[0], out.midpoints[1]});

  out.graph = Graph(std::move(vertices), std::move(specs));
  validate(out.graph, Validation::closed_trivalent);
  out.origin.resize(out.graph.edge_count());
  for (EdgeIndex e = 0; e < out.graph.edge_count(); ++e) {
    if (auto it = origin.find(out.graph.edge_id(e)); it != origin.end()) {
      out.origin[e] = it->second;
    }
  }
  return out;
}

TreeShape TreeShape::caterpillar(std::size_t leaves) {
  if (leaves < 3) throw DomainError("a trivalent tree needs at least 3 leaves");
  TreeShape t;
  t.leaves_ = leaves;
  t.nodes_.push_back({-1, -1, 0});
  int acc = 0;
  for (std::size_t leaf = 1; leaf + 1 < leaves; ++leaf) {
    t.nodes_.push_back({-1, -1, leaf});
    const int leaf_node = static_cast<int>(t.nodes_.size()) - 1;
    t.nodes_.push_back({acc, leaf_node, 0});
    acc = static_cast<int>(t.nodes_.size()) - 1;
  }
  return t;
}

TreeShape TreeShape::parse(std::string_view text) {
  TreeShape t;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t')) {
      ++pos;
    }
  };
  auto fail = [&](const std::string& what) {
    return ParseError(1, pos + 1, "tree shape: " + what);
  };
  std::function<int()> node = [&]() -> int {
    skip();
    if (pos >= text.size()) throw fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      const int l = node();
      const int r = node();
      skip();
      if (pos >= text.size() || text[pos] != ')') throw fail("expected ')'");
      ++pos;
      t.nodes_.push_back({l, r, 0});
      return static_cast<int>(t.nodes_.size()) - 1;
    }
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) throw fail("expected leaf index or '('");
    t.nodes_.push_back({-1, -1, std::stoul(std::string(text.substr(start, pos - start)))});
    return static_cast<int>(t.nodes_.size()) - 1;
  };
  node();
  skip();
  if (pos != text.size()) throw fail("trailing characters");

  std::vector<std::size_t> leaves;
  for (const auto& n : t.nodes_) {
    if (n.left < 0) leaves.push_back(n.leaf);
  }
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] != i) throw fail("leaves must be 0..n-2, each once");
  }
  if (leaves.size() < 2) throw fail("need at least two bracketed leaves");
  t.leaves_ = leaves.size() + 1;
  return t;
}

std::string TreeShape::to_string() const {
  std::function<std::string(int)> render = [&](int i) -> std::string {
    const auto& n = nodes_[static_cast<std::size_t>(i)];
    if (n.left < 0) return std::to_string(n.leaf);
    return "(" + render(n.left) + " " + render(n.right) + ")";
  };
  return render(static_cast<int>(nodes_.size()) - 1);
}

Reduction reduce_multivalent(const Graph& g, const std::map<std::string, TreeShape>& shapes) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) < 3) {
      throw DomainError("vertex '" + g.vertex_id(v) + "' has valence " +
                        std::to_string(g.valence(v)) + " < 3");
    }
  }
  for (const auto& [id, shape] : shapes) {
    const VertexIndex v = g.vertex_index(id);
    if (shape.leaf_count() != g.valence(v)) {
      throw DomainError("tree for vertex '" + id + "' has " +
                        std::to_string(shape.leaf_count()) + " leaves, valence is " +
                        std::to_string(g.valence(v)));
    }
  }

  auto specs = g.edge_specs();
  auto vertex_taken = id_set(g.vertex_ids());
  auto edge_taken = id_set(g.edge_ids());
  std::vector<std::string> vertices = g.vertex_ids();
  Reduction out;

  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t n = g.valence(v);
    if (n == 3) continue;
    const auto& vid = g.vertex_id(v);
    auto it = shapes.find(vid);
    const TreeShape shape = it != shapes.end() ? it->second : TreeShape::caterpillar(n);
    const auto& nodes = shape.nodes();
    const auto half_edges = g.incident(v);

    // Internal nodes get vertex ids; the root keeps the original id.
    std::vector<std::string> node_vertex(nodes.size());
    std::size_t counter = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].left < 0) continue;
      if (i + 1 == nodes.size()) {
        node_vertex[i] = vid;
      } else {
        node_vertex[i] = fresh_id("_gen_" + vid + "_t" + std::to_string(counter++), vertex_taken);
        vertex_taken.insert(node_vertex[i]);
        vertices.push_back(node_vertex[i]);
      }
    }
    auto attach_leaf = [&](std::size_t leaf, const std::string& at) {
      const auto& h = half_edges[leaf];
      (h.slot == 0 ? specs[h.edge].first : specs[h.edge].second) = at;
    };
    std::size_t internal = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].left < 0) continue;
      for (int child : {nodes[i].left, nodes[i].right}) {
        const auto& c = nodes[static_cast<std::size_t>(child)];
        if (c.left < 0) {
          attach_leaf(c.leaf, node_vertex[i]);
        } else {
          std::string id = fresh_id("_gen_" + vid + "_i" + std::to_string(internal++), edge_taken);
          edge_taken.insert(id);
          specs.push_back({id, node_vertex[static_cast<std::size_t>(child)], node_vertex[i]});
          out.internal_edges[id] = vid;
        }
      }
    }
    attach_leaf(n - 1, vid);
  }

  out.graph = Graph(std::move(vertices), std::move(specs), g.name());
  return out;
}

std::vector<Graph> excise_vertices(const Graph& g, const std::set<std::string>& bad) {
  std::vector<bool> removed(g.vertex_count(), false);
  for (const auto& id : bad) removed[g.vertex_index(id)] = true;

  std::vector<std::string> kept_vertices;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!removed[v]) kept_vertices.push_back(g.vertex_id(v));
  }
  std::vector<EdgeSpec> kept_edges;
  for (auto spec : g.edge_specs()) {
    if (spec.first && bad.contains(*spec.first)) spec.first.reset();
    if (spec.second && bad.contains(*spec.second)) spec.second.reset();
    if (spec.first || spec.second) kept_edges.push_back(std::move(spec));
  }
  const Graph rest(kept_vertices, kept_edges, g.name());

  std::vector<Graph> pieces;
  for (const auto& comp : connected_components(rest)) {
    std::set<std::string> members;
    for (auto v : comp) members.insert(rest.vertex_id(v));
    std::vector<EdgeSpec> edges;
    for (const auto& spec : kept_edges) {
      const auto& touch = spec.first ? *spec.first : *spec.second;
      if (members.contains(touch)) edges.push_back(spec);
    }
    pieces.emplace_back(std::vector<std::string>(members.begin(), members.end()),
                        std::move(edges), g.name());
  }
  return pieces;
}

Marking spanning_tree(const Graph& g) {
  validate(g, Validation::closed_trivalent);
  if (g.vertex_count() == 0) throw DomainError("spanning tree of an empty graph");
  if (!is_connected(g)) throw DomainError("spanning tree requires a connected graph");

  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<bool> in_tree(g.edge_count(), false);
  std::queue<VertexIndex> pending;
  pending.push(0);
  seen[0] = true;
  while (!pending.empty()) {
    const VertexIndex v = pending.front();
    pending.pop();
    for (const auto& h : g.incident(v)) {
      const VertexIndex w = *g.ends(h.edge)[1 - h.slot];
      if (seen[w]) continue;
      seen[w] = true;
      in_tree[h.edge] = true;
      pending.push(w);
    }
  }
  Marking m;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    (in_tree[e] ? m.tree : m.complement).push_back(e);
  }
  return m;
}

void validate_marking(const Graph& g, const Marking& m) {
  if (!is_connected(g) || g.vertex_count() == 0) {
    throw DomainError("marking requires a connected graph");
  }
  std::vector<int> role(g.edge_count(), 0);
  for (auto e : m.tree) {
    if (e >= g.edge_count() || role[e]++) throw DomainError("marking tree edge invalid or repeated");
  }
  for (auto e : m.complement) {
    if (e >= g.edge_count() || role[e]++) throw DomainError("marking complement edge invalid or repeated");
  }
  if (m.tree.size() + m.complement.size() != g.edge_count()) {
    throw DomainError("marking does not cover every edge");
  }
  if (m.tree.size() + 1 != g.vertex_count()) {
    throw DomainError("marking tree has the wrong size for a spanning tree");
  }
  std::vector<VertexIndex> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), VertexIndex{0});
  std::function<VertexIndex(VertexIndex)> root = [&](VertexIndex v) {
    return parent[v] == v ? v : parent[v] = root(parent[v]);
  };
  for (auto e : m.tree) {
    if (g.has_open_end(e)) throw DomainError("marking tree uses an open edge");
    const VertexIndex a = root(*g.ends(e)[0]);
    const VertexIndex b = root(*g.ends(e)[1]);
    if (a == b) throw DomainError("marking tree contains a cycle");
    parent[a] = b;
  }
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
      a.loop_count() != b.loop_count() || a.open_end_count() != b.open_end_count()) {
    return false;
  }
  const std::size_t n = a.vertex_count();
  struct Table {
    std::vector<std::vector<int>> mult;
    std::vector<int> stubs;
    int free_edges = 0;
  };
  auto table = [n](const Graph& g) {
    Table t{std::vector<std::vector<int>>(n, std::vector<int>(n, 0)), std::vector<int>(n, 0), 0};
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const auto& en = g.ends(e);
      if (en[0] && en[1]) {
        ++t.mult[*en[0]][*en[1]];
        if (*en[0] != *en[1]) ++t.mult[*en[1]][*en[0]];
      } else if (en[0] || en[1]) {
        ++t.stubs[en[0] ? *en[0] : *en[1]];
      } else {
        ++t.free_edges;
      }
    }
    return t;
  };
  const Table ta = table(a);
  const Table tb = table(b);
  if (ta.free_edges != tb.free_edges) return false;

  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || a.valence(i) != b.valence(j) || ta.stubs[i] != tb.stubs[j] ||
          ta.mult[i][i] != tb.mult[j][j]) {
        continue;
      }
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) ok = ta.mult[i][p] == tb.mult[j][image[p]];
      if (!ok) continue;
      used[j] = true;
      image[i] = j;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return extend(0);
}

}  // namespace spinnet::topology
