#pragma once

// Trivalent graphs with loops and open ends, plus the surgeries used to build
// and take them apart.
//
// Every edge owns two end slots. A slot is either attached to a vertex or
// OPEN. A loop attaches both slots to the same vertex, so it counts twice
// towards valence but only once as a flag (edge, vertex).
//
// Vertices and edges are kept sorted by their string id; the index of an
// element is its rank in that order, so index order is lexicographic id order.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinnet::topology {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Input description of one edge. An empty optional is an OPEN end.
struct EdgeSpec {
  std::string id;
  std::optional<std::string> first;
  std::optional<std::string> second;
};

struct HalfEdge {
  EdgeIndex edge;
  std::uint8_t slot;  // 0 or 1

  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

// An (edge, vertex) incidence pair. A loop yields a single flag.
struct Flag {
  EdgeIndex edge;
  VertexIndex vertex;

  friend auto operator<=>(const Flag&, const Flag&) = default;
};

class Graph {
 public:
  Graph() = default;

  // Throws DomainError on duplicate ids, on an edge end naming a vertex that
  // is not in `vertices`, or on ids that collide with the OPEN keyword.
  Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
        std::string name = {});

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_ids_.size(); }
  const std::string& name() const noexcept { return name_; }

  const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(EdgeIndex e) const { return edge_ids_.at(e); }
  const std::vector<std::string>& vertex_ids() const noexcept { return vertex_ids_; }
  const std::vector<std::string>& edge_ids() const noexcept { return edge_ids_; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Throwing lookups (DomainError when the id is unknown).
  VertexIndex vertex_index(std::string_view id) const;
  EdgeIndex edge_index(std::string_view id) const;

  const std::array<std::optional<VertexIndex>, 2>& ends(EdgeIndex e) const {
    return ends_.at(e);
  }
  bool is_loop(EdgeIndex e) const;
  bool has_open_end(EdgeIndex e) const;

  // Half-edges at v, sorted by (edge index, slot).
  std::span<const HalfEdge> incident(VertexIndex v) const;
  std::size_t valence(VertexIndex v) const { return incident(v).size(); }

  std::size_t loop_count() const;
  std::size_t open_end_count() const;
  std::vector<Flag> flags() const;
  std::size_t flag_count() const { return flags().size(); }

  bool is_closed() const { return open_end_count() == 0; }
  bool is_trivalent() const;
  bool is_closed_trivalent() const { return is_closed() && is_trivalent(); }

  std::vector<EdgeSpec> edge_specs() const;
  Graph renamed(std::string name) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::string name_;
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::array<std::optional<VertexIndex>, 2>> ends_;
  // incidence_[offset_[v] .. offset_[v+1]) are the half-edges at v.
  std::vector<HalfEdge> incidence_;
  std::vector<std::size_t> offset_;
};

enum class Validation {
  closed_trivalent,  // no open ends, every vertex valence 3
  trivalent,         // every vertex valence 3 counting open half-edges
  multigraph,        // anything the constructor accepts
};

// Throws DomainError describing the first violation.
void validate(const Graph& g, Validation mode);

// Line-oriented text format:
//   # comment
//   name <string>
//   vertex <id>
//   edge <id> <vertex|OPEN> <vertex|OPEN>
// When the text declares no vertex at all, vertices are inferred from the
// edge lines; otherwise every edge end must name a declared vertex.
Graph parse_graph(std::string_view text,
                  Validation mode = Validation::closed_trivalent);
std::string serialize_graph(const Graph& g);

// Vertex sets of the connected components, each sorted, ordered by their
// smallest vertex.
std::vector<std::vector<VertexIndex>> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// |E| - |V| + 1 of a connected closed trivalent graph.
int genus(const Graph& g);
// Genus of each component of a closed trivalent graph, same order as
// connected_components().
std::vector<int> component_genera(const Graph& g);
// First Betti number: fully attached edges - vertices + components.
int betti_number(const Graph& g);

class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::vector<std::uint8_t> tail_slots);
  // Every edge points from slot 0 to slot 1.
  static Orientation as_written(const Graph& g);

  std::size_t size() const noexcept { return tail_slots_.size(); }
  std::uint8_t tail_slot(EdgeIndex e) const { return tail_slots_.at(e); }
  std::uint8_t head_slot(EdgeIndex e) const { return 1 - tail_slots_.at(e); }
  Orientation flipped(EdgeIndex e) const;

  friend bool operator==(const Orientation&, const Orientation&) = default;

 private:
  std::vector<std::uint8_t> tail_slots_;
};

VertexIndex tail_vertex(const Graph& g, const Orientation& o, EdgeIndex e);
VertexIndex head_vertex(const Graph& g, const Orientation& o, EdgeIndex e);

// True iff every vertex has at least one incoming and one outgoing half-edge.
bool has_in_and_out(const Graph& g, const Orientation& o);

// Orientation with an incoming and an outgoing half-edge at every vertex of
// a closed trivalent graph.
Orientation find_orientation(const Graph& g);

struct Doubled {
  Graph graph;
  // For each edge of `graph`, the edge of the input it was copied from.
  std::vector<EdgeIndex> source_edge;
};

// Glues a graph with open ends to its mirror copy: every open end is fused
// with its mirror partner. Mirror ids are generated with the "_gen" prefix.
Doubled double_graph(const Graph& g);

struct EdgeOrigin {
  int part;  // 0 = left operand, 1 = right operand
  EdgeIndex edge;
};

struct ConnectedSum {
  Graph graph;
  std::string bridge;                // new edge joining the two midpoints
  std::array<std::string, 4> halves;  // left e1', e1'', right e2', e2''
  std::array<std::string, 2> midpoints;
  // Origin of every edge of `graph`; empty for the bridge.
  std::vector<std::optional<EdgeOrigin>> origin;
};

// Splits `left_edge` and `right_edge` at new midpoints and joins the
// midpoints by a new edge. Ids of the right operand that collide with the
// left one are replaced by generated ids.
ConnectedSum connected_sum(const Graph& left, std::string_view left_edge,
                           const Graph& right, std::string_view right_edge);

// Shape of an unrooted trivalent tree with n leaves, written as a nested
// binary bracketing of leaves 0..n-2; leaf n-1 hangs off the root.
// "((0 1) 2)" is the only 4-leaf shape up to relabeling.
class TreeShape {
 public:
  static TreeShape caterpillar(std::size_t leaves);
  static TreeShape parse(std::string_view text);

  std::size_t leaf_count() const noexcept { return leaves_; }
  std::string to_string() const;

  // Node list in post order. A node is either a leaf (left < 0, value in
  // `leaf`) or an internal node with two children indices.
  struct Node {
    int left = -1;
    int right = -1;
    std::size_t leaf = 0;
  };
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

 private:
  std::vector<Node> nodes_;
  std::size_t leaves_ = 0;
};

struct Reduction {
  Graph graph;
  // Generated internal edge id -> id of the vertex it was expanded from.
  std::map<std::string, std::string> internal_edges;
};

// Replaces every vertex of valence n > 3 by a trivalent tree with n leaves
// (caterpillar unless `shapes` names the vertex). Leaf i takes the i-th
// half-edge of the vertex in incidence order.
Reduction reduce_multivalent(const Graph& g,
                             const std::map<std::string, TreeShape>& shapes = {});

// Deletes the given vertices; their half-edges become OPEN. Edges left with
// no attached end are dropped. Returns the connected pieces.
std::vector<Graph> excise_vertices(const Graph& g,
                                   const std::set<std::string>& bad);

struct Marking {
  std::vector<EdgeIndex> tree;        // sorted
  std::vector<EdgeIndex> complement;  // sorted; size = genus

  std::size_t genus() const noexcept { return complement.size(); }
};

// Breadth-first spanning tree from the smallest vertex, scanning incident
// edges in id order.
Marking spanning_tree(const Graph& g);
// Throws DomainError unless `m` is a spanning tree of connected `g` with
// complement its remaining edges.
void validate_marking(const Graph& g, const Marking& m);

// Brute-force isomorphism test for small graphs (ids ignored, open ends
// matched as unlabeled stubs).
bool are_isomorphic(const Graph& a, const Graph& b);

// First id of the form base, base_1, base_2, ... not present in `taken`.
std::string fresh_id(const std::string& base, const std::set<std::string>& taken);

}  // namespace spinnet::topology
