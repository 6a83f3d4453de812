#pragma once

// Edge colorings (color = twice the spin), Clebsch-Gordan admissibility,
// level-k enumeration and the Verlinde count.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinnet/graph.hpp"

namespace spinnet::coloring {

using topology::EdgeIndex;
using topology::Graph;
using topology::VertexIndex;

using Color = int;

// Colors indexed by edge index of the graph they were built for.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::vector<Color> colors);

  std::size_t size() const noexcept { return colors_.size(); }
  Color operator[](EdgeIndex e) const { return colors_.at(e); }
  const std::vector<Color>& values() const noexcept { return colors_; }
  Color max() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring&, const Coloring&) = default;

 private:
  std::vector<Color> colors_;
};

// Throws DomainError unless `c` has exactly one nonnegative color per edge.
void check_total(const Graph& g, const Coloring& c);

// Text format: one "<edge-id> = <integer>" per line, '#' comments.
Coloring parse_coloring(std::string_view text, const Graph& g);
std::string serialize_coloring(const Graph& g, const Coloring& c);

// Colors of the three half-edges at v, in incidence order. A loop shows up
// twice.
using VertexTriple = std::array<Color, 3>;
VertexTriple vertex_triple(const Graph& g, const Coloring& c, VertexIndex v);
VertexTriple vertex_triple(const Graph& g, const Coloring& c, std::string_view vertex);

// Even sum and triangle inequalities.
bool triple_admissible(const VertexTriple& t);
// Every color <= k and sum <= 2k.
bool triple_level_k(const VertexTriple& t, int k);

bool is_admissible(const Graph& g, const Coloring& c);
bool is_level_k(const Graph& g, const Coloring& c, int k);
// Vertices failing triple_admissible, by id.
std::vector<std::string> inadmissible_vertices(const Graph& g, const Coloring& c);

class SpinNetwork {
 public:
  // Throws DomainError if `c` is not total, not admissible, or violates the
  // given level.
  SpinNetwork(Graph graph, Coloring c, std::optional<int> level = std::nullopt);

  const Graph& graph() const noexcept { return graph_; }
  const Coloring& coloring() const noexcept { return coloring_; }
  std::optional<int> level() const noexcept { return level_; }

 private:
  Graph graph_;
  Coloring coloring_;
  std::optional<int> level_;
};

// Visits every admissible level-k coloring of a closed trivalent graph.
// Edges are assigned in index order, colors ascending, and a branch is cut
// as soon as a vertex with all three colors set fails. Returns the count.
std::uint64_t for_each_level_k(const Graph& g, int k,
                               const std::function<void(const Coloring&)>& visit);

struct Enumeration {
  std::vector<Coloring> colorings;
  std::uint64_t count = 0;
};
Enumeration enumerate_level_k(const Graph& g, int k);
std::uint64_t count_level_k(const Graph& g, int k);

struct VerlindeValue {
  double value;
  std::int64_t integer;
};
// ((k+2)/2)^(g-1) * sum_{n=1}^{k+1} sin(n pi / (k+2))^(2-2g).
// Throws NumericError if the sum is not within 1e-6 of an integer.
VerlindeValue verlinde_number(int genus, int k);

struct GenusCount {
  std::string graph;
  std::uint64_t count;
};
struct GenusTable {
  int genus;
  int level;
  std::vector<GenusCount> rows;
  bool all_equal;
};
// Level-k counts for each corpus graph; every graph must have the genus.
GenusTable count_all_genus(int genus, int k, const std::vector<Graph>& corpus);

// Connected sum of two networks; the split halves keep the parent color and
// the new bridge gets `bridge_color`.
SpinNetwork colored_connected_sum(const SpinNetwork& left, std::string_view left_edge,
                                  const SpinNetwork& right, std::string_view right_edge,
                                  Color bridge_color);

// Removes the inadmissible vertices and doubles every open piece. Closed
// pieces come back as they are.
std::vector<SpinNetwork> excise_and_double(const Graph& g, const Coloring& c);

}  // namespace spinnet::coloring
