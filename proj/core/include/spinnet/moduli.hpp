#pragma once

// Moment-map coordinates, the moment polytope of a trivalent graph, its
// Bohr-Sommerfeld points, fiber classification, and the Schottky chart
// SU(2)^g / Ad = SU(2)^E / SU(2)^V given by a spanning tree.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinnet/coloring.hpp"
#include "spinnet/graph.hpp"
#include "spinnet/network.hpp"
#include "spinnet/su2.hpp"

namespace spinnet::moduli {

using topology::EdgeIndex;
using topology::Graph;
using topology::VertexIndex;

// Coordinates in [0,1], indexed by edge.
class MomentPoint {
 public:
  MomentPoint() = default;
  // Throws DomainError for a coordinate outside [0,1] or not finite.
  explicit MomentPoint(std::vector<double> coordinates);

  std::size_t size() const noexcept { return coordinates_.size(); }
  double operator[](EdgeIndex e) const { return coordinates_.at(e); }
  const std::vector<double>& coordinates() const noexcept { return coordinates_; }
  bool is_zero() const;

  friend bool operator==(const MomentPoint&, const MomentPoint&) = default;

 private:
  std::vector<double> coordinates_;
};

// "<edge-id> = <real>" lines.
MomentPoint parse_moment_point(std::string_view text, const Graph& g);

// (1/pi) arccos(Tr(u) / 2).
double moment_coordinate(const su2rep::GroupElement& u);
MomentPoint moment_point(const su2rep::EdgeAssignment& t);

// At every vertex: |c1 - c2| <= c3 <= c1 + c2 and c1 + c2 + c3 <= 2.
bool polytope_contains(const Graph& g, const MomentPoint& p, double tolerance = 1e-12);

// colors / k for every admissible level-k coloring, in enumeration order.
std::vector<MomentPoint> bs_points(const Graph& g, int k);

enum class EdgeStabilizer { u1, su2 };
enum class VertexStabilizer { z2, su2, other };
enum class FiberType { generic_torus, schottky, mixed };

const char* to_string(EdgeStabilizer s);
const char* to_string(VertexStabilizer s);
const char* to_string(FiberType t);

struct FiberDescriptor {
  MomentPoint point;
  std::vector<EdgeStabilizer> edges;
  std::vector<VertexStabilizer> vertices;
  // sum_e dim Z_e - sum_v dim Z_v; an `other` vertex contributes anything
  // in [0, 3], making the dimension an interval.
  int dimension_lower;
  int dimension_upper;
  FiberType type;

  bool resolved() const noexcept { return dimension_lower == dimension_upper; }
};

// Throws DomainError when the point is outside the polytope.
FiberDescriptor classify_fiber(const Graph& g, const MomentPoint& p, double tolerance = 1e-12);

// Handles b_1..b_g for the complement edges of a marking, in order.
struct SchottkyPoint {
  std::vector<su2rep::GroupElement> handles;
};

SchottkyPoint random_schottky_point(std::size_t genus, su2rep::Rng& rng);
// "<edge-id> = w x y z" lines, one per complement edge.
SchottkyPoint parse_schottky_point(std::string_view text, const Graph& g,
                                   const topology::Marking& m);
SchottkyPoint conjugated(const SchottkyPoint& s, const su2rep::GroupElement& h);

// Tree edges -> identity, i-th complement edge -> b_i.
su2rep::EdgeAssignment schottky_embed(const Graph& g, const topology::Marking& m,
                                      const SchottkyPoint& s);

// f of the network at schottky_embed(m, s), using `o` or, when absent,
// find_orientation of the graph.
su2rep::Complex evaluate_schottky(const coloring::SpinNetwork& n, const topology::Marking& m,
                                  const SchottkyPoint& s,
                                  const std::optional<topology::Orientation>& o = std::nullopt);

}  // namespace spinnet::moduli
