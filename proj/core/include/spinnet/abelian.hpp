#pragma once

// U(1) spin networks: Z_k edge labels conserved at every vertex with
// orientation signs, i.e. Z_k-valued cycles, and their character states on
// U(1)^E.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string_view>
#include <vector>

#include "spinnet/graph.hpp"

namespace spinnet::abelian {

using topology::EdgeIndex;
using topology::Graph;
using topology::Orientation;
using topology::VertexIndex;

// Labels in [0, k-1] indexed by edge.
class AbelianColoring {
 public:
  AbelianColoring(std::vector<int> labels, int level);

  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return labels_.size(); }
  int operator[](EdgeIndex e) const { return labels_.at(e); }
  const std::vector<int>& labels() const noexcept { return labels_; }

  friend bool operator==(const AbelianColoring&, const AbelianColoring&) = default;
  friend auto operator<=>(const AbelianColoring&, const AbelianColoring&) = default;

 private:
  std::vector<int> labels_;
  int level_;
};

// "<edge-id> = <integer>" lines; labels must lie in [0, k-1].
AbelianColoring parse_abelian_coloring(std::string_view text, const Graph& g, int level);

// Outgoing labels minus incoming labels at v (a loop adds and subtracts).
long long signed_sum(const Graph& g, const Orientation& o, const std::vector<long long>& labels,
                     VertexIndex v);

// Signed sum is 0 mod k at every vertex.
bool abelian_is_admissible(const Graph& g, const Orientation& o, const AbelianColoring& c);

// Visits every admissible coloring (edges in index order, labels ascending,
// cut as soon as a completed vertex fails). Returns the count.
std::uint64_t abelian_for_each(const Graph& g, const Orientation& o, int k,
                               const std::function<void(const AbelianColoring&)>& visit);

struct AbelianEnumeration {
  std::vector<AbelianColoring> colorings;
  std::uint64_t count = 0;
};
AbelianEnumeration abelian_enumerate(const Graph& g, const Orientation& o, int k);

// Rank over Q of the signed vertex-edge incidence matrix.
int incidence_rank(const Graph& g, const Orientation& o);
// |E| - rank of the incidence map; equals the genus of a connected graph.
int quotient_torus_dimension(const Graph& g);

// Angles indexed by edge, reduced to [0, 2 pi).
class PhasePoint {
 public:
  PhasePoint() = default;
  explicit PhasePoint(std::vector<double> angles);

  std::size_t size() const noexcept { return angles_.size(); }
  double operator[](EdgeIndex e) const { return angles_.at(e); }
  const std::vector<double>& angles() const noexcept { return angles_; }

 private:
  std::vector<double> angles_;
};

PhasePoint parse_phase_point(std::string_view text, const Graph& g);
PhasePoint random_phase_point(std::size_t edges, std::mt19937_64& rng);
// theta_e -> theta_e + phi_head - phi_tail.
PhasePoint gauge_shift(const Graph& g, const Orientation& o, const std::vector<double>& phi,
                       const PhasePoint& p);

// Integer cycle (exact conservation at every vertex) congruent to `c` mod k,
// equal to `c` on the complement edges of `m`.
std::vector<long long> integer_lift(const Graph& g, const Orientation& o, const topology::Marking& m,
                                    const AbelianColoring& c);

// prod_e exp(i n_e theta_e) for the integer lift n of `c` along the
// canonical spanning tree.
std::complex<double> abelian_evaluate(const Graph& g, const Orientation& o, const AbelianColoring& c,
                                      const PhasePoint& p);

// Labels on the complement edges of `m`, in marking order.
std::vector<int> order_k_coordinates(const Graph& g, const Orientation& o, const AbelianColoring& c,
                                     const topology::Marking& m);
// Inverse of order_k_coordinates: tree labels solved by conservation mod k.
AbelianColoring reconstruct_from_coordinates(const Graph& g, const Orientation& o,
                                             const topology::Marking& m, const std::vector<int>& coords,
                                             int k);

}  // namespace spinnet::abelian
