#pragma once

// Spin-network states as functions on SU(2)^E.
//
// Each vertex carries the intertwiner of its three incident colors, slots in
// incidence order. An oriented edge e pairs the slot at its head with the
// slot at its tail through eps_c * rho_c(t_e), eps applied on the head side.
// The resulting contraction f(t) is invariant under
//   t_e -> g_head * t_e * g_tail^-1.

#include <cstdint>
#include <string_view>
#include <vector>

#include "spinnet/coloring.hpp"
#include "spinnet/graph.hpp"
#include "spinnet/su2.hpp"

namespace spinnet::su2rep {

using topology::EdgeIndex;
using topology::Graph;
using topology::Orientation;
using topology::VertexIndex;

// Indexed by edge / vertex index of the underlying graph.
using EdgeAssignment = std::vector<GroupElement>;
using GaugeAssignment = std::vector<GroupElement>;

// "<edge-id> = w x y z" lines; quaternions within 1e-6 of unit norm are
// accepted and renormalized.
EdgeAssignment parse_assignment(std::string_view text, const Graph& g);
EdgeAssignment random_assignment(std::size_t edges, Rng& rng);
GaugeAssignment random_gauge(std::size_t vertices, Rng& rng);

struct SlotRef {
  VertexIndex vertex;
  std::size_t position;  // 0..2 within the vertex's incidence order
};

struct EdgePairing {
  SlotRef head;  // eps is applied here
  SlotRef tail;
  int color;
};

class NetworkTensor {
 public:
  NetworkTensor(const coloring::SpinNetwork& network, Orientation orientation);

  const Graph& graph() const noexcept { return graph_; }
  const coloring::Coloring& coloring() const noexcept { return coloring_; }
  const Orientation& orientation() const noexcept { return orientation_; }
  const std::vector<IntertwinerTensor>& vertex_tensors() const noexcept { return vertices_; }
  const std::vector<EdgePairing>& pairings() const noexcept { return pairings_; }
  // Vertex contraction order (breadth first per component).
  const std::vector<VertexIndex>& order() const noexcept { return order_; }

 private:
  Graph graph_;
  coloring::Coloring coloring_;
  Orientation orientation_;
  std::vector<IntertwinerTensor> vertices_;
  std::vector<EdgePairing> pairings_;
  std::vector<VertexIndex> order_;
};

NetworkTensor network_tensor(const coloring::SpinNetwork& network, const Orientation& o);

// f(t) for the network. Throws DomainError when `t` is not total.
Complex evaluate(const NetworkTensor& tensor, const EdgeAssignment& t);
Complex evaluate(const coloring::SpinNetwork& network, const Orientation& o,
                 const EdgeAssignment& t);

// t_e -> g_head * t_e * g_tail^-1.
EdgeAssignment gauge_act(const Graph& g, const Orientation& o, const GaugeAssignment& gauge,
                         const EdgeAssignment& t);

// Dimension of (x)_e V_{c_e}.
std::size_t representation_dimension(const coloring::Coloring& c);

// rho(x) = (x)_e rho_{c_e}(x_e), edge 0 most significant.
Eigen::MatrixXcd tensor_representation(const coloring::Coloring& c, const EdgeAssignment& x);

// The operator B with f(x) = Tr[B rho(x)].
Eigen::MatrixXcd network_endomorphism(const NetworkTensor& tensor);

// Monte Carlo runs split the sample range over `workers` streams; stream w
// is seeded from (seed, w) and results are combined in stream order, so a
// fixed (seed, workers) pair reproduces bit for bit.
struct SamplingPlan {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CoefficientEstimate {
  Eigen::MatrixXcd value;
  double standard_error;  // Frobenius norm of the per-entry standard errors
};

// (1 / dim V) * integral of f(x) rho^-1(x) over Haar measure, with rho the
// representation labeled by `probe`. For probe equal to the network's own
// coloring this is B / dim^2.
CoefficientEstimate peter_weyl_coefficient(const NetworkTensor& tensor,
                                           const coloring::Coloring& probe,
                                           const SamplingPlan& plan);

struct InnerProductEstimate {
  Complex value;
  double standard_error;
};

// Integral of f1 * conj(f2). Both networks must live on the same graph.
InnerProductEstimate state_inner_product(const NetworkTensor& first, const NetworkTensor& second,
                                         const SamplingPlan& plan);
InnerProductEstimate state_inner_product(const coloring::SpinNetwork& first,
                                         const coloring::SpinNetwork& second,
                                         const SamplingPlan& plan);

}  // namespace spinnet::su2rep
