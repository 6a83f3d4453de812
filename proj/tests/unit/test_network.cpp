#include <doctest.h>

#include <cmath>

#include "spinnet/coloring.hpp"
#include "spinnet/error.hpp"
#include "spinnet/network.hpp"
#include "support.hpp"

using namespace spinnet;
using namespace spinnet::su2rep;
using coloring::Coloring;
using coloring::SpinNetwork;
using topology::Graph;
using topology::Orientation;

namespace {

SpinNetwork theta_network(std::vector<int> colors) {
  return SpinNetwork(testing::theta(), Coloring(std::move(colors)));
}

// Sums the full product of vertex tensors and edge matrices over every
// index assignment of every slot. Only feasible for tiny networks, and
// shares nothing with the labeled contraction except the intertwiners.
Complex brute_force_evaluate(const SpinNetwork& n, const Orientation& o, const EdgeAssignment& t) {
  const Graph& g = n.graph();
  const std::size_t edges = g.edge_count();
  std::vector<Eigen::MatrixXcd> edge_matrix(edges);
  std::vector<std::size_t> dim(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const int c = n.coloring()[e];
    edge_matrix[e] = epsilon_tensor(c).cast<Complex>() * irrep_matrix(c, t[e]);
    dim[e] = static_cast<std::size_t>(c + 1);
  }
  // idx[2e] is the head index of e, idx[2e + 1] the tail index.
  std::vector<std::size_t> idx(2 * edges, 0);
  Complex total = 0;
  for (;;) {
    Complex term = 1;
    for (std::size_t e = 0; e < edges; ++e) term *= edge_matrix[e](idx[2 * e], idx[2 * e + 1]);
    for (std::size_t v = 0; v < g.vertex_count() && term != Complex(0); ++v) {
      const auto half = g.incident(v);
      const auto triple = coloring::vertex_triple(g, n.coloring(), v);
      const IntertwinerTensor it = intertwiner(triple[0], triple[1], triple[2]);
      std::array<std::size_t, 3> at{};
      for (std::size_t p = 0; p < 3; ++p) {
        const auto e = half[p].edge;
        at[p] = idx[2 * e + (half[p].slot == o.head_slot(e) ? 0 : 1)];
      }
      term *= it(at[0], at[1], at[2]);
    }
    total += term;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == dim[i / 2]) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return total;
}

std::vector<SpinNetwork> small_networks(int max_color) {
  std::vector<SpinNetwork> out;
  for (const char* name : testing::kCorpus) {
    const Graph g = testing::corpus_graph(name);
    const std::size_t e = g.edge_count();
    std::vector<int> c(e, 0);
    for (;;) {
      const Coloring col(c);
      if (coloring::is_admissible(g, col)) out.emplace_back(g, col);
      std::size_t i = 0;
      while (i < e && c[i] == max_color) c[i++] = 0;
      if (i == e) break;
      ++c[i];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("network tensor structure") {
  const Graph theta = testing::theta();
  const auto o = topology::find_orientation(theta);
  SUBCASE("zero colors") {
    const NetworkTensor nt(theta_network({0, 0, 0}), o);
    for (const auto& t : nt.vertex_tensors()) {
      REQUIRE(t.data().size() == 1);
      CHECK(t.data()[0] == doctest::Approx(1.0));
    }
    Rng rng(1);
    CHECK(std::abs(evaluate(nt, random_assignment(3, rng)) - Complex(1, 0)) < 1e-14);
  }
  SUBCASE("theta (1,1,0) pairs two vertices") {
    const NetworkTensor nt(theta_network({1, 1, 0}), o);
    CHECK(nt.vertex_tensors().size() == 2);
    for (const auto& p : nt.pairings()) CHECK(p.head.vertex != p.tail.vertex);
    CHECK(nt.pairings()[0].color == 1);
    CHECK(nt.pairings()[2].color == 0);
  }
  SUBCASE("dumbbell loop pairs two slots of one vertex") {
    const Graph d = testing::dumbbell();
    const NetworkTensor nt(SpinNetwork(d, Coloring({0, 2, 2})), topology::find_orientation(d));
    const auto& loop = nt.pairings()[d.edge_index("loop1")];
    CHECK(loop.head.vertex == loop.tail.vertex);
    CHECK(loop.head.position != loop.tail.position);
    const auto& bridge = nt.pairings()[d.edge_index("bridge")];
    CHECK(bridge.head.vertex != bridge.tail.vertex);
  }
  SUBCASE("orientation mismatch") {
    CHECK_THROWS_AS(NetworkTensor(theta_network({1, 1, 0}), Orientation({0, 0})), DomainError);
    CHECK_THROWS_AS(evaluate(NetworkTensor(theta_network({1, 1, 0}), o), EdgeAssignment(2)), DomainError);
  }
}

TEST_CASE("evaluation agrees with the brute-force contraction") {
  Rng rng(99);
  for (const auto& n : small_networks(2)) {
    const auto o = topology::find_orientation(n.graph());
    if (n.graph().edge_count() > 3 && n.coloring().max() > 1) continue;
    const NetworkTensor nt(n, o);
    const EdgeAssignment id(n.graph().edge_count(), GroupElement::identity());
    CHECK(std::abs(evaluate(nt, id) - brute_force_evaluate(n, o, id)) < 1e-12);
    const auto t = random_assignment(n.graph().edge_count(), rng);
    CHECK(std::abs(evaluate(nt, t) - brute_force_evaluate(n, o, t)) < 1e-12);
  }
  // theta(1,1,0) at the identity: two epsilon pairings of unit intertwiners.
  const auto o = topology::find_orientation(testing::theta());
  const Complex at_identity = evaluate(theta_network({1, 1, 0}), o, EdgeAssignment(3));
  CHECK(std::abs(at_identity.imag()) < 1e-15);
  CHECK(std::abs(at_identity.real()) == doctest::Approx(1.0));
}

TEST_CASE("gauge action") {
  const Graph theta = testing::theta();
  const auto o = topology::find_orientation(theta);
  Rng rng(17);
  const auto t = random_assignment(3, rng);
  SUBCASE("identity and central gauge") {
    const auto same = gauge_act(theta, o, GaugeAssignment(2), t);
    const auto central = gauge_act(theta, o, GaugeAssignment(2, GroupElement::minus_identity()), t);
    for (std::size_t e = 0; e < 3; ++e) {
      CHECK(distance(same[e], t[e]) < 1e-15);
      CHECK(distance(central[e], t[e]) < 1e-15);
    }
  }
  SUBCASE("composition") {
    for (const char* name : testing::kCorpus) {
      const Graph g = testing::corpus_graph(name);
      const auto og = topology::find_orientation(g);
      for (int trial = 0; trial < 10; ++trial) {
        const auto g1 = random_gauge(g.vertex_count(), rng);
        const auto g2 = random_gauge(g.vertex_count(), rng);
        GaugeAssignment g12;
        for (std::size_t v = 0; v < g1.size(); ++v) g12.push_back(g1[v] * g2[v]);
        const auto x = random_assignment(g.edge_count(), rng);
        const auto lhs = gauge_act(g, og, g12, x);
        const auto rhs = gauge_act(g, og, g1, gauge_act(g, og, g2, x));
        for (std::size_t e = 0; e < x.size(); ++e) CHECK(distance(lhs[e], rhs[e]) < 1e-12);
      }
    }
  }
  SUBCASE("evaluation is gauge invariant") {
    for (const auto& n : small_networks(2)) {
      const auto on = topology::find_orientation(n.graph());
      const NetworkTensor nt(n, on);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_assignment(n.graph().edge_count(), rng);
        const auto gauge = random_gauge(n.graph().vertex_count(), rng);
        CHECK(std::abs(evaluate(nt, x) - evaluate(nt, gauge_act(n.graph(), on, gauge, x))) < 1e-9);
      }
    }
  }
}

TEST_CASE("reversing an edge inverts its holonomy up to sign") {
  Rng rng(23);
  for (const auto& n : small_networks(2)) {
    const Graph& g = n.graph();
    const auto o = topology::find_orientation(g);
    const auto x = random_assignment(g.edge_count(), rng);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto inverted = x;
      inverted[e] = x[e].inverse();
      const double sign = n.coloring()[e] % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(evaluate(n, o.flipped(e), x) - sign * evaluate(n, o, inverted)) < 1e-12);
    }
    // On all-identity input the magnitude does not see the orientation.
    const EdgeAssignment id(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      CHECK(std::abs(std::abs(evaluate(n, o.flipped(e), id)) - std::abs(evaluate(n, o, id))) < 1e-12);
    }
  }
}

TEST_CASE("network endomorphism") {
  Rng rng(31);
  for (const auto& n : small_networks(2)) {
    if (coloring::Coloring(n.coloring()).max() > 1 && n.graph().edge_count() > 3) continue;
    const auto o = topology::find_orientation(n.graph());
    const NetworkTensor nt(n, o);
    const Eigen::MatrixXcd b = network_endomorphism(nt);
    CHECK(b.rows() == static_cast<Eigen::Index>(representation_dimension(n.coloring())));
    CHECK(b.norm() == doctest::Approx(1.0));
    for (int trial = 0; trial < 3; ++trial) {
      const auto x = random_assignment(n.graph().edge_count(), rng);
      const Complex trace = (b * tensor_representation(n.coloring(), x)).trace();
      CHECK(std::abs(trace - evaluate(nt, x)) < 1e-12);
    }
  }
}

TEST_CASE("Peter-Weyl coefficients") {
  const auto o = topology::find_orientation(testing::theta());
  const NetworkTensor nt(theta_network({1, 1, 0}), o);
  const Eigen::MatrixXcd b = network_endomorphism(nt);
  const SamplingPlan plan{20000, 5, 2};
  const double bound = 5 / std::sqrt(double(plan.samples));
  SUBCASE("own coloring gives B / dim^2") {
    // dim = 2 * 2 * 1.
    const auto est = peter_weyl_coefficient(nt, Coloring({1, 1, 0}), plan);
    CHECK((est.value - b / 16.0).norm() < bound);
    CHECK(est.standard_error > 0);
    CHECK(est.standard_error < bound);
  }
  SUBCASE("other colorings give zero") {
    CHECK(peter_weyl_coefficient(nt, Coloring({0, 1, 1}), plan).value.norm() < bound);
    CHECK(peter_weyl_coefficient(nt, Coloring({2, 1, 1}), plan).value.norm() < bound);
    const NetworkTensor one(theta_network({0, 0, 0}), o);
    CHECK(peter_weyl_coefficient(one, Coloring({1, 0, 0}), plan).value.norm() < bound);
  }
}

TEST_CASE("state inner products") {
  const SamplingPlan plan{20000, 11, 1};
  const double bound = 5 / std::sqrt(double(plan.samples));
  const auto a = theta_network({1, 1, 0});
  const auto b = theta_network({0, 1, 1});
  const auto self = state_inner_product(a, a, plan);
  // ||B||^2 / dim with ||B|| = 1 and dim = 4.
  CHECK(std::abs(self.value - Complex(0.25, 0)) < 5 * self.standard_error + 1e-12);
  CHECK(self.value.real() > 0);
  CHECK(std::abs(state_inner_product(a, b, plan).value) < bound);
  const auto trivial = state_inner_product(theta_network({0, 0, 0}), theta_network({0, 0, 0}), plan);
  CHECK(std::abs(trivial.value - Complex(1, 0)) < 1e-12);
  CHECK_THROWS_AS(state_inner_product(a, SpinNetwork(testing::dumbbell(), Coloring({0, 0, 0})), plan),
                  DomainError);
}

TEST_CASE("Monte Carlo streams are reproducible") {
  const auto a = theta_network({1, 1, 0});
  const auto b = theta_network({2, 1, 1});
  for (unsigned workers : {1u, 3u}) {
    const SamplingPlan plan{3000, 77, workers};
    const auto first = state_inner_product(a, b, plan);
    const auto second = state_inner_product(a, b, plan);
    CHECK(first.value == second.value);
    CHECK(first.standard_error == second.standard_error);
  }
  const auto one = state_inner_product(a, a, SamplingPlan{3000, 77, 1});
  const auto three = state_inner_product(a, a, SamplingPlan{3000, 77, 3});
  CHECK(one.value != three.value);
  CHECK(std::abs(one.value - three.value) < 5 * (one.standard_error + three.standard_error));
  CHECK_THROWS_AS(state_inner_product(a, a, SamplingPlan{0, 1, 1}), DomainError);
}

TEST_CASE("assignment files") {
  const Graph theta = testing::theta();
  const auto t = parse_assignment("e1 = 1 0 0 0\ne2 = 0 1 0 0\ne3 = 0.6 0 0.8 0\n", theta);
  CHECK(distance(t[2], GroupElement(0.6, 0, 0.8, 0)) < 1e-15);
  CHECK_THROWS_AS(parse_assignment("e1 = 2 0 0 0\ne2 = 0 1 0 0\ne3 = 1 0 0 0\n", theta), ParseError);
  CHECK_THROWS_AS(parse_assignment("e1 = 1 0 0\ne2 = 0 1 0 0\ne3 = 1 0 0 0\n", theta), ParseError);
}
