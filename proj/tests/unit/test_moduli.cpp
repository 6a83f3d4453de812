#include <doctest.h>

#include <cmath>

#include "spinnet/coloring.hpp"
#include "spinnet/error.hpp"
#include "spinnet/moduli.hpp"
#include "spinnet/network.hpp"
#include "support.hpp"

using namespace spinnet;
using namespace spinnet::moduli;
using coloring::Coloring;
using coloring::SpinNetwork;
using su2rep::GroupElement;
using topology::Graph;

TEST_CASE("moment coordinates") {
  CHECK(moment_coordinate(GroupElement::identity()) == 0.0);
  CHECK(moment_coordinate(GroupElement::minus_identity()) == doctest::Approx(1.0));
  CHECK(moment_coordinate(GroupElement(0, 1, 2, 3)) == doctest::Approx(0.5));
  su2rep::Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto u = su2rep::haar_sample(rng);
    const auto h = su2rep::haar_sample(rng);
    const double c = moment_coordinate(u);
    CHECK((c >= 0.0 && c <= 1.0));
    CHECK(std::abs(moment_coordinate(h * u * h.inverse()) - c) < 1e-12);
  }
}

TEST_CASE("polytope") {
  const Graph theta = testing::theta();
  CHECK(polytope_contains(theta, MomentPoint({0, 0, 0})));
  CHECK_FALSE(polytope_contains(theta, MomentPoint({1, 1, 1})));
  CHECK(polytope_contains(theta, MomentPoint({0.5, 0.5, 0.5})));
  CHECK_FALSE(polytope_contains(theta, MomentPoint({0.9, 0.1, 0.1})));
  CHECK_THROWS_AS(polytope_contains(theta, MomentPoint({0, 0})), DomainError);
  CHECK_THROWS_AS(MomentPoint({0, 1.5, 0}), DomainError);

  SUBCASE("Bohr-Sommerfeld points lie in the polytope") {
    for (const char* name : testing::kCorpus) {
      const Graph g = testing::corpus_graph(name);
      for (int k = 1; k <= 6; ++k) {
        for (const auto& p : bs_points(g, k)) CHECK(polytope_contains(g, p));
      }
    }
  }
  SUBCASE("images of random holonomies satisfy the facet inequalities") {
    // At a trivalent vertex with holonomies a, b and (ab)^-1 the three moment
    // coordinates are always in the polytope.
    su2rep::Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
      const auto a = su2rep::haar_sample(rng);
      const auto b = su2rep::haar_sample(rng);
      const double x = moment_coordinate(a), y = moment_coordinate(b), z = moment_coordinate(a * b);
      CHECK(polytope_contains(theta, MomentPoint({x, y, z}), 1e-9));
    }
  }
}

TEST_CASE("Bohr-Sommerfeld points") {
  const Graph theta = testing::theta();
  const auto one = bs_points(theta, 1);
  REQUIRE(one.size() == 4);
  CHECK(one[0] == MomentPoint({0, 0, 0}));
  CHECK(one[1] == MomentPoint({0, 1, 1}));
  CHECK(one[2] == MomentPoint({1, 0, 1}));
  CHECK(one[3] == MomentPoint({1, 1, 0}));
  CHECK(bs_points(testing::dumbbell(), 2).size() == 10);
  CHECK(bs_points(testing::corpus_graph("tetrahedron"), 1).size() == 8);
  for (const char* name : testing::kCorpus) {
    const Graph g = testing::corpus_graph(name);
    for (int k = 1; k <= 6; ++k) {
      CHECK(static_cast<std::int64_t>(bs_points(g, k).size()) ==
            coloring::verlinde_number(topology::genus(g), k).integer);
    }
  }
  CHECK_THROWS_AS(bs_points(theta, 0), DomainError);
}

TEST_CASE("fiber classification") {
  SUBCASE("generic interior point") {
    for (const char* name : testing::kCorpus) {
      CAPTURE(name);
      const Graph g = testing::corpus_graph(name);
      const int genus = topology::genus(g);
      const FiberDescriptor f = classify_fiber(g, MomentPoint(std::vector<double>(g.edge_count(), 0.4)));
      CHECK(f.type == FiberType::generic_torus);
      CHECK(f.resolved());
      CHECK(f.dimension_upper == 3 * genus - 3);
      for (auto s : f.edges) CHECK(s == EdgeStabilizer::u1);
      for (auto s : f.vertices) CHECK(s == VertexStabilizer::z2);
    }
  }
  SUBCASE("zero point") {
    for (const char* name : testing::kCorpus) {
      const Graph g = testing::corpus_graph(name);
      const FiberDescriptor f = classify_fiber(g, MomentPoint(std::vector<double>(g.edge_count(), 0.0)));
      CHECK(f.type == FiberType::schottky);
      CHECK(f.resolved());
      CHECK(f.dimension_lower == 3 * topology::genus(g) - 3);
      for (auto s : f.edges) CHECK(s == EdgeStabilizer::su2);
      for (auto s : f.vertices) CHECK(s == VertexStabilizer::su2);
    }
  }
  SUBCASE("mixed point on theta") {
    const FiberDescriptor f = classify_fiber(testing::theta(), MomentPoint({0, 0.5, 0.5}));
    CHECK(f.edges == std::vector<EdgeStabilizer>{EdgeStabilizer::su2, EdgeStabilizer::u1, EdgeStabilizer::u1});
    CHECK(f.vertices == std::vector<VertexStabilizer>{VertexStabilizer::other, VertexStabilizer::other});
    CHECK(f.type == FiberType::mixed);
    CHECK_FALSE(f.resolved());
    CHECK(f.dimension_upper == 5);
    CHECK(f.dimension_lower == 0);
    CHECK(std::string(to_string(f.type)) == "MIXED");
    CHECK(std::string(to_string(f.vertices[0])) == "OTHER");
  }
  SUBCASE("outside the polytope") {
    CHECK_THROWS_AS(classify_fiber(testing::theta(), MomentPoint({1, 1, 1})), DomainError);
  }
}

TEST_CASE("Schottky chart") {
  const Graph theta = testing::theta();
  const auto m = topology::spanning_tree(theta);
  su2rep::Rng rng(12);
  SUBCASE("identity handles") {
    const SchottkyPoint s{{GroupElement::identity(), GroupElement::identity()}};
    const auto t = schottky_embed(theta, m, s);
    CHECK(moment_point(t).is_zero());
  }
  SUBCASE("theta with tree e1") {
    const auto s = random_schottky_point(2, rng);
    const auto t = schottky_embed(theta, m, s);
    CHECK(t[0] == GroupElement::identity());
    CHECK(t[1] == s.handles[0]);
    CHECK(t[2] == s.handles[1]);
  }
  SUBCASE("constant gauge conjugates the handles") {
    for (const char* name : testing::kCorpus) {
      const Graph g = testing::corpus_graph(name);
      const auto mg = topology::spanning_tree(g);
      const auto o = topology::find_orientation(g);
      for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_schottky_point(mg.genus(), rng);
        const auto h = su2rep::haar_sample(rng);
        const auto lhs = su2rep::gauge_act(g, o, su2rep::GaugeAssignment(g.vertex_count(), h), schottky_embed(g, mg, s));
        const auto rhs = schottky_embed(g, mg, conjugated(s, h));
        for (std::size_t e = 0; e < lhs.size(); ++e) CHECK(su2rep::distance(lhs[e], rhs[e]) < 1e-12);
      }
    }
  }
  SUBCASE("evaluation") {
    const SchottkyPoint id{{GroupElement::identity(), GroupElement::identity()}};
    CHECK(std::abs(evaluate_schottky(SpinNetwork(theta, Coloring({0, 0, 0})), m, random_schottky_point(2, rng)) -
                   su2rep::Complex(1, 0)) < 1e-14);
    const SpinNetwork n(theta, Coloring({1, 1, 0}));
    const auto o = topology::find_orientation(theta);
    CHECK(std::abs(evaluate_schottky(n, m, id) - su2rep::evaluate(n, o, su2rep::EdgeAssignment(3))) < 1e-14);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = random_schottky_point(2, rng);
      const auto h = su2rep::haar_sample(rng);
      CHECK(std::abs(evaluate_schottky(n, m, s) - evaluate_schottky(n, m, conjugated(s, h))) < 1e-9);
    }
  }
  SUBCASE("errors and parsing") {
    CHECK_THROWS_AS(schottky_embed(theta, m, random_schottky_point(3, rng)), DomainError);
    const auto s = parse_schottky_point("e2 = 0 1 0 0\ne3 = 1 0 0 0\n", theta, m);
    CHECK(s.handles[0] == GroupElement(0, 1, 0, 0));
    CHECK_THROWS_AS(parse_schottky_point("e1 = 0 1 0 0\ne3 = 1 0 0 0\n", theta, m), ParseError);
    CHECK_THROWS_AS(parse_schottky_point("e2 = 0 1 0 0\n", theta, m), DomainError);
  }
}

TEST_CASE("moment point files") {
  const Graph theta = testing::theta();
  CHECK(parse_moment_point("e1 = 0\ne2 = 0.5\ne3 = 0.5\n", theta) == MomentPoint({0, 0.5, 0.5}));
  CHECK_THROWS_AS(parse_moment_point("e1 = 0\ne2 = 1.5\ne3 = 0.5\n", theta), ParseError);
}
