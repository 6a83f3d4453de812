#include <doctest.h>

#include <random>

#include "spinnet/error.hpp"
#include "spinnet/graph.hpp"
#include "support.hpp"

using namespace spinnet;
using namespace spinnet::topology;

namespace {

// Theta with e3 written v->u, so the as-written orientation has one edge
// each way at each vertex.
constexpr const char* kTheta = R"(# theta
name theta
vertex u
vertex v
edge e1 u v
edge e2 u v
edge e3 v u
)";

constexpr const char* kDumbbell = R"(
edge bridge a b
edge loop1 a a   # loop at a
edge loop2 b b
)";

// Every 2^|E| orientation, checked against the in/out predicate by hand.
bool some_orientation_exists(const Graph& g) {
  for (std::uint64_t mask = 0; mask < (1ull << g.edge_count()); ++mask) {
    std::vector<std::uint8_t> tails(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) tails[e] = (mask >> e) & 1;
    if (has_in_and_out(g, Orientation(tails))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parse theta") {
  const Graph g = parse_graph(kTheta);
  CHECK(g.name() == "theta");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 3);
  CHECK(g.loop_count() == 0);
  CHECK(g.flag_count() == 6);
  CHECK(g.is_closed_trivalent());
  CHECK(genus(g) == 2);
}

TEST_CASE("parse dumbbell with inferred vertices") {
  const Graph g = parse_graph(kDumbbell);
  CHECK(g.vertex_count() == 2);
  CHECK(g.loop_count() == 2);
  CHECK(g.flag_count() == 4);
  // 2|E| - |L| = |F| = 3|V| - |L|
  CHECK(2 * g.edge_count() - g.loop_count() == g.flag_count());
  CHECK(3 * g.vertex_count() - g.loop_count() == g.flag_count());
  CHECK(genus(g) == 2);
  // A loop occupies two incidence slots at its vertex.
  const auto a = g.vertex_index("a");
  CHECK(g.valence(a) == 3);
}

TEST_CASE("parse errors") {
  SUBCASE("four-valent vertex in closed mode") {
    const char* text = "edge a x y\nedge b x y\nedge c x y\nedge d x y\n";
    CHECK_THROWS_AS(parse_graph(text), DomainError);
    CHECK_NOTHROW(parse_graph(text, Validation::multigraph));
  }
  SUBCASE("syntax error carries line and column") {
    try {
      parse_graph("vertex u\nvertex v\n  edgy e1 u v\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("dangling vertex reference") {
    try {
      parse_graph("vertex u\nedge e1 u w\n", Validation::multigraph);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 11);
    }
  }
  SUBCASE("wrong arity") { CHECK_THROWS_AS(parse_graph("edge e1 u\n"), ParseError); }
  SUBCASE("duplicate edge") {
    CHECK_THROWS_AS(parse_graph("edge e1 u v\nedge e1 u v\n", Validation::multigraph), ParseError);
  }
  SUBCASE("OPEN end in closed mode") {
    CHECK_THROWS_AS(parse_graph("edge a c OPEN\nedge b c OPEN\nedge d c OPEN\n"), DomainError);
    CHECK_NOTHROW(parse_graph("edge a c OPEN\nedge b c OPEN\nedge d c OPEN\n", Validation::trivalent));
  }
}

TEST_CASE("serializer normal form round-trips the corpus") {
  for (const char* name : testing::kCorpus) {
    CAPTURE(name);
    const std::string text = testing::read_corpus_file(std::string(name) + ".g");
    const Graph g = parse_graph(text);
    const std::string normal = serialize_graph(g);
    CHECK(parse_graph(normal) == g);
    // Corpus files are already normal apart from comment lines.
    std::string stripped;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      if (!line.empty() && line[0] != '#') stripped += line + "\n";
    }
    CHECK(stripped == normal);
  }
}

TEST_CASE("flag identity and genus over the corpus") {
  for (const char* name : testing::kCorpus) {
    CAPTURE(name);
    const Graph g = testing::corpus_graph(name);
    CHECK(2 * g.edge_count() == 3 * g.vertex_count());
    CHECK(2 * g.edge_count() - g.loop_count() == g.flag_count());
    CHECK(3 * g.vertex_count() - g.loop_count() == g.flag_count());
    const int gg = genus(g);
    CHECK(static_cast<int>(g.vertex_count()) == 2 * gg - 2);
    CHECK(static_cast<int>(g.edge_count()) == 3 * gg - 3);
  }
  CHECK(genus(testing::corpus_graph("tetrahedron")) == 3);
}

TEST_CASE("genus preconditions") {
  const Graph two = parse_graph(
      "edge a u v\nedge b u v\nedge c u v\nedge d x y\nedge e x y\nedge f x y\n");
  CHECK_THROWS_AS(genus(two), DomainError);
  CHECK(component_genera(two) == std::vector<int>{2, 2});
  const Graph tristar = parse_graph("edge a c OPEN\nedge b c OPEN\nedge d c OPEN\n", Validation::trivalent);
  CHECK_THROWS_AS(genus(tristar), DomainError);
}

TEST_CASE("find_orientation") {
  SUBCASE("theta") {
    const Graph g = parse_graph(kTheta);
    const Orientation o = find_orientation(g);
    CHECK(has_in_and_out(g, o));
    CHECK(has_in_and_out(g, Orientation::as_written(g)));
    CHECK_FALSE(has_in_and_out(g, Orientation::as_written(g).flipped(2)));
  }
  SUBCASE("dumbbell: loops give in and out") {
    const Graph g = parse_graph(kDumbbell);
    CHECK(has_in_and_out(g, find_orientation(g)));
    CHECK(has_in_and_out(g, Orientation::as_written(g)));
    CHECK(has_in_and_out(g, Orientation::as_written(g).flipped(0)));
  }
  SUBCASE("whole corpus, exhaustively checked post-condition") {
    for (const char* name : testing::kCorpus) {
      CAPTURE(name);
      const Graph g = testing::corpus_graph(name);
      CHECK(some_orientation_exists(g));
      CHECK(has_in_and_out(g, find_orientation(g)));
    }
  }
  SUBCASE("disconnected input") {
    const Graph g = parse_graph("edge a u v\nedge b u v\nedge c u v\nedge d x y\nedge e x y\nedge f x y\n");
    CHECK(has_in_and_out(g, find_orientation(g)));
  }
}

TEST_CASE("spanning tree marking") {
  SUBCASE("theta") {
    const Graph g = parse_graph(kTheta);
    const Marking m = spanning_tree(g);
    CHECK(m.tree == std::vector<EdgeIndex>{g.edge_index("e1")});
    CHECK(m.complement == std::vector<EdgeIndex>{g.edge_index("e2"), g.edge_index("e3")});
    CHECK_NOTHROW(validate_marking(g, m));
  }
  SUBCASE("dumbbell") {
    const Graph g = parse_graph(kDumbbell);
    const Marking m = spanning_tree(g);
    CHECK(m.tree == std::vector<EdgeIndex>{g.edge_index("bridge")});
    CHECK(m.complement == std::vector<EdgeIndex>{g.edge_index("loop1"), g.edge_index("loop2")});
  }
  SUBCASE("genus 3") {
    for (const char* name : {"tetrahedron", "twoloop3"}) {
      const Graph g = testing::corpus_graph(name);
      const Marking m = spanning_tree(g);
      CHECK(m.tree.size() == 3);
      CHECK(m.complement.size() == 3);
      CHECK(m.genus() == static_cast<std::size_t>(genus(g)));
      CHECK_NOTHROW(validate_marking(g, m));
    }
  }
  SUBCASE("invalid markings") {
    const Graph g = parse_graph(kTheta);
    CHECK_THROWS_AS(validate_marking(g, Marking{{0, 1}, {2}}), DomainError);
    CHECK_THROWS_AS(validate_marking(g, Marking{{0}, {1}}), DomainError);
  }
  SUBCASE("disconnected") {
    const Graph g = parse_graph("edge a u v\nedge b u v\nedge c u v\nedge d x y\nedge e x y\nedge f x y\n");
    CHECK_THROWS_AS(spanning_tree(g), DomainError);
  }
}

TEST_CASE("graph construction rejects bad ids") {
  CHECK_THROWS_AS(Graph({"u", "u"}, {}), DomainError);
  CHECK_THROWS_AS(Graph({"u"}, {{"e", "u", "w"}}), DomainError);
  CHECK_THROWS_AS(Graph({"OPEN"}, {}), DomainError);
  CHECK_THROWS_AS(Graph({"a b"}, {}), DomainError);
}

TEST_CASE("isomorphism") {
  const Graph theta = parse_graph(kTheta);
  const Graph renamed = parse_graph("edge x p q\nedge y q p\nedge z p q\n");
  CHECK(are_isomorphic(theta, renamed));
  CHECK_FALSE(are_isomorphic(theta, parse_graph(kDumbbell)));
  CHECK_FALSE(are_isomorphic(testing::corpus_graph("tetrahedron"), testing::corpus_graph("twoloop3")));
}
