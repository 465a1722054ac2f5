#include "catch_amalgamated.hpp"
#include "invmon/stephen.hpp"

using namespace invmon;

namespace {
  Presentation pres(std::string const& text) {
    return parse_presentation(text);
  }

  Presentation cyclic(std::size_t n) {
    Presentation p(Kind::special_inverse, Alphabet({"a"}));
    p.add_relation(Word(n, 0));
    return p;
  }

  // The n-cycle oracle: n vertices, one a-edge out of and into each vertex,
  // and a^n closes at the root while no shorter power does.
  bool is_a_cycle(LabeledDigraph const& g, std::size_t n) {
    if (g.num_vertices() != n || g.num_edges() != n || !is_bideterministic(g)) {
      return false;
    }
    auto r = *g.root();
    for (std::size_t k = 1; k <= n; ++k) {
      auto e = g.read(r, Word(k, 0));
      if (!e || ((*e == r) != (k == n))) {
        return false;
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("cyclic groups stabilize to their Cayley graphs", "[stephen]") {
  for (std::size_t n : {2, 3, 4}) {
    auto a = approximate(cyclic(n), {}, {5, 1000, {}});
    CHECK(a.stabilized);
    CHECK(a.rounds <= 5);
    CHECK(is_a_cycle(a.graph, n));
  }
}

TEST_CASE("no relators gives a single vertex", "[stephen]") {
  auto p = pres("@kind special_inverse\n@gens a b\n");
  auto a = approximate(p, {}, {3, 100, {}});
  CHECK(a.stabilized);
  CHECK(a.graph.num_vertices() == 1);
  CHECK(a.graph.num_edges() == 0);
}

TEST_CASE("base word moves the root", "[stephen]") {
  auto a = approximate(cyclic(2), {0}, {5, 100, {}});
  CHECK(a.stabilized);
  CHECK(a.graph.num_vertices() == 2);
  CHECK(a.graph.read(a.start, {0}) == a.root());
  CHECK(a.start != a.root());
  // base a a' over the free inverse monoid is its Munn tree
  auto f = approximate(pres("@kind special_inverse\n@gens a\n"), {0, 1, 0}, {2, 100, {}});
  CHECK(f.graph.num_vertices() == 2);
  CHECK(f.graph.read(f.start, {0}) == f.root());
}

TEST_CASE("relator closure on earlier vertices", "[stephen]") {
  auto p = pres("@kind special_inverse\n@gens a b\n@rel a b a' = 1\n@rel b b a = 1\n");
  StephenRun run(p, {}, {10, 100000, {}});
  for (int r = 0; r < 3; ++r) {
    auto before = run.approx().graph;
    if (!run.step()) {
      break;
    }
    // every vertex existing before the round maps to a vertex carrying all
    // relator loops; vertices are renumbered so check all images via walks
    auto const& g = run.approx().graph;
    for (vertex_type v = 0; v < before.num_vertices(); ++v) {
      auto w = shortest_word(before, *before.root(), v);
      REQUIRE(w);
      auto img = g.read(*g.root(), *w);
      REQUIRE(img);
      for (auto const& rel : p.relators()) {
        REQUIRE(reads_closed(g, *img, rel));
      }
    }
  }
}

TEST_CASE("right units and units", "[stephen]") {
  auto ab = pres("@kind special_inverse\n@gens a b\n@rel a b = 1\n");
  auto d  = is_right_unit(ab, {0}, {3, 1000, {}});
  CHECK(d.verdict == Verdict::yes);
  REQUIRE(d.witnesses.size() == 1);
  CHECK(is_right_unit(ab, {}, {}).verdict == Verdict::yes);
  auto z2 = cyclic(2);
  CHECK(is_right_unit(z2, {1}, {3, 100, {}}).verdict == Verdict::yes);
  CHECK(is_unit(z2, {0}, {3, 100, {}}).verdict == Verdict::yes);
  CHECK(is_unit(z2, {}, {}).verdict == Verdict::yes);
  // a a' = 1 here, so both witnesses exist
  auto u = is_unit(ab, {0, 1}, {4, 5000, {}});
  CHECK(u.verdict == Verdict::yes);
  CHECK(u.witnesses.size() == 2);
  // a' a is an idempotent different from 1
  CHECK(is_unit(ab, {1, 0}, {4, 5000, {}}).verdict != Verdict::yes);
  CHECK(is_unit(ab, {0}, {4, 5000, {}}).verdict != Verdict::yes);
  // a' is not a right unit: b a = 1 fails
  CHECK(is_right_unit(ab, {1}, {4, 5000, {}}).verdict == Verdict::unknown);
}

TEST_CASE("yes witnesses replay and persist", "[stephen]") {
  auto p = pres("@kind special_inverse\n@gens a b\n@rel a b a' b' = 1\n@rel a a b = 1\n");
  std::vector<Word> words = {{0}, {0, 2}, {2, 1}, {0, 0, 2}, {1, 3}, {2, 2, 0}};
  for (auto const& w : words) {
    for (std::size_t r = 1; r <= 3; ++r) {
      auto d = is_right_unit(p, w, {r, 20000, {}});
      if (d.verdict == Verdict::yes) {
        auto a = approximate(p, {}, {d.rounds, 20000, {}});
        REQUIRE(replays(a.graph, d.witnesses[0]));
        REQUIRE(is_right_unit(p, w, {r + 1, 20000, {}}).verdict == Verdict::yes);
      }
    }
  }
}

TEST_CASE("equal right units", "[stephen]") {
  auto z3 = cyclic(3);
  auto d  = equal_right_units(z3, {1}, {0, 0}, {4, 100, {}});
  CHECK(d.verdict == Verdict::yes);
  CHECK(d.witnesses.size() == 2);
  CHECK(equal_right_units(z3, {0}, {0}, {}).verdict == Verdict::yes);
  CHECK(equal_right_units(z3, {0}, {0, 0}, {4, 100, {}}).verdict == Verdict::unknown);
}

TEST_CASE("radius-limited runs are sound", "[stephen]") {
  auto p = pres("@kind special_inverse\n@gens a b\n@rel a b a' b' = 1\n");
  StephenBudget b{6, 50000, 2};
  auto          lim  = approximate(p, {}, b);
  auto          full = approximate(p, {}, {2, 50000, {}});
  // limited approximation still carries all relator loops near the root
  auto d = bfs_distances(lim.graph, *lim.graph.root());
  for (vertex_type v = 0; v < lim.graph.num_vertices(); ++v) {
    if (d[v] <= 2) {
      for (auto const& r : p.relators()) {
        REQUIRE(reads_closed(lim.graph, v, r));
      }
    }
  }
  CHECK(full.graph.num_vertices() > 1);
  CHECK(is_bideterministic(lim.graph));
}

TEST_CASE("vertex cap", "[stephen]") {
  auto p = pres("@kind special_inverse\n@gens a b\n@rel a b a' b' = 1\n");
  auto a = approximate(p, {}, {10, 30, {}});
  CHECK(a.capped);
  CHECK_FALSE(a.stabilized);
  CHECK(a.graph.num_vertices() <= 30);
  CHECK_THROWS(approximate(pres("@kind rc_monoid\n@gens a\n"), {}, {}));
}
