#include <map>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "invmon/boundary.hpp"
#include "invmon/constructions.hpp"
#include "invmon/zone_graphs.hpp"
#include "oracles.hpp"

using namespace invmon;
using namespace oracle;

TEST_CASE("boundary width on small graphs", "[boundary]") {
  auto k3 = undirected(3, {{0, 1}, {1, 2}, {2, 0}});
  auto r  = boundary_width(k3, {0, 1, 2});
  CHECK(r.width == 1);
  CHECK(!r.no_pairs);
  CHECK(r.pairs.size() == 6);
  auto e = boundary_width(k3, {0, 1, 2}, BoundaryMode::excursion);
  CHECK(e.no_pairs);
  CHECK(e.width == 0);

  auto path = undirected(3, {{0, 1}, {1, 2}});
  auto p    = boundary_width(path, {0, 2});
  CHECK(p.width == 2);
  bool seen = false;
  for (auto const& pr : p.pairs) {
    CHECK(replays_boundary_path(path, p.subset, pr.path));
    if (pr.x == 0 && pr.y == 2) {
      seen = true;
      CHECK(pr.path == std::vector<vertex_type>{0, 1, 2});
    }
  }
  CHECK(seen);
  CHECK(p.widest()->distance == 2);

  auto single = boundary_width(path, {1});
  CHECK(!single.no_pairs);
  CHECK(single.width == 0);
  CHECK(boundary_width(path, {0, 1, 2}, BoundaryMode::excursion).no_pairs);
  CHECK(!replays_boundary_path(path, {0, 2}, {0, 2}));
  CHECK(!replays_boundary_path(path, {0, 1, 2}, {0, 1, 2}));
}

TEST_CASE("boundary pairs agree with the component oracle", "[boundary]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_graph(rng, 10, 12);
    auto X = random_subset(rng, 10);
    auto d = floyd(g);
    for (auto mode : {BoundaryMode::literal, BoundaryMode::excursion}) {
      auto                                           rep = boundary_width(g, X, mode);
      std::set<std::pair<vertex_type, vertex_type>> got;
      std::size_t                                    width = 0;
      for (auto const& pr : rep.pairs) {
        got.emplace(pr.x, pr.y);
        REQUIRE(replays_boundary_path(g, rep.subset, pr.path, mode));
        REQUIRE(pr.distance == d[pr.x][pr.y]);
        width = std::max(width, d[pr.x][pr.y]);
      }
      auto want = oracle_pairs(g, rep.subset, mode);
      REQUIRE(got == want);
      REQUIRE(rep.width == width);
      REQUIRE(rep.no_pairs == want.empty());
    }
  }
}

TEST_CASE("the free product factor has width zero", "[boundary]") {
  auto b = free_product_ball(4);
  REQUIRE(b.graph.num_vertices() > 2);
  std::vector<vertex_type> X;
  for (vertex_type v = 0; v < b.words.size(); ++v) {
    if (b.words[v].size() <= 1 && (b.words[v].empty() || b.words[v][0] == 0)) {
      X.push_back(v);
    }
  }
  REQUIRE(X.size() == 2);
  auto ex = boundary_width(b.graph, X, BoundaryMode::excursion, false);
  CHECK(!ex.no_pairs);
  CHECK(ex.width == 0);
  CHECK(!ex.exact);
  for (auto const& pr : ex.pairs) {
    CHECK(pr.x == pr.y);
  }
  CHECK(boundary_width(b.graph, X, BoundaryMode::literal).width == 1);
}

TEST_CASE("ball covers", "[boundary]") {
  auto g = cycle(6);
  CHECK(ball_cover(g, {0, 3}, 0) == std::vector<vertex_type>{0, 3});
  CHECK(ball_cover(g, {0}, 3).size() == 6);
  CHECK(ball_cover(g, {0}, 1) == std::vector<vertex_type>{0, 1, 5});
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    auto h = random_graph(rng, 12, 14);
    auto D = random_subset(rng, 12);
    for (std::size_t r = 0; r < 4; ++r) {
      auto a = ball_cover(h, D, r);
      auto b = ball_cover(h, D, r + 1);
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}

TEST_CASE("ball covers widen by at most 2r", "[boundary]") {
  std::mt19937 rng(2024);
  for (int seed = 0; seed < 100; ++seed) {
    auto g = random_graph(rng, 12, 13 + static_cast<std::size_t>(seed % 6));
    auto D = random_subset(rng, 12);
    for (auto mode : {BoundaryMode::literal, BoundaryMode::excursion}) {
      for (std::size_t r = 0; r <= 2; ++r) {
        auto c = check_cover_bounds(g, D, r, mode);
        INFO("seed " << seed << " r " << r);
        REQUIRE(c.ok());
        REQUIRE(c.bound() == 2 * r + c.K);
        if (r == 0) {
          REQUIRE(c.outer.width == c.K);
        }
      }
    }
  }
}

TEST_CASE("coset models", "[boundary]") {
  // a 6-cycle cut into three cosets of two antipodal vertices
  auto text = std::string("vertices 6\n0 a 1\n1 a 2\n2 a 3\n3 a 4\n4 a 5\n5 a 0\n")
              + "coset 0 1\ncoset 3 1\ncoset 1 2\ncoset 4 2\ncoset 2 3\ncoset 5 3\n"
              + "idempotent 0\naction 1 a 2\naction 2 a 3\naction 3 a 1\n"
              + "action 1 a' 3\naction 2 a' 1\naction 3 a' 2\n";
  auto m = read_model(text);
  CHECK(check_model(m).ok());
  CHECK(m.indices() == std::set<std::size_t>{1, 2, 3});
  CHECK(read_model(write_model(m)).coset == m.coset);

  auto all = cover_analysis(m, {1, 2, 3});
  CHECK(all.connected);
  CHECK(all.width.width <= 1);

  auto h = cover_analysis(m, {1});
  CHECK(!h.connected);
  CHECK(h.width.width == 3);
  REQUIRE(h.enlargement);
  CHECK(h.enlargement->connected);
  CHECK(h.enlargement->kappa == 3);
  CHECK(h.enlargement->J2 == std::set<std::size_t>{1, 2, 3});
  CHECK(h.enlargement->bound.ok());

  CHECK_THROWS_WITH(cover_analysis(m, {1, 9}), Catch::Matchers::ContainsSubstring("not a partition"));
  CHECK_THROWS_WITH(cover_analysis(m, {2}), Catch::Matchers::ContainsSubstring("must contain 1"));
  CHECK_THROWS(read_model("vertices 2\n0 a 1\ncoset 0 1\nidempotent 0\n"));
  CHECK_THROWS(read_model("vertices 2\n0 a 1\ncoset 0 2\ncoset 1 1\nidempotent 0\n"));

  auto bad = m;
  bad.action[{1, make_letter(0)}] = 3;
  CHECK(!check_model(bad).ok());

  // H a singleton with no exits
  auto lone = read_model("vertices 2\n1 a 1\ncoset 0 1\ncoset 1 2\nidempotent 0\n");
  auto l    = cover_analysis(lone, {1});
  CHECK(l.connected);
  CHECK(l.width.width == 0);
  CHECK(l.width.no_pairs);
  CHECK(!l.enlargement);
}

TEST_CASE("enlargement always connects and meets the spread bound", "[boundary]") {
  std::mt19937 rng(99);
  int          runs = 0;
  for (int t = 0; t < 80; ++t) {
    auto        g = random_graph(rng, 12, 16);
    if (!is_connected(g)) {
      continue;
    }
    RClassModel m;
    m.graph = g;
    m.coset.resize(12);
    for (auto& c : m.coset) {
      c = 1 + rng() % 4;
    }
    m.coset[0]   = 1;
    m.idempotent = 0;
    for (auto mode : {BoundaryMode::literal, BoundaryMode::excursion}) {
      auto idx = m.indices();
      for (auto extra : idx) {
        auto e = enlarge_cover(m, {1}, {extra}, mode);
        REQUIRE(e.connected);
        REQUIRE(e.J2.count(1) == 1);
        REQUIRE(e.J2.count(extra) == 1);
        REQUIRE(is_connected(m.graph, m.members(e.J2)));
        REQUIRE(e.bound.ok());
        ++runs;
      }
    }
  }
  CHECK(runs > 100);
}

TEST_CASE("models from Schutzenberger graphs", "[boundary]") {
  // a -> b -> back: vertex 1 is not isomorphic to the root when rerooted
  LabeledDigraph g(Alphabet({"a", "b"}), 3);
  g.add_edge(0, 0, 1);
  g.add_edge(1, 1, 2);
  g.add_edge(2, 0, 0);
  g.set_root(0);
  auto m = model_from_schutzenberger(g);
  CHECK(check_model(m).ok());
  CHECK(m.coset[0] == 1);
  CHECK(m.indices().size() == 3);

  auto c = cycle(4);
  c.set_root(0);
  auto mc = model_from_schutzenberger(c);
  CHECK(mc.indices() == std::set<std::size_t>{1});
  CHECK(check_model(mc).ok());
}

TEST_CASE("short loops and the fundamental group", "[boundary]") {
  auto tree = undirected(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(lk_generates_pi1(tree, 0, k));
  }
  CHECK(!lk_generates_pi1(cycle(4), 0, 3));
  CHECK(lk_generates_pi1(cycle(4), 0, 4));
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t k = 0; k <= 9; ++k) {
      CHECK(lk_generates_pi1(cycle(n), static_cast<vertex_type>(n / 2), k) == (k >= n));
    }
  }
  // two triangles joined by a long path
  auto two = undirected(8, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 5}});
  CHECK(lk_loops(two, 0, 3).rank == 2);
  CHECK(lk_generates_pi1(two, 0, 3));
  CHECK(!lk_generates_pi1(two, 0, 2));
  // a loop edge and a double edge
  auto loops = undirected(2, {{0, 0}, {0, 1}, {0, 1}});
  CHECK(lk_generates_pi1(loops, 1, 2));
  CHECK(!lk_generates_pi1(loops, 1, 1));
  CHECK_THROWS_WITH(lk_generates_pi1(undirected(2, {}), 0, 3),
                    Catch::Matchers::ContainsSubstring("not connected"));
}

TEST_CASE("short-loop test agrees with the folding oracle", "[boundary]") {
  std::mt19937 rng(5);
  int          tried = 0;
  for (int t = 0; t < 200 && tried < 40; ++t) {
    auto g = random_graph(rng, 6, 8);
    if (!is_connected(g)) {
      continue;
    }
    ++tried;
    bool prev = false;
    for (std::size_t k = 0; k <= 6; ++k) {
      bool got = lk_generates_pi1(g, 0, k);
      INFO("trial " << t << " k " << k);
      REQUIRE(got == oracle_generates(g, k));
      REQUIRE((!prev || got));
      prev = got;
    }
  }
  CHECK(tried == 40);
}

TEST_CASE("quasi-isometry checks", "[boundary]") {
  auto                                    g = cycle(6);
  std::vector<std::optional<vertex_type>> id(6);
  std::vector<vertex_type>                all(6);
  for (vertex_type v = 0; v < 6; ++v) {
    id[v]  = v;
    all[v] = v;
  }
  CHECK(qi_check(g, g, id, {1, 0, 0}, all, all).ok());

  std::vector<std::optional<vertex_type>> flat(6, vertex_type(0));
  auto                                    rep = qi_check(g, g, flat, {1, 0, 0}, all, all);
  CHECK(!rep.ok());
  REQUIRE(!rep.find("distance distortion")->ok);
  CHECK(rep.find("distance distortion")->failures.front().find("pair") != std::string::npos);
  CHECK(!rep.find("quasi-density")->ok);
  CHECK(qi_check(g, g, flat, {1, 3, 3}, all, all).ok());
  CHECK_THROWS(qi_check(g, g, flat, {0.5, 0, 0}, all, all));
}

TEST_CASE("Schutzenberger graph of 1 against the prefix Cayley graph", "[boundary]") {
  auto z2 = parse_presentation("@kind special_inverse\n@gens a\n@rel a a = 1\n");
  auto r  = qi_r1_check(z2);
  CHECK(r.stabilized);
  CHECK(r.lambda == 2);
  CHECK(r.vertices == 2);
  CHECK(r.interior == 2);
  CHECK(r.report.ok());

  auto in  = MstInput{parse_presentation("@kind rc_monoid\n@gens a\n@rel a = a\n"), {}};
  auto mst = build_mst(in);
  QiR1Options opt;
  opt.budget = {6, 60000, 5};
  auto big   = qi_r1_check(mst, opt);
  INFO(big.report.to_string());
  CHECK(big.lambda == 6);
  CHECK(big.interior > 10);
  CHECK(big.report.ok());
  CHECK(big.report.find("d_Gamma <= lambda d_Delta")->checked > 50);
}
