#include <map>
#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "invmon/digraph.hpp"

using namespace invmon;

namespace {
  Alphabet ab() {
    return Alphabet({"a", "b"});
  }

  LabeledDigraph path_graph(std::size_t n) {
    LabeledDigraph g(ab(), n);
    for (vertex_type v = 0; v + 1 < n; ++v) {
      g.add_edge(v, 0, v + 1);
    }
    return g;
  }

  LabeledDigraph random_graph(std::mt19937& rng, std::size_t n, std::size_t m) {
    LabeledDigraph                        g(ab(), n);
    std::uniform_int_distribution<vertex_type> v(0, static_cast<vertex_type>(n - 1));
    std::uniform_int_distribution<int>         l(0, 1);
    for (std::size_t i = 0; i < m; ++i) {
      g.add_edge(v(rng), static_cast<std::uint32_t>(l(rng)), v(rng));
    }
    g.set_root(0);
    return g;
  }

  // Merges one randomly chosen violating pair at a time, rebuilding the
  // graph after every merge. Returns the class of every original vertex.
  std::vector<vertex_type> naive_fold_classes(LabeledDigraph const& g, std::mt19937& rng) {
    std::vector<vertex_type> cls(g.num_vertices());
    std::iota(cls.begin(), cls.end(), vertex_type(0));
    while (true) {
      std::set<std::tuple<vertex_type, std::uint32_t, vertex_type>> es;
      for (auto const& e : g.edges()) {
        es.emplace(cls[e.src], e.label, cls[e.dst]);
      }
      std::vector<std::pair<vertex_type, vertex_type>> bad;
      for (auto const& [s, l, t] : es) {
        for (auto const& [s2, l2, t2] : es) {
          if (l == l2 && s == s2 && t < t2) {
            bad.emplace_back(t, t2);
          }
          if (l == l2 && t == t2 && s < s2) {
            bad.emplace_back(s, s2);
          }
        }
      }
      if (bad.empty()) {
        return cls;
      }
      auto [x, y] = bad[std::uniform_int_distribution<std::size_t>(0, bad.size() - 1)(rng)];
      for (auto& c : cls) {
        if (c == y) {
          c = x;
        }
      }
    }
  }
}  // namespace

TEST_CASE("fold merges forced pairs", "[digraph]") {
  LabeledDigraph g(ab(), 3);
  g.add_edge(0, 0, 1);
  g.add_edge(0, 0, 2);
  g.set_root(0);
  auto f = fold(g);
  CHECK(f.graph.num_vertices() == 2);
  CHECK(f.map[1] == f.map[2]);
  CHECK(is_bideterministic(f.graph));

  auto h  = path_graph(3);
  h.set_root(0);
  auto fh = fold(h);
  CHECK(fh.graph.num_vertices() == 3);
  CHECK(fh.map == std::vector<vertex_type>{0, 1, 2});
  CHECK(fh.graph.edges() == h.edges());

  // linear graph of a a'
  LabeledDigraph l(ab(), 3);
  l.add_letter_edge(0, 0, 1);
  l.add_letter_edge(1, 1, 2);
  l.set_root(0);
  auto fl = fold(l);
  CHECK(fl.graph.num_vertices() == 2);
  CHECK(fl.map[0] == fl.map[2]);
  auto t = munn_tree({0, 1});
  CHECK(t.vertices == fl.graph.num_vertices());
}

TEST_CASE("fold is confluent and sound", "[digraph]") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + trial % 7;
    auto        g = random_graph(rng, n, n + trial % 5);
    auto        f = fold(g);
    REQUIRE(is_bideterministic(f.graph));
    // same partition as random sequential merging
    for (int rep = 0; rep < 3; ++rep) {
      auto cls = naive_fold_classes(g, rng);
      for (vertex_type x = 0; x < n; ++x) {
        for (vertex_type y = 0; y < n; ++y) {
          REQUIRE((cls[x] == cls[y]) == (f.map[x] == f.map[y]));
        }
      }
    }
    // relabelled input gives a rooted-isomorphic result
    std::vector<vertex_type> perm(n);
    std::iota(perm.begin(), perm.end(), vertex_type(0));
    std::shuffle(perm.begin(), perm.end(), rng);
    LabeledDigraph g2(ab(), n);
    auto           es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    for (auto const& e : es) {
      g2.add_edge(perm[e.src], e.label, perm[e.dst]);
    }
    g2.set_root(perm[0]);
    auto f2 = fold(g2);
    // the root component is numbered first and canonically
    auto d     = bfs_distances(f.graph, *f.graph.root());
    auto reach = static_cast<vertex_type>(
        std::count_if(d.begin(), d.end(), [](std::size_t x) { return x != unreachable; }));
    auto root_part = [&](LabeledDigraph const& h) {
      std::vector<Edge> out;
      for (auto const& e : h.edges()) {
        if (e.src < reach) {
          out.push_back(e);
        }
      }
      return out;
    };
    REQUIRE(root_part(f2.graph) == root_part(f.graph));
    // walks survive folding
    for (auto const& e : g.edges()) {
      REQUIRE(f.graph.has_edge(f.map[e.src], e.label, f.map[e.dst]));
    }
  }
}

TEST_CASE("distances and balls", "[digraph]") {
  auto g = path_graph(3);
  CHECK(undirected_distance(g, 1, 1) == 0);
  CHECK(undirected_distance(g, 0, 1) == 1);
  CHECK(undirected_distance(g, 0, 2) == 2);
  CHECK(undirected_distance(g, 2, 0) == 2);
  LabeledDigraph two(ab(), 2);
  CHECK_FALSE(undirected_distance(two, 0, 1).has_value());
  CHECK(ball(g, 1, 0).members == std::vector<vertex_type>{1});
  CHECK(ball(g, 0, 1).members == std::vector<vertex_type>{0, 1});
  CHECK(is_connected(g, {0, 1, 2}));
  CHECK(is_connected(g, {}));
  CHECK_FALSE(is_connected(g, {0, 2}));
  auto sub = induced_subgraph(g, {2, 1});
  CHECK(sub.origin == std::vector<vertex_type>{1, 2});
  CHECK(sub.graph.num_edges() == 1);
  CHECK(shortest_word(g, 2, 0) == Word{1, 1});

  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto g3 = random_graph(rng, 8, 12);
    std::vector<std::vector<std::size_t>> d;
    for (vertex_type v = 0; v < 8; ++v) {
      d.push_back(bfs_distances(g3, v));
    }
    for (vertex_type x = 0; x < 8; ++x) {
      for (vertex_type y = 0; y < 8; ++y) {
        REQUIRE(d[x][y] == d[y][x]);
        for (vertex_type z = 0; z < 8; ++z) {
          if (d[x][y] != unreachable && d[y][z] != unreachable) {
            REQUIRE(d[x][z] <= d[x][y] + d[y][z]);
          }
        }
      }
    }
  }
}

TEST_CASE("rooted isomorphism", "[digraph]") {
  LabeledDigraph c(ab(), 3);
  c.add_edge(0, 0, 1);
  c.add_edge(1, 0, 2);
  c.add_edge(2, 0, 0);
  c.set_root(0);
  CHECK(rooted_isomorphic(c, c));
  LabeledDigraph r = c;
  r.set_root(1);
  CHECK(rooted_isomorphic(c, r));
  LabeledDigraph d(ab(), 3);
  d.add_edge(0, 0, 1);
  d.add_edge(1, 1, 2);
  d.add_edge(2, 0, 0);
  d.set_root(0);
  CHECK_FALSE(rooted_isomorphic(c, d));
  auto p = path_graph(2);
  p.set_root(0);
  CHECK_FALSE(rooted_isomorphic(c, p));
  CHECK_THROWS(rooted_isomorphic(c, path_graph(2)));
}

TEST_CASE("DOT export and graph files", "[digraph]") {
  LabeledDigraph e;
  CHECK(export_dot(e) == "digraph {\n}\n");
  auto g = path_graph(2);
  g.set_root(0);
  auto dot = export_dot(g);
  CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("0 -> 1 [label=\"a\"]"));
  CHECK_THAT(dot, Catch::Matchers::ContainsSubstring("0 [shape=doublecircle]"));
  auto text = write_graph(g);
  auto back = read_graph(text);
  CHECK(back.edges() == g.edges());
  CHECK(back.root() == g.root());
  CHECK(write_graph(back) == text);
  auto h = read_graph("# comment\nvertices 3 root 1\n0 x 1\n2 x' 1\n");
  CHECK(h.num_vertices() == 3);
  CHECK(h.has_edge(1, 0, 2));
  CHECK(h.root() == 1);
  CHECK_THROWS_AS(read_graph("0 a 1\n"), ParseError);
  CHECK_THROWS_AS(read_graph("vertices 2\n0 a 5\n"), ParseError);
  CHECK(read_subset("1\n 3 # c\n\n") == std::vector<vertex_type>{1, 3});
}
