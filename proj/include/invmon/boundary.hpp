// Boundary widths, ball covers, finite covers by cosets, the short-loop
// test for fundamental groups, and quasi-isometry checks.

#ifndef INVMON_BOUNDARY_HPP_
#define INVMON_BOUNDARY_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "digraph.hpp"
#include "presentation.hpp"
#include "report.hpp"
#include "stephen.hpp"
#include "words.hpp"

namespace invmon {

  ////////////////////////////////////////////////////////////////////////
  // Boundary pairs
  ////////////////////////////////////////////////////////////////////////

  //! `literal` counts every path whose inner vertices avoid X, so a single
  //! edge between two members is a boundary path; `excursion` only counts
  //! paths that actually leave X.
  enum class BoundaryMode { literal, excursion };

  inline std::string to_string(BoundaryMode m) {
    return m == BoundaryMode::literal ? "literal" : "excursion";
  }

  inline BoundaryMode parse_boundary_mode(std::string const& s) {
    if (s == "literal") {
      return BoundaryMode::literal;
    }
    if (s == "excursion") {
      return BoundaryMode::excursion;
    }
    throw Error("unknown boundary mode \"" + s + "\"");
  }

  struct BoundaryPair {
    vertex_type              x = 0;
    vertex_type              y = 0;
    std::vector<vertex_type> path;  // x, ..., y
    std::size_t              distance = 0;
  };

  struct BoundaryReport {
    std::vector<vertex_type>  subset;
    std::vector<BoundaryPair> pairs;
    std::size_t               width    = 0;
    bool                      no_pairs = true;
    bool                      exact    = true;
    BoundaryMode              mode     = BoundaryMode::literal;

    BoundaryPair const* widest() const {
      BoundaryPair const* best = nullptr;
      for (auto const& p : pairs) {
        if (!best || p.distance > best->distance) {
          best = &p;
        }
      }
      return best;
    }
  };

  namespace detail {
    inline bool adjacent(LabeledDigraph const& g, vertex_type a, vertex_type b) {
      for (auto const& e : g.out_edges(a)) {
        if (e.target == b) {
          return true;
        }
      }
      for (auto const& e : g.in_edges(a)) {
        if (e.target == b) {
          return true;
        }
      }
      return false;
    }

    inline std::vector<vertex_type> sorted_unique(std::vector<vertex_type> s) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      return s;
    }
  }  // namespace detail

  //! Checks a witness: consecutive vertices adjacent, ends in X, inner
  //! vertices outside X.
  inline bool replays_boundary_path(LabeledDigraph const&           g,
                                    std::vector<vertex_type> const& X,
                                    std::vector<vertex_type> const& path,
                                    BoundaryMode                    mode = BoundaryMode::literal) {
    if (path.size() < 2 || (mode == BoundaryMode::excursion && path.size() < 3)) {
      return false;
    }
    auto in = membership(g.num_vertices(), X);
    for (auto v : path) {
      if (v >= g.num_vertices()) {
        return false;
      }
    }
    if (!in[path.front()] || !in[path.back()]) {
      return false;
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      if (in[path[i]]) {
        return false;
      }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!detail::adjacent(g, path[i], path[i + 1])) {
        return false;
      }
    }
    return true;
  }

  //! All boundary pairs of X with one witness each, and the largest
  //! distance in g between the ends of a pair.
  inline BoundaryReport boundary_width(LabeledDigraph const&    g,
                                       std::vector<vertex_type> X,
                                       BoundaryMode             mode  = BoundaryMode::literal,
                                       bool                     exact = true) {
    BoundaryReport rep;
    rep.subset = detail::sorted_unique(std::move(X));
    rep.mode   = mode;
    rep.exact  = exact;
    auto const n    = g.num_vertices();
    auto       in   = membership(n, rep.subset);
    auto const none = std::numeric_limits<vertex_type>::max();

    std::vector<vertex_type> parent(n, none);
    std::vector<vertex_type> touched;
    for (auto x : rep.subset) {
      std::map<vertex_type, std::vector<vertex_type>> found;
      if (mode == BoundaryMode::literal) {
        for (auto const& [l, u] : g.neighbours(x)) {
          if (in[u]) {
            found.emplace(u, std::vector<vertex_type>{x, u});
          }
        }
      }
      std::deque<vertex_type> q;
      for (auto const& [l, u] : g.neighbours(x)) {
        if (!in[u] && parent[u] == none) {
          parent[u] = x;
          touched.push_back(u);
          q.push_back(u);
        }
      }
      while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto const& [l, u] : g.neighbours(v)) {
          if (in[u]) {
            if (found.count(u) == 0) {
              std::vector<vertex_type> path{u};
              for (auto w = v; w != x; w = parent[w]) {
                path.push_back(w);
              }
              path.push_back(x);
              std::reverse(path.begin(), path.end());
              found.emplace(u, std::move(path));
            }
          } else if (parent[u] == none) {
            parent[u] = v;
            touched.push_back(u);
            q.push_back(u);
          }
        }
      }
      for (auto v : touched) {
        parent[v] = none;
      }
      touched.clear();
      if (found.empty()) {
        continue;
      }
      auto d = bfs_distances(g, x);
      for (auto& [y, path] : found) {
        rep.pairs.push_back({x, y, std::move(path), d[y]});
        rep.width = std::max(rep.width, d[y]);
      }
    }
    rep.no_pairs = rep.pairs.empty();
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Ball covers
  ////////////////////////////////////////////////////////////////////////

  //! Vertices within undirected distance r of some member of D.
  inline std::vector<vertex_type> ball_cover(LabeledDigraph const&           g,
                                             std::vector<vertex_type> const& D,
                                             std::size_t                     r) {
    auto                     d = bfs_distances(g, D, r);
    std::vector<vertex_type> out;
    for (vertex_type v = 0; v < d.size(); ++v) {
      if (d[v] <= r) {
        out.push_back(v);
      }
    }
    return out;
  }

  //! Largest distance from a member of `outer` to the set `inner`.
  inline std::size_t hausdorff_excess(LabeledDigraph const&           g,
                                      std::vector<vertex_type> const& inner,
                                      std::vector<vertex_type> const& outer) {
    if (inner.empty()) {
      return outer.empty() ? 0 : unreachable;
    }
    auto        d = bfs_distances(g, inner);
    std::size_t m = 0;
    for (auto v : outer) {
      m = std::max(m, d.at(v));
    }
    return m;
  }

  struct CoverBound {
    std::size_t    K          = 0;  // width of the inner set
    std::size_t    spread     = 0;  // how far the outer set reaches beyond it
    BoundaryReport inner;
    BoundaryReport outer;

    std::size_t bound() const {
      return K + 2 * spread;
    }

    bool ok() const {
      return spread != unreachable && outer.width <= bound();
    }
  };

  //! width(outer) <= width(inner) + 2 * max_{v in outer} d(v, inner).
  inline CoverBound check_spread_bound(LabeledDigraph const&           g,
                                       std::vector<vertex_type> const& inner,
                                       std::vector<vertex_type> const& outer,
                                       BoundaryMode                    mode = BoundaryMode::literal) {
    CoverBound c;
    c.inner  = boundary_width(g, inner, mode);
    c.outer  = boundary_width(g, outer, mode);
    c.K      = c.inner.width;
    c.spread = hausdorff_excess(g, inner, outer);
    return c;
  }

  //! width(D_r) <= 2r + width(D).
  inline CoverBound check_cover_bounds(LabeledDigraph const&           g,
                                       std::vector<vertex_type> const& D,
                                       std::size_t                     r,
                                       BoundaryMode mode = BoundaryMode::literal) {
    auto c   = check_spread_bound(g, D, ball_cover(g, D, r), mode);
    c.spread = r;
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coset models
  ////////////////////////////////////////////////////////////////////////

  //! A finite piece of a Schützenberger graph cut into cosets of a
  //! subgroup H; H is coset 1 and 0 stands for the zero of the action.
  struct RClassModel {
    LabeledDigraph                                  graph;
    std::vector<std::size_t>                        coset;  // per vertex, >= 1
    vertex_type                                     idempotent = 0;
    Word                                            idempotent_word;  // empty when e = 1
    std::map<std::pair<std::size_t, letter_type>, std::size_t> action;

    std::set<std::size_t> indices() const {
      return {coset.begin(), coset.end()};
    }

    std::vector<vertex_type> members(std::set<std::size_t> const& J) const {
      std::vector<vertex_type> out;
      for (vertex_type v = 0; v < coset.size(); ++v) {
        if (J.count(coset[v]) != 0) {
          out.push_back(v);
        }
      }
      return out;
    }

    bool has_action() const {
      return !action.empty();
    }
  };

  inline CheckReport check_model(RClassModel const& m) {
    CheckReport rep;
    auto&       part = rep.add("partition");
    if (m.coset.size() != m.graph.num_vertices()) {
      part.fail("partition has " + std::to_string(m.coset.size()) + " entries for "
                + std::to_string(m.graph.num_vertices()) + " vertices");
    }
    for (vertex_type v = 0; v < m.coset.size(); ++v) {
      ++part.checked;
      if (m.coset[v] == 0) {
        part.fail("vertex " + std::to_string(v) + " has no coset");
      }
    }
    auto& e = rep.add("idempotent in H");
    ++e.checked;
    if (m.idempotent >= m.coset.size() || m.coset[m.idempotent] != 1) {
      e.fail("vertex " + std::to_string(m.idempotent) + " is not in coset 1");
    } else if (!reads_closed(m.graph, m.idempotent, m.idempotent_word)) {
      e.fail("the idempotent word does not read as a loop at vertex "
             + std::to_string(m.idempotent));
    }
    if (m.has_action() && part.ok) {
      auto& act = rep.add("action");
      for (vertex_type v = 0; v < m.coset.size(); ++v) {
        for (letter_type x = 0; x < m.graph.labels().letters(); ++x) {
          auto it = m.action.find({m.coset[v], x});
          if (it == m.action.end()) {
            continue;
          }
          ++act.checked;
          auto        t    = m.graph.follow(v, x);
          std::size_t want = t ? m.coset[*t] : 0;
          if (want != it->second) {
            act.fail("coset " + std::to_string(m.coset[v]) + " . "
                     + m.graph.labels().letter_name(x) + " is "
                     + std::to_string(it->second) + " but vertex " + std::to_string(v)
                     + " goes to " + std::to_string(want));
          }
        }
      }
    }
    return rep;
  }

  //! A graph file with extra lines `coset V I`, `idempotent V` and
  //! `action I x J`.
  inline RClassModel read_model(std::string_view text) {
    RClassModel                                           m;
    std::vector<std::pair<vertex_type, std::size_t>>      cos;
    std::optional<vertex_type>                            idem;
    std::vector<std::pair<std::string, std::size_t>>      eword;
    std::vector<std::tuple<std::size_t, std::string, std::size_t, std::size_t>> acts;
    auto parse_index = [](std::string_view t, std::size_t line) {
      return static_cast<std::size_t>(detail::parse_vertex(t, line));
    };
    m.graph = detail::read_graph_with(
        text, [&](LabeledDigraph&, std::vector<std::string_view> const& tok, std::size_t line) {
          if (tok[0] == "coset") {
            if (tok.size() != 3) {
              throw ParseError("expected \"coset V I\"", line, 1);
            }
            cos.emplace_back(detail::parse_vertex(tok[1], line), parse_index(tok[2], line));
            return true;
          }
          if (tok[0] == "idempotent") {
            if (tok.size() < 2) {
              throw ParseError("expected \"idempotent V [word]\"", line, 1);
            }
            idem = detail::parse_vertex(tok[1], line);
            for (std::size_t i = 2; i < tok.size(); ++i) {
              eword.emplace_back(tok[i], line);
            }
            return true;
          }
          if (tok[0] == "action") {
            if (tok.size() != 4) {
              throw ParseError("expected \"action I x J\"", line, 1);
            }
            acts.emplace_back(parse_index(tok[1], line), std::string(tok[2]),
                              parse_index(tok[3], line), line);
            return true;
          }
          return false;
        });
    auto n  = m.graph.num_vertices();
    m.coset.assign(n, 0);
    for (auto [v, i] : cos) {
      if (v >= n) {
        throw ParseError("coset line names vertex " + std::to_string(v) + " out of range");
      }
      if (i == 0) {
        throw ParseError("coset indices start at 1");
      }
      m.coset[v] = i;
    }
    for (vertex_type v = 0; v < n; ++v) {
      if (m.coset[v] == 0) {
        throw ParseError("vertex " + std::to_string(v) + " has no coset");
      }
    }
    if (!idem) {
      throw ParseError("missing \"idempotent V\" line");
    }
    if (*idem >= n || m.coset[*idem] != 1) {
      throw ParseError("the idempotent must lie in coset 1");
    }
    m.idempotent = *idem;
    auto letter  = [&](std::string const& name, std::size_t line) {
      std::string_view s   = name;
      bool             inv = false;
      if (!s.empty() && s.back() == '\'') {
        inv = true;
        s.remove_suffix(1);
      }
      auto g = m.graph.labels().index(s);
      if (!g) {
        throw ParseError("unknown label \"" + name + "\"", line, 1);
      }
      return make_letter(*g, inv);
    };
    for (auto const& [name, line] : eword) {
      m.idempotent_word.push_back(letter(name, line));
    }
    for (auto const& [i, name, j, line] : acts) {
      m.action[{i, letter(name, line)}] = j;
    }
    return m;
  }

  inline std::string write_model(RClassModel const& m) {
    auto out = write_graph(m.graph);
    for (vertex_type v = 0; v < m.coset.size(); ++v) {
      out += "coset " + std::to_string(v) + " " + std::to_string(m.coset[v]) + "\n";
    }
    out += "idempotent " + std::to_string(m.idempotent);
    for (auto x : m.idempotent_word) {
      out += " " + m.graph.labels().letter_name(x);
    }
    out += "\n";
    for (auto const& [k, j] : m.action) {
      out += "action " + std::to_string(k.first) + " " + m.graph.labels().letter_name(k.second)
             + " " + std::to_string(j) + "\n";
    }
    return out;
  }

  //! Cuts a finite deterministic Schützenberger graph of 1 into H-classes:
  //! u and v share a coset iff the graph rerooted at u is isomorphic to the
  //! graph rerooted at v, i.e. u'u = v'v.
  inline RClassModel model_from_schutzenberger(LabeledDigraph const& g) {
    if (!g.root()) {
      throw Error("model_from_schutzenberger: graph has no root");
    }
    if (!bideterminism_violations(g).empty()) {
      throw Error("model_from_schutzenberger: graph is not deterministic");
    }
    if (!is_connected(g)) {
      throw Error("model_from_schutzenberger: graph is not connected");
    }
    RClassModel m;
    m.graph      = g;
    m.idempotent = *g.root();
    m.coset.assign(g.num_vertices(), 0);
    std::map<std::vector<Edge>, std::size_t> classes;
    auto                                     key = [&](vertex_type v) {
      auto h = g;
      h.set_root(v);
      return canonical_numbering(h).edges();
    };
    classes.emplace(key(m.idempotent), 1);
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      auto [it, fresh] = classes.emplace(key(v), classes.size() + 1);
      m.coset[v]       = it->second;
    }
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      for (letter_type x = 0; x < g.labels().letters(); ++x) {
        auto t = g.follow(v, x);
        m.action.emplace(std::make_pair(m.coset[v], x), t ? m.coset[*t] : 0);
      }
    }
    return m;
  }

  struct Enlargement {
    std::size_t           kappa   = 0;
    std::size_t           upsilon = 0;  // radius that produced J''
    std::set<std::size_t> J2;
    bool                  connected = false;
    CoverBound            bound;       // Delta'' against Delta
  };

  struct CoverAnalysis {
    std::set<std::size_t>    J;
    std::vector<vertex_type> members;
    bool                     connected = false;
    BoundaryReport           width;
    std::optional<Enlargement> enlargement;
  };

  namespace detail {
    inline void check_indices(RClassModel const& m, std::set<std::size_t> const& J) {
      auto all = m.indices();
      for (auto i : J) {
        if (all.count(i) == 0) {
          throw Error("coset " + std::to_string(i) + " is not a partition index");
        }
      }
    }

    inline std::set<std::size_t> cosets_met(RClassModel const&              m,
                                            std::vector<vertex_type> const& vs) {
      std::set<std::size_t> out;
      for (auto v : vs) {
        out.insert(m.coset[v]);
      }
      return out;
    }
  }  // namespace detail

  //! Grows J' by the cosets met by balls of radius kappa, kappa + 1, ...
  //! around the union of J until the union of the result is connected.
  inline Enlargement enlarge_cover(RClassModel const&           m,
                                   std::set<std::size_t> const& J,
                                   std::set<std::size_t> const& J1,
                                   BoundaryMode                 mode = BoundaryMode::literal) {
    detail::check_indices(m, J);
    detail::check_indices(m, J1);
    Enlargement e;
    auto        D = m.members(J);
    e.kappa       = boundary_width(m.graph, D, mode).width;
    auto const all = m.indices();
    for (std::size_t u = e.kappa;; ++u) {
      auto J2 = detail::cosets_met(m, ball_cover(m.graph, D, u));
      J2.insert(J.begin(), J.end());
      J2.insert(J1.begin(), J1.end());
      auto members = m.members(J2);
      if (is_connected(m.graph, members) || J2 == all) {
        e.upsilon   = u;
        e.J2        = std::move(J2);
        e.connected = is_connected(m.graph, members);
        e.bound     = check_spread_bound(m.graph, D, members, mode);
        return e;
      }
    }
  }

  inline CoverAnalysis cover_analysis(RClassModel const&           m,
                                      std::set<std::size_t> const& J,
                                      BoundaryMode                 mode = BoundaryMode::literal,
                                      std::set<std::size_t> const& J1   = {}) {
    detail::check_indices(m, J);
    if (J.count(1) == 0) {
      throw Error("the coset set must contain 1");
    }
    CoverAnalysis a;
    a.J         = J;
    a.members   = m.members(J);
    a.connected = is_connected(m.graph, a.members);
    a.width     = boundary_width(m.graph, a.members, mode);
    if (m.has_action()) {
      a.enlargement = enlarge_cover(m, J, J1, mode);
    }
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // Short loops and the fundamental group
  ////////////////////////////////////////////////////////////////////////

  struct LoopGeneration {
    std::size_t       rank = 0;  // of the free group on chords
    std::vector<Word> loops;     // reduced chord words of the short loops
    LabeledDigraph    folded;
    bool              generates = false;
  };

  //! Conjugates of closed walks of length at most k by tree paths; whether
  //! they generate pi_1 of the graph, decided by folding.
  inline LoopGeneration lk_loops(LabeledDigraph const& g, vertex_type base, std::size_t k) {
    g.check_vertex(base);
    if (!is_connected(g)) {
      throw Error("lk_generates_pi1: graph is not connected");
    }
    auto const es = g.edges();
    auto const n  = g.num_vertices();
    // incident (edge id, direction, other end)
    struct Inc {
      std::size_t id;
      bool        forward;
      vertex_type other;
    };
    std::vector<std::vector<Inc>> inc(n);
    for (std::size_t i = 0; i < es.size(); ++i) {
      inc[es[i].src].push_back({i, true, es[i].dst});
      inc[es[i].dst].push_back({i, false, es[i].src});
    }
    std::vector<char>        tree(es.size(), 0), seen(n, 0);
    std::deque<vertex_type>  q{base};
    seen[base] = 1;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (auto const& c : inc[v]) {
        if (!seen[c.other]) {
          seen[c.other] = 1;
          tree[c.id]    = 1;
          q.push_back(c.other);
        }
      }
    }
    constexpr auto           no_chord = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> chord(es.size(), no_chord);
    LoopGeneration           out;
    Alphabet                 names;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!tree[i]) {
        chord[i] = out.rank++;
        names.add("c" + std::to_string(chord[i]));
      }
    }
    out.folded = LabeledDigraph(names, 1);
    out.folded.set_root(0);
    if (out.rank == 0) {
      out.generates = true;
      return out;
    }

    std::set<Word> loops;
    Word           w;
    for (vertex_type v = 0; v < n; ++v) {
      auto dist = bfs_distances(g, std::vector<vertex_type>{v}, k);
      // non-backtracking walks that can still return to v in time
      std::vector<std::pair<std::size_t, bool>> used;
      auto dfs = [&](auto&& self, vertex_type at, std::size_t len) -> void {
        if (len > 0 && at == v) {
          auto r = free_reduce(w);
          if (!r.empty()) {
            loops.insert(r);
          }
        }
        if (len == k) {
          return;
        }
        for (auto const& c : inc[at]) {
          if (!used.empty() && used.back().first == c.id && used.back().second != c.forward) {
            continue;
          }
          if (dist[c.other] == unreachable || dist[c.other] + len + 1 > k) {
            continue;
          }
          bool is_chord = chord[c.id] != no_chord;
          if (is_chord) {
            w.push_back(make_letter(chord[c.id], !c.forward));
          }
          used.push_back({c.id, c.forward});
          self(self, c.other, len + 1);
          used.pop_back();
          if (is_chord) {
            w.pop_back();
          }
        }
      };
      dfs(dfs, v, 0);
    }
    out.loops.assign(loops.begin(), loops.end());

    LabeledDigraph flower(names, 1);
    flower.set_root(0);
    for (auto const& l : out.loops) {
      vertex_type at = 0;
      for (std::size_t i = 0; i < l.size(); ++i) {
        vertex_type next = i + 1 == l.size() ? 0 : flower.add_vertex();
        flower.add_letter_edge(at, l[i], next);
        at = next;
      }
    }
    out.folded    = fold(flower).graph;
    out.generates = out.folded.num_vertices() == 1 && out.folded.num_edges() == out.rank;
    return out;
  }

  inline bool lk_generates_pi1(LabeledDigraph const& g, vertex_type base, std::size_t k) {
    return lk_loops(g, base, k).generates;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quasi-isometries
  ////////////////////////////////////////////////////////////////////////

  struct QiParams {
    double lambda  = 1;
    double epsilon = 0;
    double mu      = 0;

    void validate() const {
      if (!(lambda >= 1) || !(epsilon >= 0) || !(mu >= 0)) {
        throw Error("quasi-isometry constants need lambda >= 1, epsilon >= 0, mu >= 0");
      }
    }
  };

  //! Distance distortion of f on all pairs of `sample` and quasi-density of
  //! the image inside `target`.
  inline CheckReport qi_check(LabeledDigraph const&                          g1,
                              LabeledDigraph const&                          g2,
                              std::vector<std::optional<vertex_type>> const& f,
                              QiParams const&                                prm,
                              std::vector<vertex_type> const&                sample,
                              std::vector<vertex_type> const&                target) {
    prm.validate();
    CheckReport rep;
    auto&       dist = rep.add("distance distortion");
    auto&       dens = rep.add("quasi-density");
    for (auto x : sample) {
      if (x >= f.size() || !f[x]) {
        throw Error("qi_check: vertex " + std::to_string(x) + " has no image");
      }
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
      auto x  = sample[i];
      auto d1 = bfs_distances(g1, x);
      auto d2 = bfs_distances(g2, *f[x]);
      for (std::size_t j = i; j < sample.size(); ++j) {
        auto y = sample[j];
        if (d1[y] == unreachable) {
          continue;
        }
        ++dist.checked;
        auto   a  = static_cast<double>(d1[y]);
        auto   b  = static_cast<double>(d2[*f[y]]);
        bool   ok = d2[*f[y]] != unreachable && a / prm.lambda - prm.epsilon <= b
                  && b <= prm.lambda * a + prm.epsilon;
        if (!ok) {
          dist.fail("pair (" + std::to_string(x) + ", " + std::to_string(y) + "): d = "
                    + std::to_string(d1[y]) + ", d' = "
                    + (d2[*f[y]] == unreachable ? std::string("inf")
                                                : std::to_string(d2[*f[y]])));
        }
      }
    }
    std::vector<vertex_type> image;
    for (auto x : sample) {
      image.push_back(*f[x]);
    }
    auto d = image.empty() ? std::vector<std::size_t>(g2.num_vertices(), unreachable)
                           : bfs_distances(g2, image);
    for (auto v : target) {
      ++dens.checked;
      if (d.at(v) == unreachable || static_cast<double>(d[v]) > prm.mu) {
        dens.fail("vertex " + std::to_string(v) + " is "
                  + (d[v] == unreachable ? std::string("not reachable")
                                         : std::to_string(d[v]) + " away")
                  + " from the image");
      }
    }
    return rep;
  }

  struct QiR1Report {
    CheckReport              report;
    std::size_t              lambda   = 0;
    std::size_t              vertices = 0;
    std::size_t              interior = 0;  // sampled vertices
    std::size_t              delta_edges = 0;
    bool                     stabilized = false;
    bool                     capped     = false;
    std::vector<vertex_type> sample;
    LabeledDigraph           gamma;
    LabeledDigraph           delta;  // labels are prefix generator indices
  };

  struct QiR1Options {
    StephenBudget              budget{8, 200000, 5};
    std::optional<std::size_t> margin;  // default ceil(lambda / 2)
    std::size_t                max_sample = 400;
    std::uint64_t              seed       = 1;
  };

  //! Compares the Schützenberger graph of 1 with the Cayley graph of the
  //! right units on the relator prefixes. Both are built on one Stephen
  //! approximation: a Delta-edge x -> x.p is the endpoint of reading p at x,
  //! so two words name the same Delta vertex exactly when they are equal
  //! right units in the approximation.
  inline QiR1Report qi_r1_check(Presentation const& p, QiR1Options const& opt = {}) {
    QiR1Report out;
    out.lambda  = p.max_relator_length();
    auto approx = approximate(p, {}, opt.budget);
    out.gamma      = approx.graph;
    out.stabilized = approx.stabilized;
    out.capped     = approx.capped;
    auto const& g  = out.gamma;
    auto const  n  = g.num_vertices();
    out.vertices   = n;

    auto     gens = prefix_generators(p);
    Alphabet dl;
    for (std::size_t i = 0; i < gens.words.size(); ++i) {
      dl.add("p" + std::to_string(i));
    }
    out.delta = LabeledDigraph(dl, n);
    out.delta.set_root(approx.root());
    for (vertex_type v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < gens.words.size(); ++i) {
        if (auto t = g.read(v, gens.words[i])) {
          out.delta.add_edge(v, static_cast<std::uint32_t>(i), *t);
          ++out.delta_edges;
        }
      }
    }

    auto                     margin = opt.margin.value_or((out.lambda + 1) / 2);
    auto                     droot  = bfs_distances(g, approx.root());
    std::vector<vertex_type> interior;
    for (vertex_type v = 0; v < n; ++v) {
      bool inside = approx.stabilized
                    || (opt.budget.radius && droot[v] != unreachable
                        && droot[v] + margin <= *opt.budget.radius);
      if (inside) {
        interior.push_back(v);
      }
    }
    if (interior.size() > opt.max_sample) {
      std::mt19937_64 rng(opt.seed);
      std::shuffle(interior.begin(), interior.end(), rng);
      interior.resize(opt.max_sample);
      std::sort(interior.begin(), interior.end());
    }
    out.sample   = interior;
    out.interior = interior.size();

    auto& up   = out.report.add("d_Gamma <= lambda d_Delta");
    auto& down = out.report.add("d_Delta <= 2 d_Gamma");
    for (std::size_t i = 0; i < interior.size(); ++i) {
      auto x  = interior[i];
      auto dg = bfs_distances(g, x);
      auto dd = bfs_distances(out.delta, x);
      for (std::size_t j = i; j < interior.size(); ++j) {
        auto y = interior[j];
        ++up.checked;
        ++down.checked;
        auto pair = "(" + std::to_string(x) + ", " + std::to_string(y) + "): d_Gamma = "
                    + std::to_string(dg[y]) + ", d_Delta = "
                    + (dd[y] == unreachable ? std::string("inf") : std::to_string(dd[y]));
        if (dd[y] == unreachable || dg[y] > out.lambda * dd[y]) {
          up.fail(pair);
        }
        if (dd[y] == unreachable || dd[y] > 2 * dg[y]) {
          down.fail(pair);
        }
      }
    }
    return out;
  }

}  // namespace invmon

#endif  // INVMON_BOUNDARY_HPP_
