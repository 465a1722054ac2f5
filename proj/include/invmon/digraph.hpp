// Edge-labelled digraphs with Serre-pair traversal: folding, distances,
// balls, induced subgraphs, rooted isomorphism, DOT and text I/O.

#ifndef INVMON_DIGRAPH_HPP_
#define INVMON_DIGRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace invmon {

  using vertex_type = std::uint32_t;

  constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

  struct HalfEdge {
    std::uint32_t label;
    vertex_type   target;

    bool operator==(HalfEdge const&) const = default;
    auto operator<=>(HalfEdge const&) const = default;
  };

  struct Edge {
    vertex_type   src;
    std::uint32_t label;
    vertex_type   dst;

    bool operator==(Edge const&) const = default;
    auto operator<=>(Edge const&) const = default;
  };

  //! Edges are stored once with a positive label; reading x' means following
  //! an x-edge backwards.
  class LabeledDigraph {
   public:
    LabeledDigraph() = default;
    explicit LabeledDigraph(Alphabet labels, std::size_t n = 0)
        : _labels(std::move(labels)), _out(n), _in(n) {}

    std::size_t num_vertices() const noexcept {
      return _out.size();
    }

    std::size_t num_edges() const noexcept {
      return _num_edges;
    }

    vertex_type add_vertex() {
      _out.emplace_back();
      _in.emplace_back();
      return static_cast<vertex_type>(_out.size() - 1);
    }

    void add_vertices(std::size_t n) {
      _out.resize(_out.size() + n);
      _in.resize(_in.size() + n);
    }

    void add_edge(vertex_type s, std::uint32_t label, vertex_type t) {
      check_vertex(s);
      check_vertex(t);
      if (label >= _labels.size()) {
        throw Error("edge label " + std::to_string(label) + " not in alphabet");
      }
      _out[s].push_back({label, t});
      _in[t].push_back({label, s});
      ++_num_edges;
    }

    //! Adds the edge only if no identical edge is present.
    bool add_edge_unique(vertex_type s, std::uint32_t label, vertex_type t) {
      if (has_edge(s, label, t)) {
        return false;
      }
      add_edge(s, label, t);
      return true;
    }

    //! Adds an edge read along a signed letter: x' from s to t is an x-edge
    //! from t to s.
    void add_letter_edge(vertex_type s, letter_type x, vertex_type t) {
      if (is_inverse_letter(x)) {
        add_edge(t, static_cast<std::uint32_t>(generator_of(x)), s);
      } else {
        add_edge(s, static_cast<std::uint32_t>(generator_of(x)), t);
      }
    }

    bool has_edge(vertex_type s, std::uint32_t label, vertex_type t) const {
      check_vertex(s);
      auto const& o = _out[s];
      return std::find(o.begin(), o.end(), HalfEdge{label, t}) != o.end();
    }

    std::vector<HalfEdge> const& out_edges(vertex_type v) const {
      return _out.at(v);
    }

    std::vector<HalfEdge> const& in_edges(vertex_type v) const {
      return _in.at(v);
    }

    //! First vertex reached from v along the signed letter x.
    std::optional<vertex_type> follow(vertex_type v, letter_type x) const {
      auto const& lst = is_inverse_letter(x) ? _in[v] : _out[v];
      auto        g   = static_cast<std::uint32_t>(generator_of(x));
      for (auto const& e : lst) {
        if (e.label == g) {
          return e.target;
        }
      }
      return std::nullopt;
    }

    //! Endpoint of the walk from v labelled w, if readable. Deterministic
    //! graphs have at most one such walk.
    std::optional<vertex_type> read(vertex_type v, Word const& w) const {
      check_vertex(v);
      for (auto x : w) {
        auto n = follow(v, x);
        if (!n) {
          return std::nullopt;
        }
        v = *n;
      }
      return v;
    }

    std::vector<Edge> edges() const {
      std::vector<Edge> out;
      out.reserve(_num_edges);
      for (vertex_type s = 0; s < _out.size(); ++s) {
        for (auto const& e : _out[s]) {
          out.push_back({s, e.label, e.target});
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    template <typename Pred>
    std::size_t remove_edges_if(Pred&& pred) {
      std::size_t removed = 0;
      for (vertex_type s = 0; s < _out.size(); ++s) {
        auto& o = _out[s];
        auto  it = std::remove_if(o.begin(), o.end(), [&](HalfEdge const& e) {
          return pred(Edge{s, e.label, e.target});
        });
        removed += static_cast<std::size_t>(o.end() - it);
        o.erase(it, o.end());
      }
      for (vertex_type t = 0; t < _in.size(); ++t) {
        auto& i = _in[t];
        i.erase(std::remove_if(i.begin(),
                               i.end(),
                               [&](HalfEdge const& e) {
                                 return pred(Edge{e.target, e.label, t});
                               }),
                i.end());
      }
      _num_edges -= removed;
      return removed;
    }

    //! Every signed-letter neighbour of v, in letter order.
    std::vector<std::pair<letter_type, vertex_type>> neighbours(vertex_type v) const {
      std::vector<std::pair<letter_type, vertex_type>> out;
      for (auto const& e : _out[v]) {
        out.emplace_back(make_letter(e.label), e.target);
      }
      for (auto const& e : _in[v]) {
        out.emplace_back(make_letter(e.label, true), e.target);
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    Alphabet const& labels() const noexcept {
      return _labels;
    }

    //! Index of the label, registering it if new.
    std::uint32_t label(std::string const& name) {
      if (auto i = _labels.index(name)) {
        return static_cast<std::uint32_t>(*i);
      }
      return static_cast<std::uint32_t>(_labels.add(name));
    }

    std::optional<vertex_type> root() const noexcept {
      return _root;
    }

    void set_root(vertex_type r) {
      check_vertex(r);
      _root = r;
    }

    void clear_root() noexcept {
      _root.reset();
    }

    void check_vertex(vertex_type v) const {
      if (v >= _out.size()) {
        throw Error("vertex " + std::to_string(v) + " out of range (graph has "
                    + std::to_string(_out.size()) + " vertices)");
      }
    }

   private:
    Alphabet                           _labels;
    std::vector<std::vector<HalfEdge>> _out;
    std::vector<std::vector<HalfEdge>> _in;
    std::size_t                        _num_edges = 0;
    std::optional<vertex_type>         _root;
  };

  ////////////////////////////////////////////////////////////////////////
  // Determinism
  ////////////////////////////////////////////////////////////////////////

  struct DeterminismViolation {
    vertex_type   vertex;
    std::uint32_t label;
    bool          incoming;
  };

  inline std::optional<DeterminismViolation> find_nondeterminism(LabeledDigraph const& g,
                                                                 vertex_type           v) {
    for (int side = 0; side < 2; ++side) {
      auto lst = side == 0 ? g.out_edges(v) : g.in_edges(v);
      std::sort(lst.begin(), lst.end());
      for (std::size_t i = 1; i < lst.size(); ++i) {
        if (lst[i].label == lst[i - 1].label) {
          return DeterminismViolation{v, lst[i].label, side == 1};
        }
      }
    }
    return std::nullopt;
  }

  inline std::vector<DeterminismViolation> bideterminism_violations(LabeledDigraph const& g) {
    std::vector<DeterminismViolation> out;
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      if (auto bad = find_nondeterminism(g, v)) {
        out.push_back(*bad);
      }
    }
    return out;
  }

  inline bool is_bideterministic(LabeledDigraph const& g) {
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      if (find_nondeterminism(g, v)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  struct FoldResult {
    LabeledDigraph           graph;
    std::vector<vertex_type> map;  // old vertex -> new vertex
  };

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n), _size(n, 1) {
        std::iota(_parent.begin(), _parent.end(), vertex_type(0));
      }

      vertex_type find(vertex_type x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      std::size_t& size(vertex_type x) {
        return _size[x];
      }

      void attach(vertex_type child, vertex_type parent) {
        _parent[child] = parent;
        _size[parent] += _size[child];
      }

     private:
      std::vector<vertex_type> _parent;
      std::vector<std::size_t> _size;
    };

    //! Numbers the classes by BFS from `start`, following signed letters in
    //! order; components not reached are numbered afterwards, each by BFS
    //! from its least vertex.
    inline std::vector<vertex_type> bfs_renumbering(LabeledDigraph const&      g,
                                                    std::optional<vertex_type> start) {
      constexpr auto           none = std::numeric_limits<vertex_type>::max();
      std::vector<vertex_type> canon(g.num_vertices(), none);
      vertex_type              cnt = 0;
      std::deque<vertex_type>  q;
      auto                     run = [&](vertex_type s) {
        canon[s] = cnt++;
        q.push_back(s);
        while (!q.empty()) {
          auto v = q.front();
          q.pop_front();
          for (auto const& [x, u] : g.neighbours(v)) {
            if (canon[u] == none) {
              canon[u] = cnt++;
              q.push_back(u);
            }
          }
        }
      };
      if (start) {
        run(*start);
      }
      for (vertex_type v = 0; v < g.num_vertices(); ++v) {
        if (canon[v] == none) {
          run(v);
        }
      }
      return canon;
    }

    inline LabeledDigraph permute(LabeledDigraph const& g, std::vector<vertex_type> const& canon) {
      LabeledDigraph out(g.labels(), g.num_vertices());
      auto           es = g.edges();
      for (auto& e : es) {
        e = {canon[e.src], e.label, canon[e.dst]};
      }
      std::sort(es.begin(), es.end());
      for (auto const& e : es) {
        out.add_edge(e.src, e.label, e.dst);
      }
      if (g.root()) {
        out.set_root(canon[*g.root()]);
      }
      return out;
    }
  }  // namespace detail

  //! Stallings folding: merges the endpoints of equally labelled edges
  //! leaving or entering a common vertex until the graph is bi-deterministic.
  //! The result is renumbered by BFS from the image of the root.
  inline FoldResult fold(LabeledDigraph const& g) {
    auto const         n = g.num_vertices();
    detail::UnionFind  uf(n);
    std::vector<std::vector<HalfEdge>>               out(n), in(n);
    std::vector<std::pair<vertex_type, vertex_type>> work;

    auto add = [&](std::vector<HalfEdge>& lst, HalfEdge e) {
      for (auto const& f : lst) {
        if (f.label == e.label) {
          if (uf.find(f.target) != uf.find(e.target)) {
            work.emplace_back(f.target, e.target);
          }
          return;
        }
      }
      lst.push_back(e);
    };

    for (auto const& e : g.edges()) {
      add(out[e.src], {e.label, e.dst});
      add(in[e.dst], {e.label, e.src});
    }
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = uf.find(x);
      y = uf.find(y);
      if (x == y) {
        continue;
      }
      if (uf.size(x) < uf.size(y)) {
        std::swap(x, y);
      }
      uf.attach(y, x);
      auto oy = std::move(out[y]);
      auto iy = std::move(in[y]);
      out[y].clear();
      in[y].clear();
      for (auto const& e : oy) {
        add(out[x], e);
      }
      for (auto const& e : iy) {
        add(in[x], e);
      }
    }

    // quotient on class representatives, then renumber
    std::vector<vertex_type> rep_index(n, std::numeric_limits<vertex_type>::max());
    std::vector<vertex_type> reps;
    for (vertex_type v = 0; v < n; ++v) {
      auto r = uf.find(v);
      if (rep_index[r] == std::numeric_limits<vertex_type>::max()) {
        rep_index[r] = static_cast<vertex_type>(reps.size());
        reps.push_back(r);
      }
    }
    LabeledDigraph quot(g.labels(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (auto const& e : out[reps[i]]) {
        quot.add_edge(static_cast<vertex_type>(i), e.label, rep_index[uf.find(e.target)]);
      }
    }
    std::optional<vertex_type> start;
    if (g.root()) {
      start = rep_index[uf.find(*g.root())];
      quot.set_root(*start);
    }
    auto       canon = detail::bfs_renumbering(quot, start);
    FoldResult res{detail::permute(quot, canon), std::vector<vertex_type>(n)};
    for (vertex_type v = 0; v < n; ++v) {
      res.map[v] = canon[rep_index[uf.find(v)]];
    }
    return res;
  }

  //! Renumbers by BFS from the root without merging anything.
  inline LabeledDigraph canonical_numbering(LabeledDigraph const& g) {
    return detail::permute(g, detail::bfs_renumbering(g, g.root()));
  }

  ////////////////////////////////////////////////////////////////////////
  // Distances
  ////////////////////////////////////////////////////////////////////////

  //! Undirected BFS distances from the sources; `allowed`, when nonempty,
  //! restricts the walk to those vertices. Unreached vertices get
  //! `unreachable`.
  inline std::vector<std::size_t> bfs_distances(LabeledDigraph const&          g,
                                                std::vector<vertex_type> const& sources,
                                                std::size_t max_dist = unreachable,
                                                std::vector<char> const& allowed = {}) {
    std::vector<std::size_t> d(g.num_vertices(), unreachable);
    std::deque<vertex_type>  q;
    for (auto s : sources) {
      g.check_vertex(s);
      if (d[s] != 0) {
        d[s] = 0;
        q.push_back(s);
      }
    }
    auto visit = [&](vertex_type u, std::size_t du) {
      if (d[u] == unreachable && (allowed.empty() || allowed[u])) {
        d[u] = du;
        q.push_back(u);
      }
    };
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      if (d[v] >= max_dist) {
        continue;
      }
      for (auto const& e : g.out_edges(v)) {
        visit(e.target, d[v] + 1);
      }
      for (auto const& e : g.in_edges(v)) {
        visit(e.target, d[v] + 1);
      }
    }
    return d;
  }

  inline std::vector<std::size_t> bfs_distances(LabeledDigraph const& g, vertex_type source) {
    return bfs_distances(g, std::vector<vertex_type>{source});
  }

  inline std::optional<std::size_t> undirected_distance(LabeledDigraph const& g,
                                                        vertex_type           x,
                                                        vertex_type           y) {
    g.check_vertex(y);
    auto d = bfs_distances(g, x);
    if (d[y] == unreachable) {
      return std::nullopt;
    }
    return d[y];
  }

  //! Label of a shortest undirected walk from x to y, letters tried in order.
  inline std::optional<Word> shortest_word(LabeledDigraph const& g,
                                           vertex_type           x,
                                           vertex_type           y,
                                           std::vector<char> const& allowed = {}) {
    g.check_vertex(x);
    g.check_vertex(y);
    std::vector<std::pair<vertex_type, letter_type>> pred(
        g.num_vertices(), {std::numeric_limits<vertex_type>::max(), 0});
    std::vector<char>       seen(g.num_vertices(), 0);
    std::deque<vertex_type> q{x};
    seen[x] = 1;
    while (!q.empty() && !seen[y]) {
      auto v = q.front();
      q.pop_front();
      for (auto const& [l, u] : g.neighbours(v)) {
        if (!seen[u] && (allowed.empty() || allowed[u])) {
          seen[u] = 1;
          pred[u] = {v, l};
          q.push_back(u);
        }
      }
    }
    if (!seen[y]) {
      return std::nullopt;
    }
    Word w;
    for (auto v = y; v != x; v = pred[v].first) {
      w.push_back(pred[v].second);
    }
    std::reverse(w.begin(), w.end());
    return w;
  }

  struct Ball {
    vertex_type              center = 0;
    std::size_t              radius = 0;
    std::vector<vertex_type> members;  // sorted
  };

  inline Ball ball(LabeledDigraph const& g, vertex_type center, std::size_t r) {
    auto d = bfs_distances(g, {center}, r);
    Ball b{center, r, {}};
    for (vertex_type v = 0; v < d.size(); ++v) {
      if (d[v] <= r) {
        b.members.push_back(v);
      }
    }
    return b;
  }

  inline std::vector<char> membership(std::size_t n, std::vector<vertex_type> const& s) {
    std::vector<char> in(n, 0);
    for (auto v : s) {
      if (v >= n) {
        throw Error("vertex " + std::to_string(v) + " out of range");
      }
      in[v] = 1;
    }
    return in;
  }

  struct InducedSubgraph {
    LabeledDigraph           graph;
    std::vector<vertex_type> origin;  // new vertex -> old vertex
  };

  //! Keeps exactly the edges with both ends in S; vertices in increasing
  //! order of their old ids.
  inline InducedSubgraph induced_subgraph(LabeledDigraph const& g, std::vector<vertex_type> S) {
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    auto                     in = membership(g.num_vertices(), S);
    std::vector<vertex_type> idx(g.num_vertices(), 0);
    for (vertex_type i = 0; i < S.size(); ++i) {
      idx[S[i]] = i;
    }
    InducedSubgraph res{LabeledDigraph(g.labels(), S.size()), S};
    for (auto const& e : g.edges()) {
      if (in[e.src] && in[e.dst]) {
        res.graph.add_edge(idx[e.src], e.label, idx[e.dst]);
      }
    }
    if (g.root() && in[*g.root()]) {
      res.graph.set_root(idx[*g.root()]);
    }
    return res;
  }

  inline bool is_connected(LabeledDigraph const& g, std::vector<vertex_type> const& S) {
    if (S.empty()) {
      return true;
    }
    auto in = membership(g.num_vertices(), S);
    auto d  = bfs_distances(g, {S.front()}, unreachable, in);
    return std::all_of(S.begin(), S.end(), [&](vertex_type v) { return d[v] != unreachable; });
  }

  inline bool is_connected(LabeledDigraph const& g) {
    std::vector<vertex_type> all(g.num_vertices());
    std::iota(all.begin(), all.end(), vertex_type(0));
    return is_connected(g, all);
  }

  ////////////////////////////////////////////////////////////////////////
  // Rooted isomorphism
  ////////////////////////////////////////////////////////////////////////

  //! Synchronised traversal from the roots; both graphs must be
  //! bi-deterministic.
  inline bool rooted_isomorphic(LabeledDigraph const& g1, LabeledDigraph const& g2) {
    if (!g1.root() || !g2.root()) {
      throw Error("rooted_isomorphic: missing root");
    }
    if (g1.num_vertices() != g2.num_vertices() || g1.num_edges() != g2.num_edges()
        || g1.labels().names() != g2.labels().names()) {
      return false;
    }
    constexpr auto           none = std::numeric_limits<vertex_type>::max();
    std::vector<vertex_type> f(g1.num_vertices(), none), b(g2.num_vertices(), none);
    std::deque<vertex_type>  q;
    f[*g1.root()] = *g2.root();
    b[*g2.root()] = *g1.root();
    q.push_back(*g1.root());
    std::size_t matched = 1;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      auto n1 = g1.neighbours(v);
      auto n2 = g2.neighbours(f[v]);
      if (n1.size() != n2.size()) {
        return false;
      }
      for (std::size_t i = 0; i < n1.size(); ++i) {
        auto [x1, u1] = n1[i];
        auto [x2, u2] = n2[i];
        if (x1 != x2) {
          return false;
        }
        if (f[u1] == none && b[u2] == none) {
          f[u1] = u2;
          b[u2] = u1;
          ++matched;
          q.push_back(u1);
        } else if (f[u1] != u2 || b[u2] != u1) {
          return false;
        }
      }
    }
    return matched == g1.num_vertices();
  }

  ////////////////////////////////////////////////////////////////////////
  // Text formats
  ////////////////////////////////////////////////////////////////////////

  struct DotOptions {
    std::string              name;
    std::vector<vertex_type> highlight;
  };

  inline std::string export_dot(LabeledDigraph const& g, DotOptions const& opt = {}) {
    std::ostringstream os;
    os << "digraph " << (opt.name.empty() ? "" : "\"" + opt.name + "\" ") << "{\n";
    auto hl = membership(g.num_vertices(), opt.highlight);
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      os << "  " << v;
      if (g.root() && *g.root() == v) {
        os << " [shape=doublecircle]";
      } else if (hl[v]) {
        os << " [style=filled]";
      }
      os << ";\n";
    }
    for (auto const& e : g.edges()) {
      os << "  " << e.src << " -> " << e.dst << " [label=\"" << g.labels().name(e.label)
         << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  //! `vertices N [root R]`, optional `labels ...`, then `src label dst` lines.
  //! A label written `x'` adds the reversed x-edge.
  inline std::string write_graph(LabeledDigraph const& g) {
    std::ostringstream os;
    os << "vertices " << g.num_vertices();
    if (g.root()) {
      os << " root " << *g.root();
    }
    os << "\nlabels";
    for (auto const& n : g.labels().names()) {
      os << ' ' << n;
    }
    os << '\n';
    for (auto const& e : g.edges()) {
      os << e.src << ' ' << g.labels().name(e.label) << ' ' << e.dst << '\n';
    }
    return os.str();
  }

  namespace detail {
    inline vertex_type parse_vertex(std::string_view tok, std::size_t line) {
      vertex_type v = 0;
      if (tok.empty()) {
        throw ParseError("expected a vertex id", line, 1);
      }
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          throw ParseError("expected a vertex id, found \"" + std::string(tok) + "\"", line, 1);
        }
        v = v * 10 + static_cast<vertex_type>(c - '0');
      }
      return v;
    }

    //! Handles the graph part of a file; returns false on lines it does not
    //! recognise so model files can extend the format.
    template <typename Extra>
    LabeledDigraph read_graph_with(std::string_view text, Extra&& extra) {
      LabeledDigraph g;
      bool           header = false;
      std::size_t    lineno = 0, pos = 0;
      while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos      = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) {
          raw = raw.substr(0, hash);
        }
        auto tok = split_ws(raw);
        if (tok.empty()) {
          continue;
        }
        if (tok[0] == "vertices") {
          if (header) {
            throw ParseError("duplicate header", lineno, 1);
          }
          if (tok.size() != 2 && !(tok.size() == 4 && tok[2] == "root")) {
            throw ParseError("expected \"vertices N [root R]\"", lineno, 1);
          }
          g.add_vertices(parse_vertex(tok[1], lineno));
          if (tok.size() == 4) {
            g.set_root(parse_vertex(tok[3], lineno));
          }
          header = true;
          continue;
        }
        if (!header) {
          throw ParseError("expected \"vertices N\" header first", lineno, 1);
        }
        if (tok[0] == "labels") {
          for (std::size_t i = 1; i < tok.size(); ++i) {
            g.label(std::string(tok[i]));
          }
          continue;
        }
        if (extra(g, tok, lineno)) {
          continue;
        }
        if (tok.size() != 3) {
          throw ParseError("expected \"src label dst\"", lineno, 1);
        }
        auto s = parse_vertex(tok[0], lineno);
        auto t = parse_vertex(tok[2], lineno);
        if (s >= g.num_vertices() || t >= g.num_vertices()) {
          throw ParseError("vertex out of range", lineno, 1);
        }
        std::string_view name = tok[1];
        bool             inv  = false;
        if (!name.empty() && name.back() == '\'') {
          inv = true;
          name.remove_suffix(1);
        }
        std::uint32_t l;
        try {
          l = g.label(std::string(name));
        } catch (Error const& e) {
          throw ParseError(e.what(), lineno, 1);
        }
        g.add_letter_edge(s, make_letter(l, inv), t);
      }
      if (!header) {
        throw ParseError("missing \"vertices N\" header");
      }
      return g;
    }
  }  // namespace detail

  inline LabeledDigraph read_graph(std::string_view text) {
    return detail::read_graph_with(
        text, [](LabeledDigraph&, std::vector<std::string_view> const&, std::size_t) {
          return false;
        });
  }

  //! One vertex id per line.
  inline std::vector<vertex_type> read_subset(std::string_view text) {
    std::vector<vertex_type> out;
    std::size_t              lineno = 0;
    std::size_t              pos    = 0;
    while (pos <= text.size()) {
      auto nl  = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos      = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++lineno;
      auto hash = raw.find('#');
      if (hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      for (auto tok : detail::split_ws(raw)) {
        out.push_back(detail::parse_vertex(tok, lineno));
      }
    }
    return out;
  }

}  // namespace invmon

#endif  // INVMON_DIGRAPH_HPP_
