// The model graph Omega of M_{S,T} on balls, the right Cayley graph of Q on
// balls, the vertex types of that Cayley graph and the surgery producing
// Gamma', with the checks run on each.

#ifndef INVMON_ZONE_GRAPHS_HPP_
#define INVMON_ZONE_GRAPHS_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "digraph.hpp"
#include "error.hpp"
#include "presentation.hpp"
#include "report.hpp"
#include "stephen.hpp"
#include "words.hpp"

namespace invmon {

  ////////////////////////////////////////////////////////////////////////
  // S
  ////////////////////////////////////////////////////////////////////////

  //! Exact access to S: elements, right multiplication by generators, right
  //! division, and membership in the submonoid T generated by B.
  class SOracle {
   public:
    enum class Kind { free_monoid, finite_table, word_acceptor };
    using element_type = std::size_t;
    using NormalForm   = std::function<Word(Word const&)>;
    using RightDivide  = std::function<std::optional<Word>(Word const&, std::size_t)>;
    using Membership   = std::function<bool(Word const&)>;

    static SOracle free_monoid(std::size_t gens) {
      SOracle o(Kind::free_monoid, gens);
      o.intern({});
      return o;
    }

    //! table[s][t] is the product st; generators[a] is the element of a.
    static SOracle finite_table(std::vector<std::vector<std::size_t>> table,
                                std::size_t                           identity,
                                std::vector<std::size_t>              generators) {
      SOracle    o(Kind::finite_table, generators.size());
      auto const n = table.size();
      if (n == 0) {
        throw Error("multiplication table is empty");
      }
      for (auto const& row : table) {
        if (row.size() != n) {
          throw Error("multiplication table is not square");
        }
        for (auto x : row) {
          if (x >= n) {
            throw Error("multiplication table entry out of range");
          }
        }
      }
      if (identity >= n) {
        throw Error("identity out of range");
      }
      for (auto g : generators) {
        if (g >= n) {
          throw Error("generator element out of range");
        }
      }
      for (std::size_t s = 0; s < n; ++s) {
        if (table[identity][s] != s || table[s][identity] != s) {
          throw Error("element " + std::to_string(identity) + " is not an identity");
        }
        for (std::size_t t = 0; t < n; ++t) {
          for (std::size_t u = 0; u < n; ++u) {
            if (table[table[s][t]][u] != table[s][table[t][u]]) {
              throw Error("multiplication table is not associative at (" + std::to_string(s)
                          + ", " + std::to_string(t) + ", " + std::to_string(u) + ")");
            }
          }
        }
      }
      o._table    = std::move(table);
      o._identity = identity;
      o._gen_elem = std::move(generators);
      // shortlex least representatives
      o._words.assign(n, Word{});
      std::vector<bool>       seen(n, false);
      std::deque<std::size_t> todo{identity};
      seen[identity] = true;
      while (!todo.empty()) {
        auto s = todo.front();
        todo.pop_front();
        for (std::size_t a = 0; a < o._gen_elem.size(); ++a) {
          auto t = o._table[s][o._gen_elem[a]];
          if (!seen[t]) {
            seen[t]     = true;
            o._words[t] = concat(o._words[s], {make_letter(a)});
            todo.push_back(t);
          }
        }
      }
      if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error("the generators do not generate the table");
      }
      return o;
    }

    //! Elements are the normal forms nf(w); rd(w, a) is some word u with
    //! ua = w in S, if one exists (S is right cancellative, so it is unique).
    static SOracle word_acceptor(std::size_t gens, NormalForm nf, RightDivide rd, Membership in_t = {}) {
      if (!nf || !rd) {
        throw Error("word acceptor needs a normal form and a right division");
      }
      SOracle o(Kind::word_acceptor, gens);
      o._nf   = std::move(nf);
      o._rd   = std::move(rd);
      o._in_t = std::move(in_t);
      o.intern(o._nf({}));
      return o;
    }

    Kind kind() const noexcept {
      return _kind;
    }

    std::size_t generators() const noexcept {
      return _gens;
    }

    element_type identity() const noexcept {
      return _identity;
    }

    element_type multiply(element_type s, std::size_t a) {
      check_gen(a);
      switch (_kind) {
        case Kind::finite_table:
          return _table[s][_gen_elem[a]];
        case Kind::free_monoid:
          return intern(concat(_words.at(s), {make_letter(a)}));
        case Kind::word_acceptor:
          return intern(_nf(concat(_words.at(s), {make_letter(a)})));
      }
      return s;
    }

    //! All t with ta = s.
    std::vector<element_type> predecessors(element_type s, std::size_t a) {
      check_gen(a);
      std::vector<element_type> out;
      switch (_kind) {
        case Kind::finite_table:
          for (std::size_t t = 0; t < _table.size(); ++t) {
            if (_table[t][_gen_elem[a]] == s) {
              out.push_back(t);
            }
          }
          break;
        case Kind::free_monoid: {
          auto const& w = _words.at(s);
          if (!w.empty() && w.back() == make_letter(a)) {
            out.push_back(intern(Word(w.begin(), w.end() - 1)));
          }
          break;
        }
        case Kind::word_acceptor:
          if (auto u = _rd(_words.at(s), a)) {
            out.push_back(intern(_nf(*u)));
          }
          break;
      }
      return out;
    }

    element_type evaluate(Word const& w) {
      auto s = _identity;
      for (auto x : w) {
        if (is_inverse_letter(x)) {
          throw Error("S-words must be positive");
        }
        s = multiply(s, generator_of(x));
      }
      return s;
    }

    //! The normal form of s; shortlex least for tables.
    Word const& representative(element_type s) const {
      return _words.at(s);
    }

    std::size_t known_elements() const noexcept {
      return _words.size();
    }

    void set_submonoid(std::vector<std::size_t> b) {
      for (auto g : b) {
        check_gen(g);
      }
      std::sort(b.begin(), b.end());
      _b = std::move(b);
      _t_table.clear();
      if (_kind == Kind::finite_table) {
        _t_table.assign(_table.size(), false);
        std::deque<std::size_t> todo{_identity};
        _t_table[_identity] = true;
        while (!todo.empty()) {
          auto s = todo.front();
          todo.pop_front();
          for (auto g : _b) {
            auto t = _table[s][_gen_elem[g]];
            if (!_t_table[t]) {
              _t_table[t] = true;
              todo.push_back(t);
            }
          }
        }
      } else if (_kind == Kind::word_acceptor && !_b.empty() && !_in_t) {
        throw Error("word acceptor has no membership test for T");
      }
    }

    bool in_submonoid(element_type s) const {
      switch (_kind) {
        case Kind::finite_table:
          return _t_table.empty() ? s == _identity : _t_table.at(s);
        case Kind::free_monoid: {
          auto const& w = _words.at(s);
          return std::all_of(w.begin(), w.end(), [&](letter_type x) {
            return std::binary_search(_b.begin(), _b.end(), generator_of(x));
          });
        }
        case Kind::word_acceptor:
          return s == _identity || (!_b.empty() && _in_t(_words.at(s)));
      }
      return false;
    }

    //! Throws if some relation u_i = v_i of S fails in the oracle.
    void check_consistent(Presentation const& s) {
      if (s.alphabet.size() != _gens) {
        throw Error("oracle inconsistency: " + std::to_string(_gens) + " generators, presentation has "
                    + std::to_string(s.alphabet.size()));
      }
      for (auto const& r : s.relations) {
        if (evaluate(r.lhs) != evaluate(r.rhs)) {
          throw Error("oracle inconsistency: " + s.alphabet.format(r.lhs) + " = " + s.alphabet.format(r.rhs)
                      + " fails in S");
        }
      }
    }

   private:
    SOracle(Kind k, std::size_t gens) : _kind(k), _gens(gens) {}

    void check_gen(std::size_t a) const {
      if (a >= _gens) {
        throw Error("generator " + std::to_string(a) + " out of range for S");
      }
    }

    element_type intern(Word w) {
      auto it = _ids.find(w);
      if (it != _ids.end()) {
        return it->second;
      }
      _ids.emplace(w, _words.size());
      _words.push_back(std::move(w));
      return _words.size() - 1;
    }

    Kind                                  _kind;
    std::size_t                           _gens;
    element_type                          _identity = 0;
    std::vector<Word>                     _words;
    std::map<Word, element_type>          _ids;
    std::vector<std::vector<std::size_t>> _table;
    std::vector<std::size_t>              _gen_elem;
    std::vector<std::size_t>              _b;
    std::vector<bool>                     _t_table;
    NormalForm                            _nf;
    RightDivide                           _rd;
    Membership                            _in_t;
  };

  //! `kind free_monoid`, or `kind finite_table` followed by `elements N`,
  //! `identity E`, one `gen <name> <element>` per generator of A and N lines
  //! `row x_0 ... x_{N-1}`.
  inline SOracle parse_s_oracle(std::string_view text, Alphabet const& A) {
    std::istringstream                    in{std::string(text)};
    std::string                           line, kind;
    std::size_t                           n = 0, identity = 0, lineno = 0;
    std::vector<std::optional<std::size_t>> gens(A.size());
    std::vector<std::vector<std::size_t>> rows;
    while (std::getline(in, line)) {
      ++lineno;
      auto h = line.find('#');
      auto                     body = h == std::string::npos ? line : line.substr(0, h);
      std::vector<std::string> t;
      for (auto tok : detail::split_ws(body)) {
        t.emplace_back(tok);
      }
      if (t.empty()) {
        continue;
      }
      auto num = [&](std::string const& s) {
        try {
          std::size_t pos = 0;
          auto        v   = std::stoul(s, &pos);
          if (pos != s.size()) {
            throw std::invalid_argument(s);
          }
          return static_cast<std::size_t>(v);
        } catch (std::exception const&) {
          throw ParseError("expected a number, got \"" + s + "\"", lineno, 1);
        }
      };
      if (t[0] == "kind" && t.size() == 2) {
        kind = t[1];
      } else if (t[0] == "elements" && t.size() == 2) {
        n = num(t[1]);
      } else if (t[0] == "identity" && t.size() == 2) {
        identity = num(t[1]);
      } else if (t[0] == "gen" && t.size() == 3) {
        auto g = A.index(t[1]);
        if (!g) {
          throw ParseError("unknown generator \"" + t[1] + "\"", lineno, 1);
        }
        gens[*g] = num(t[2]);
      } else if (t[0] == "row") {
        std::vector<std::size_t> row;
        for (std::size_t i = 1; i < t.size(); ++i) {
          row.push_back(num(t[i]));
        }
        rows.push_back(std::move(row));
      } else {
        throw ParseError("unrecognised oracle line \"" + line + "\"", lineno, 1);
      }
    }
    if (kind == "free_monoid") {
      return SOracle::free_monoid(A.size());
    }
    if (kind != "finite_table") {
      throw ParseError("oracle kind must be free_monoid or finite_table", lineno, 1);
    }
    if (rows.size() != n) {
      throw ParseError("expected " + std::to_string(n) + " rows", lineno, 1);
    }
    std::vector<std::size_t> g;
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (!gens[a]) {
        throw ParseError("no element given for generator \"" + A.name(a) + "\"", lineno, 1);
      }
      g.push_back(*gens[a]);
    }
    return SOracle::finite_table(std::move(rows), identity, std::move(g));
  }

  ////////////////////////////////////////////////////////////////////////
  // Omega
  ////////////////////////////////////////////////////////////////////////

  enum class ZoneKind { root, p_zone, z_zone, inv_zone };

  inline std::string to_string(ZoneKind k) {
    switch (k) {
      case ZoneKind::root:
        return "root";
      case ZoneKind::p_zone:
        return "p-zone";
      case ZoneKind::z_zone:
        return "z-zone";
      case ZoneKind::inv_zone:
        return "inverse-zone";
    }
    return "?";
  }

  struct ZoneVertex {
    ZoneKind    kind    = ZoneKind::root;
    std::size_t zone    = 0;
    Word        local;        // coordinate in a p-zone
    std::size_t element = 0;  // coordinate in a z-zone
  };

  //! index is i for p_i-zones; for x^-1-zones it is the position of x in
  //! (z, p_0, ..., p_k).
  struct Zone {
    ZoneKind    kind   = ZoneKind::root;
    std::size_t index  = 0;
    vertex_type parent = 0;
  };

  struct OmegaBall {
    LabeledDigraph           graph;
    std::vector<ZoneVertex>  vertices;
    std::vector<Zone>        zones;
    std::vector<std::size_t> dist;
    std::size_t              radius = 0;

    std::string describe(vertex_type v, Alphabet const& A) const {
      auto const& x = vertices.at(v);
      auto const& z = zones.at(x.zone);
      std::string out = to_string(x.kind) + "#" + std::to_string(x.zone);
      if (x.kind == ZoneKind::p_zone) {
        out += " p" + std::to_string(z.index) + " [" + A.format(x.local) + "]";
      } else if (x.kind == ZoneKind::z_zone) {
        out += " s" + std::to_string(x.element);
      } else if (x.kind == ZoneKind::inv_zone) {
        out += z.index == 0 ? " z'" : " p" + std::to_string(z.index - 1) + "'";
      }
      return out;
    }
  };

  namespace detail {
    class OmegaBuilder {
     public:
      OmegaBuilder(MstInput const& in, SOracle& s)
          : _in(in), _s(s), _n(in.s_pres.alphabet.size()), _k(in.k()) {
        _ball.graph = LabeledDigraph(build_mst(in).alphabet);
        std::vector<std::size_t> b;
        for (auto const& name : in.b_subset) {
          b.push_back(*in.s_pres.alphabet.index(name));
        }
        s.set_submonoid(b);
        for (auto const& r : in.s_pres.relations) {
          _u.push_back(r.lhs);
          _v.push_back(r.rhs);
        }
      }

      OmegaBall run(std::size_t radius) {
        _ball.radius = radius;
        _ball.zones.push_back({ZoneKind::root, 0, 0});
        new_vertex({ZoneKind::root, 0, {}, 0}, 0);
        _ball.graph.set_root(0);
        std::deque<vertex_type> todo{0};
        std::vector<vertex_type> rim;
        while (!todo.empty()) {
          auto v = todo.front();
          todo.pop_front();
          if (_ball.dist[v] == radius) {
            rim.push_back(v);
            continue;
          }
          auto before = _ball.vertices.size();
          expand(v, true);
          for (auto w = before; w < _ball.vertices.size(); ++w) {
            _ball.dist[w] = _ball.dist[v] + 1;
            todo.push_back(static_cast<vertex_type>(w));
          }
        }
        for (auto v : rim) {
          expand(v, false);
        }
        return std::move(_ball);
      }

     private:
      std::uint32_t x_label(std::size_t xi) const {
        return static_cast<std::uint32_t>(xi == 0 ? _n + _k + 1 : _n + xi - 1);
      }

      std::uint32_t d_label() const {
        return static_cast<std::uint32_t>(_n + _k + 2);
      }

      vertex_type new_vertex(ZoneVertex zv, std::size_t dist) {
        auto v = _ball.graph.add_vertex();
        _ball.vertices.push_back(std::move(zv));
        _ball.dist.push_back(dist);
        return v;
      }

      std::optional<vertex_type> at(std::size_t zone, Word key, ZoneVertex proto, bool create) {
        auto it = _index.find({zone, key});
        if (it != _index.end()) {
          return it->second;
        }
        if (!create) {
          return std::nullopt;
        }
        auto v = new_vertex(std::move(proto), unreachable);
        _index.emplace(std::make_pair(zone, std::move(key)), v);
        return v;
      }

      std::optional<vertex_type> p_vertex(std::size_t zone, Word w, bool create) {
        Word key = w;
        return at(zone, std::move(key), {ZoneKind::p_zone, zone, std::move(w), 0}, create);
      }

      std::optional<vertex_type> z_vertex(std::size_t zone, std::size_t s, bool create) {
        return at(zone, Word{static_cast<letter_type>(s)}, {ZoneKind::z_zone, zone, {}, s}, create);
      }

      //! Entry vertex of the zone hanging off v along x (outgoing) or of the
      //! x^-1-zone attached to v (incoming).
      std::optional<vertex_type> child(vertex_type v, std::size_t xi, bool incoming, bool create) {
        auto key = std::make_tuple(v, xi, incoming);
        auto it  = _children.find(key);
        if (it != _children.end()) {
          return it->second;
        }
        if (!create) {
          return std::nullopt;
        }
        auto        zone = _ball.zones.size();
        vertex_type entry;
        if (incoming) {
          _ball.zones.push_back({ZoneKind::inv_zone, xi, v});
          entry = *at(zone, {}, {ZoneKind::inv_zone, zone, {}, 0}, true);
        } else if (xi == 0) {
          _ball.zones.push_back({ZoneKind::z_zone, 0, v});
          entry = *z_vertex(zone, _s.identity(), true);
        } else {
          _ball.zones.push_back({ZoneKind::p_zone, xi - 1, v});
          entry = *p_vertex(zone, {}, true);
        }
        _children.emplace(key, entry);
        return entry;
      }

      void edge(std::optional<vertex_type> s, std::uint32_t label, std::optional<vertex_type> t) {
        if (s && t) {
          _ball.graph.add_edge_unique(*s, label, *t);
        }
      }

      void expand(vertex_type v, bool create) {
        auto const zv   = _ball.vertices[v];
        auto const zone = _ball.zones[zv.zone];
        auto       out_children = [&](std::optional<std::size_t> skip) {
          for (std::size_t xi = 0; xi <= _k + 1; ++xi) {
            if (xi != skip) {
              edge(v, x_label(xi), child(v, xi, false, create));
            }
          }
        };
        switch (zv.kind) {
          case ZoneKind::root:
            out_children(std::nullopt);
            break;
          case ZoneKind::p_zone: {
            auto const  i = zone.index;
            auto const& w = zv.local;
            for (std::size_t a = 0; a < _n; ++a) {
              edge(v, static_cast<std::uint32_t>(a), p_vertex(zv.zone, concat(w, {make_letter(a)}), create));
            }
            if (!w.empty()) {
              edge(p_vertex(zv.zone, Word(w.begin(), w.end() - 1), create), generator_of(w.back()), v);
              edge(child(v, i + 1, true, create), x_label(i + 1), v);
            } else {
              edge(zone.parent, x_label(i + 1), v);
            }
            out_children(std::nullopt);
            if (i == 0) {
              edge(v, d_label(), v);
            } else {
              auto const& u  = _u[i - 1];
              auto const& vv = _v[i - 1];
              if (w.size() >= vv.size() && std::equal(vv.begin(), vv.end(), w.end() - vv.size())) {
                Word w0(w.begin(), w.end() - vv.size());
                edge(v, d_label(), p_vertex(zv.zone, concat(w0, u), create));
              }
              if (w.size() >= u.size() && std::equal(u.begin(), u.end(), w.end() - u.size())) {
                Word w0(w.begin(), w.end() - u.size());
                edge(p_vertex(zv.zone, concat(w0, vv), create), d_label(), v);
              }
            }
            break;
          }
          case ZoneKind::z_zone: {
            auto const s = zv.element;
            for (std::size_t a = 0; a < _n; ++a) {
              edge(v, static_cast<std::uint32_t>(a), z_vertex(zv.zone, _s.multiply(s, a), create));
              for (auto t : _s.predecessors(s, a)) {
                edge(z_vertex(zv.zone, t, create), static_cast<std::uint32_t>(a), v);
              }
            }
            out_children(std::nullopt);
            for (std::size_t i = 0; i <= _k; ++i) {
              edge(child(v, i + 1, true, create), x_label(i + 1), v);
            }
            if (s == _s.identity()) {
              edge(zone.parent, x_label(0), v);
            } else if (_s.in_submonoid(s)) {
              edge(child(v, 0, true, create), x_label(0), v);
            }
            edge(v, d_label(), v);
            break;
          }
          case ZoneKind::inv_zone:
            edge(v, x_label(zone.index), zone.parent);
            out_children(zone.index);
            break;
        }
      }

      MstInput const&                                                         _in;
      SOracle&                                                                _s;
      std::size_t                                                             _n;
      std::size_t                                                             _k;
      std::vector<Word>                                                       _u, _v;
      OmegaBall                                                               _ball;
      std::map<std::pair<std::size_t, Word>, vertex_type>                     _index;
      std::map<std::tuple<vertex_type, std::size_t, bool>, vertex_type>       _children;
    };
  }  // namespace detail

  //! All vertices within undirected distance `radius` of the root, with
  //! every edge between them.
  inline OmegaBall omega_ball(MstInput const& in, SOracle& s, std::size_t radius) {
    detail::check_mst_input(in);
    s.check_consistent(in.s_pres);
    return detail::OmegaBuilder(in, s).run(radius);
  }

  struct OmegaChecks {
    bool bidet    = true;
    bool relators = true;
    bool zones    = true;
  };

  //! Relator loops are checked at vertices at least `margin` inside the
  //! ball; a closed walk of length L never leaves the ball of radius L/2.
  inline CheckReport check_omega(OmegaBall const&   ball,
                                 Presentation const& mst,
                                 OmegaChecks         checks = {},
                                 std::optional<std::size_t> margin = {}) {
    CheckReport rep;
    auto const& g = ball.graph;
    auto const& S = g.labels();
    if (checks.bidet) {
      auto& item   = rep.add("bidet");
      item.checked = g.num_vertices();
      for (auto const& bad : bideterminism_violations(g)) {
        item.fail("vertex " + std::to_string(bad.vertex) + " (" + ball.describe(bad.vertex, S) + ") has two "
                  + (bad.incoming ? "incoming " : "outgoing ") + S.name(bad.label) + "-edges");
      }
    }
    if (checks.relators) {
      auto& item = rep.add("relators");
      auto  m    = margin.value_or(mst.max_relator_length());
      auto  rels = mst.relators();
      for (vertex_type v = 0; v < g.num_vertices(); ++v) {
        if (ball.dist[v] + m > ball.radius) {
          continue;
        }
        ++item.checked;
        for (auto const& r : rels) {
          if (!reads_closed(g, v, r)) {
            item.fail("relator " + S.format(r) + " not closed at vertex " + std::to_string(v) + " ("
                      + ball.describe(v, S) + ")");
          }
        }
      }
    }
    if (checks.zones) {
      auto& item = rep.add("zones");
      std::map<std::pair<std::size_t, std::string>, vertex_type> seen;
      auto const k = mst_provenance(mst).k;
      for (vertex_type v = 0; v < g.num_vertices(); ++v) {
        ++item.checked;
        auto const& zv = ball.vertices[v];
        if ((v == 0) != (zv.kind == ZoneKind::root)) {
          item.fail("vertex " + std::to_string(v) + " has kind " + to_string(zv.kind));
        }
        if (ball.zones.at(zv.zone).kind != zv.kind) {
          item.fail("vertex " + std::to_string(v) + " disagrees with the kind of its zone");
        }
        std::string coord = zv.kind == ZoneKind::z_zone ? "s" + std::to_string(zv.element) : S.format(zv.local);
        auto [it, fresh]  = seen.emplace(std::make_pair(zv.zone, coord), v);
        if (!fresh) {
          item.fail("vertices " + std::to_string(it->second) + " and " + std::to_string(v) + " share a zone position");
        }
        // a vertex lies in a z-zone iff it has incoming p_i and p_j, i != j
        if (ball.dist[v] < ball.radius && k >= 1) {
          std::set<std::string> ps;
          for (auto const& e : g.in_edges(v)) {
            auto const& nm = S.name(e.label);
            if (nm.size() > 1 && nm[0] == 'p') {
              ps.insert(nm);
            }
          }
          if ((ps.size() >= 2) != (zv.kind == ZoneKind::z_zone)) {
            item.fail("vertex " + std::to_string(v) + " (" + ball.describe(v, S) + ") has "
                      + std::to_string(ps.size()) + " distinct incoming p-labels");
          }
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // The right Cayley graph of Q
  ////////////////////////////////////////////////////////////////////////

  //! Roles of the letters of Q: p_i, q_i, a^(i) and b^(z).
  struct QLetter {
    enum class Role { p, q, a, bz } role;
    std::size_t index = 0;  // i
    std::size_t gen   = 0;  // generator of A for a^(i) and b^(z)
  };

  inline std::vector<QLetter> q_letters(Alphabet const& Q, Alphabet const& A) {
    std::vector<QLetter> out;
    for (auto const& name : Q.names()) {
      auto caret = name.find('^');
      if (caret != std::string::npos) {
        auto base = A.index(name.substr(0, caret));
        auto tag  = name.substr(caret + 1);
        if (!base) {
          throw Error("unknown letter \"" + name + "\"");
        }
        if (tag == "z") {
          out.push_back({QLetter::Role::bz, 0, *base});
        } else {
          out.push_back({QLetter::Role::a, std::stoul(tag), *base});
        }
      } else if (name.size() > 1 && (name[0] == 'p' || name[0] == 'q')) {
        out.push_back({name[0] == 'p' ? QLetter::Role::p : QLetter::Role::q, std::stoul(name.substr(1)), 0});
      } else {
        throw Error("unknown letter \"" + name + "\"");
      }
    }
    return out;
  }

  //! Normal form for Q when B is empty: every maximal factor q_i w^(i) has w
  //! replaced by the representative of its S-element, and then every factor
  //! q_i w^(i) p_i becomes q_0 w^(0) p_0.
  class QNormalForm {
   public:
    QNormalForm(MstInput const& in, Alphabet const& Q, SOracle& s)
        : _letters(q_letters(Q, in.s_pres.alphabet)), _s(&s) {
      if (!in.b_subset.empty()) {
        throw Error("no exact normal form for Q when B is nonempty");
      }
      s.check_consistent(in.s_pres);
      for (std::size_t x = 0; x < _letters.size(); ++x) {
        auto const& l = _letters[x];
        _by_role[{static_cast<int>(l.role), l.index, l.gen}] = make_letter(x);
      }
    }

    Word operator()(Word const& w) const {
      Word out;
      for (std::size_t j = 0; j < w.size();) {
        auto const& l = _letters.at(generator_of(w[j]));
        out.push_back(w[j]);
        ++j;
        if (l.role != QLetter::Role::q) {
          continue;
        }
        auto const i     = l.index;
        auto const start = out.size() - 1;
        auto       s     = _s->identity();
        while (j < w.size()) {
          auto const& m = _letters[generator_of(w[j])];
          if (m.role != QLetter::Role::a || m.index != i) {
            break;
          }
          s = _s->multiply(s, m.gen);
          ++j;
        }
        auto const& rep  = _s->representative(s);
        bool        flip = j < w.size() && i != 0 && _letters[generator_of(w[j])].role == QLetter::Role::p
                    && _letters[generator_of(w[j])].index == i;
        auto const t = flip ? 0 : i;
        out[start]   = letter(QLetter::Role::q, t, 0);
        for (auto x : rep) {
          out.push_back(letter(QLetter::Role::a, t, generator_of(x)));
        }
        if (flip) {
          out.push_back(letter(QLetter::Role::p, 0, 0));
          ++j;
        }
      }
      return out;
    }

   private:
    letter_type letter(QLetter::Role r, std::size_t i, std::size_t gen) const {
      return _by_role.at({static_cast<int>(r), i, gen});
    }

    std::vector<QLetter>                                          _letters;
    SOracle*                                                      _s;
    std::map<std::tuple<int, std::size_t, std::size_t>, letter_type> _by_role;
  };

  struct QCayleyBall {
    LabeledDigraph           graph;  // root 0
    std::vector<Word>        words;  // a shortest word reaching each vertex
    std::vector<std::size_t> length;
    std::size_t              radius = 0;
  };

  //! Elements of length at most `radius` with their right Cayley edges;
  //! nf must be a normal form for Q.
  inline QCayleyBall q_cayley_ball(Alphabet const& Q, std::size_t radius,
                                   std::function<Word(Word const&)> const& nf) {
    QCayleyBall ball;
    ball.radius = radius;
    ball.graph  = LabeledDigraph(Q);
    std::unordered_map<std::string, vertex_type> index;
    auto key = [](Word const& w) { return std::string(reinterpret_cast<char const*>(w.data()), w.size() * sizeof(letter_type)); };
    std::vector<Word> forms;
    auto              add = [&](Word form, Word w, std::size_t len) {
      auto v = ball.graph.add_vertex();
      index.emplace(key(form), v);
      forms.push_back(std::move(form));
      ball.words.push_back(std::move(w));
      ball.length.push_back(len);
      return v;
    };
    add(nf({}), {}, 0);
    ball.graph.set_root(0);
    for (vertex_type v = 0; v < ball.graph.num_vertices(); ++v) {
      for (std::size_t x = 0; x < Q.size(); ++x) {
        auto form = nf(concat(forms[v], {make_letter(x)}));
        auto it   = index.find(key(form));
        if (it == index.end()) {
          if (ball.length[v] == radius) {
            continue;
          }
          auto w = concat(ball.words[v], {make_letter(x)});
          auto t = add(std::move(form), std::move(w), ball.length[v] + 1);
          ball.graph.add_edge(v, static_cast<std::uint32_t>(x), t);
        } else {
          ball.graph.add_edge(v, static_cast<std::uint32_t>(x), it->second);
        }
      }
    }
    return ball;
  }

  inline QCayleyBall q_cayley_ball(MstInput const& in, SOracle& s, std::size_t radius) {
    auto        q = build_q(in, {0, 1, 1});
    QNormalForm nf(in, q.alphabet, s);
    return q_cayley_ball(q.alphabet, radius, std::cref(nf));
  }

  ////////////////////////////////////////////////////////////////////////
  // Vertex types and Gamma'
  ////////////////////////////////////////////////////////////////////////

  struct VertexType {
    enum class Kind { untyped, z, p } kind = Kind::untyped;
    std::size_t index                      = 0;  // i for type-p_i

    bool operator==(VertexType const&) const = default;
  };

  inline std::string to_string(VertexType t) {
    switch (t.kind) {
      case VertexType::Kind::untyped:
        return "untyped";
      case VertexType::Kind::z:
        return "type-z";
      case VertexType::Kind::p:
        return "type-p" + std::to_string(t.index);
    }
    return "?";
  }

  //! Type-z: reached by a walk labelled u q_i w^(i) p_i. Type-p_i: reached
  //! by v w^(i) p_i with v empty or ending outside {q_i, a^(i)}. Throws if
  //! the classes meet.
  inline std::vector<VertexType> classify_types(LabeledDigraph const& g, Alphabet const& A) {
    if (!g.root()) {
      throw Error("classify_types: graph has no root");
    }
    auto const& Q       = g.labels();
    auto const  letters = q_letters(Q, A);
    std::size_t k       = 0;
    for (auto const& l : letters) {
      k = std::max(k, l.index);
    }
    auto const n     = g.num_vertices();
    // directed reachability from the root
    std::vector<bool>        live(n, false);
    std::deque<vertex_type>  todo{*g.root()};
    live[*g.root()] = true;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop_front();
      for (auto const& e : g.out_edges(v)) {
        if (!live[e.target]) {
          live[e.target] = true;
          todo.push_back(e.target);
        }
      }
    }
    std::vector<VertexType> out(n);
    std::vector<std::vector<bool>> z_of(k + 1, std::vector<bool>(n, false));
    std::vector<std::vector<bool>> p_of(k + 1, std::vector<bool>(n, false));
    for (std::size_t i = 0; i <= k; ++i) {
      // tail[v]: some walk to v ends in q_i (a^(i))*; free[v]: some walk
      // to v is empty or ends outside {q_i, a^(i)}, followed by (a^(i))*
      std::vector<bool> tail(n, false), free(n, false);
      std::deque<vertex_type> tq, fq;
      free[*g.root()] = true;
      fq.push_back(*g.root());
      for (vertex_type v = 0; v < n; ++v) {
        if (!live[v]) {
          continue;
        }
        for (auto const& e : g.out_edges(v)) {
          auto const& l = letters[e.label];
          if (l.role == QLetter::Role::q && l.index == i) {
            if (!tail[e.target]) {
              tail[e.target] = true;
              tq.push_back(e.target);
            }
          } else if (!(l.role == QLetter::Role::a && l.index == i)) {
            if (!free[e.target]) {
              free[e.target] = true;
              fq.push_back(e.target);
            }
          }
        }
      }
      for (auto* pr : {&tq, &fq}) {
        auto& mark = pr == &tq ? tail : free;
        while (!pr->empty()) {
          auto v = pr->front();
          pr->pop_front();
          for (auto const& e : g.out_edges(v)) {
            auto const& l = letters[e.label];
            if (l.role == QLetter::Role::a && l.index == i && !mark[e.target]) {
              mark[e.target] = true;
              pr->push_back(e.target);
            }
          }
        }
      }
      for (vertex_type v = 0; v < n; ++v) {
        if (!live[v]) {
          continue;
        }
        for (auto const& e : g.out_edges(v)) {
          auto const& l = letters[e.label];
          if (l.role == QLetter::Role::p && l.index == i) {
            if (tail[v]) {
              z_of[i][e.target] = true;
            }
            if (free[v]) {
              p_of[i][e.target] = true;
            }
          }
        }
      }
    }
    for (vertex_type v = 0; v < n; ++v) {
      bool                     z = false;
      std::vector<std::size_t> ps;
      for (std::size_t i = 0; i <= k; ++i) {
        z = z || z_of[i][v];
        if (p_of[i][v]) {
          ps.push_back(i);
        }
      }
      if ((z && !ps.empty()) || ps.size() > 1) {
        throw Error("ambiguous vertex type at vertex " + std::to_string(v) + " (type-z " + (z ? "and" : "absent,")
                    + " " + std::to_string(ps.size()) + " type-p classes)");
      }
      if (z) {
        out[v] = {VertexType::Kind::z, 0};
      } else if (!ps.empty()) {
        out[v] = {VertexType::Kind::p, ps[0]};
      }
    }
    return out;
  }

  struct GammaPrime {
    LabeledDigraph           graph;  // over the generators of M_{S,T}
    std::vector<std::size_t> length;
    std::vector<bool>        complete;
    std::size_t              radius = 0;
  };

  //! Vertices whose companions may lie outside the ball are marked
  //! incomplete: complete means length + 2 + the longest side of a relation
  //! of S is at most the radius.
  inline GammaPrime gamma_prime(QCayleyBall const&             ball,
                                std::vector<VertexType> const& types,
                                MstInput const&                in) {
    auto const  mst  = build_mst(in);
    auto const& Sig  = mst.alphabet;
    auto const& A    = in.s_pres.alphabet;
    auto const& Q    = ball.graph.labels();
    auto const  lets = q_letters(Q, A);
    auto const  k    = in.k();
    auto const  n    = ball.graph.num_vertices();
    auto        qlab = [&](QLetter::Role r, std::size_t i) -> std::optional<std::uint32_t> {
      for (std::size_t x = 0; x < lets.size(); ++x) {
        if (lets[x].role == r && lets[x].index == i) {
          return static_cast<std::uint32_t>(x);
        }
      }
      return std::nullopt;
    };
    auto sig = [&](std::string const& name) { return static_cast<std::uint32_t>(*Sig.index(name)); };
    auto p_sig = [&](std::size_t i) { return sig("p" + std::to_string(i)); };

    GammaPrime gp;
    gp.graph  = LabeledDigraph(Sig, n);
    gp.length = ball.length;
    gp.radius = ball.radius;
    gp.graph.set_root(*ball.graph.root());
    auto const& G = ball.graph;
    auto        follow = [&](vertex_type v, std::optional<std::uint32_t> l) -> std::optional<vertex_type> {
      if (!l) {
        return std::nullopt;
      }
      return G.follow(v, make_letter(*l));
    };
    // p_i edges are kept
    for (vertex_type v = 0; v < n; ++v) {
      for (auto const& e : G.out_edges(v)) {
        if (lets[e.label].role == QLetter::Role::p) {
          gp.graph.add_edge(v, p_sig(lets[e.label].index), e.target);
        }
      }
    }
    // (1) z-edges across q_0 p_0
    auto const z = sig("z");
    for (vertex_type u1 = 0; u1 < n; ++u1) {
      if (auto u2 = follow(u1, qlab(QLetter::Role::q, 0))) {
        if (auto u3 = follow(*u2, qlab(QLetter::Role::p, 0))) {
          gp.graph.add_edge_unique(u1, z, *u3);
        }
      }
    }
    // (2) a-edges below a^(i)-edges, (3) b-edges below b^(z)-edges
    for (vertex_type u1 = 0; u1 < n; ++u1) {
      for (auto const& e : G.out_edges(u1)) {
        auto const& l = lets[e.label];
        if (l.role == QLetter::Role::a) {
          auto pl = qlab(QLetter::Role::p, l.index);
          auto v1 = follow(u1, pl);
          auto v2 = follow(e.target, pl);
          if (v1 && v2) {
            gp.graph.add_edge_unique(*v1, static_cast<std::uint32_t>(l.gen), *v2);
          }
        }
      }
    }
    for (vertex_type u1 = 0; u1 < n; ++u1) {
      for (auto const& e : G.out_edges(u1)) {
        auto const& l = lets[e.label];
        if (l.role == QLetter::Role::bz) {
          auto v1 = gp.graph.follow(u1, make_letter(z));
          auto v2 = gp.graph.follow(e.target, make_letter(z));
          if (v1 && v2) {
            gp.graph.add_edge_unique(*v1, static_cast<std::uint32_t>(l.gen), *v2);
          }
        }
      }
    }
    // (4) q_i, a^(i), b^(z) edges were never copied
    // (5) d-edges
    auto const d = sig("d");
    for (vertex_type v = 0; v < n; ++v) {
      auto t = types[v];
      if (t.kind == VertexType::Kind::z || (t.kind == VertexType::Kind::p && t.index == 0)) {
        gp.graph.add_edge(v, d, v);
      }
    }
    std::size_t spread = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      auto const& rel = in.s_pres.relations[i - 1];
      spread          = std::max({spread, rel.lhs.size(), rel.rhs.size()});
      for (vertex_type w = 0; w < n; ++w) {
        if (types[w] != VertexType{VertexType::Kind::p, i}) {
          continue;
        }
        auto u = gp.graph.read(w, rel.lhs);
        auto v = gp.graph.read(w, rel.rhs);
        if (u && v && types[*u] == types[w] && types[*v] == types[w]) {
          gp.graph.add_edge_unique(*v, d, *u);
        }
      }
    }
    gp.complete.resize(n);
    for (vertex_type v = 0; v < n; ++v) {
      gp.complete[v] = gp.length[v] + 2 + spread <= gp.radius;
    }
    return gp;
  }

  //! (i) every relator of M_{S,T} reads a closed walk at each vertex at
  //! least `interior` inside the ball; (ii) no complete vertex has two
  //! edges with the same label on the same side.
  inline CheckReport check_gamma_prime(GammaPrime const& gp, Presentation const& mst, std::size_t interior) {
    CheckReport rep;
    auto const& g    = gp.graph;
    auto const& S    = g.labels();
    auto&       one  = rep.add("closed relator walks");
    auto        rels = mst.relators();
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      if (gp.length[v] + interior > gp.radius) {
        continue;
      }
      ++one.checked;
      for (auto const& r : rels) {
        if (!reads_closed(g, v, r)) {
          one.fail("relator " + S.format(r) + " not closed at vertex " + std::to_string(v));
        }
      }
    }
    auto& two = rep.add("bi-determinism");
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      if (!gp.complete[v]) {
        continue;
      }
      ++two.checked;
      if (auto bad = find_nondeterminism(g, v)) {
        two.fail("vertex " + std::to_string(v) + " has two " + (bad->incoming ? "incoming " : "outgoing ")
                 + S.name(bad->label) + "-edges");
      }
    }
    return rep;
  }

}  // namespace invmon

#endif  // INVMON_ZONE_GRAPHS_HPP_
