// Coset representatives, boundary words, the generating set Y, and the
// rewriting and representation maps for a subgroup with a finite cover.

#ifndef INVMON_SUBGROUP_HPP_
#define INVMON_SUBGROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "digraph.hpp"
#include "report.hpp"
#include "words.hpp"

namespace invmon {

  //! [j, w] together with j.w and its image e r_j w r_{j.w}'.
  struct SubgroupSymbol {
    std::size_t j = 0;
    Word        w;
    std::size_t target = 0;
    Word        psi;
  };

  using SymbolWord = std::vector<std::size_t>;

  class CosetSystem {
   public:
    CosetSystem(RClassModel m, std::set<std::size_t> J) : _m(std::move(m)), _J(std::move(J)) {
      build();
    }

    RClassModel const& model() const noexcept {
      return _m;
    }

    std::set<std::size_t> const& cover() const noexcept {
      return _J;
    }

    std::vector<vertex_type> const& members() const noexcept {
      return _X;
    }

    std::size_t kappa() const noexcept {
      return _kappa;
    }

    Word const& representative(std::size_t j) const {
      return at(_reps, j, "representative");
    }

    //! The vertex e r_j.
    vertex_type base(std::size_t j) const {
      return at(_base, j, "representative");
    }

    //! X in the order used to orient boundary words.
    std::vector<vertex_type> const& order() const noexcept {
      return _order;
    }

    std::map<std::pair<vertex_type, vertex_type>, Word> const& boundary_words() const noexcept {
      return _w;
    }

    std::map<std::pair<std::size_t, vertex_type>, Word> const& betas() const noexcept {
      return _beta;
    }

    std::vector<SubgroupSymbol> const& symbols() const noexcept {
      return _symbols;
    }

    std::optional<std::size_t> symbol(std::size_t j, Word const& w) const {
      auto it = _symbol_index.find({j, w});
      if (it == _symbol_index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    //! i.x from the action table; nullopt when the table has no entry.
    std::optional<std::size_t> act(std::size_t i, letter_type x) const {
      if (i == 0) {
        return 0;
      }
      auto it = _m.action.find({i, x});
      if (it == _m.action.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    std::optional<std::size_t> act(std::size_t i, Word const& u) const {
      for (auto x : u) {
        auto n = act(i, x);
        if (!n) {
          return std::nullopt;
        }
        i = *n;
      }
      return i;
    }

    bool in_cover(std::size_t i) const {
      return _J.count(i) != 0;
    }

    std::string symbol_name(std::size_t s) const {
      auto const& sym = _symbols.at(s);
      return "[" + std::to_string(sym.j) + ","
             + (sym.w.empty() ? std::string("1") : dotted(sym.w)) + "]";
    }

    std::string dotted(Word const& w) const {
      std::string out;
      for (auto x : w) {
        out += (out.empty() ? "" : ".") + _m.graph.labels().letter_name(x);
      }
      return out.empty() ? "1" : out;
    }

    std::string format(SymbolWord const& w) const {
      std::string out;
      for (auto s : w) {
        out += (out.empty() ? "" : " ") + symbol_name(s);
      }
      return out.empty() ? "1" : out;
    }

    //! The rewriting map phi(j, u).
    SymbolWord phi(std::size_t j, Word const& u) const {
      if (!in_cover(j)) {
        throw Error("phi: coset " + std::to_string(j) + " is not in the cover");
      }
      SymbolWord  out;
      std::size_t pos = 0, cur = j;
      while (pos < u.size()) {
        std::size_t c = cur, q = pos;
        do {
          auto n = act(c, u[q]);
          if (!n) {
            throw Error("phi: the action of coset " + std::to_string(c) + " on "
                        + _m.graph.labels().letter_name(u[q]) + " is not in the table");
          }
          if (*n == 0) {
            throw Error("phi: coset " + std::to_string(c) + " . "
                        + _m.graph.labels().letter_name(u[q]) + " is zero");
          }
          c = *n;
          ++q;
        } while (!in_cover(c) && q < u.size());
        if (!in_cover(c)) {
          throw Error("phi: " + std::to_string(cur) + " . " + dotted(Word(u.begin() + pos, u.end()))
                      + " leaves the cover");
        }
        Word prefix(u.begin() + pos, u.begin() + q);
        auto v = base(cur);
        auto t = _m.graph.read(v, prefix);
        if (!t) {
          throw Error("phi: " + dotted(prefix) + " does not read from vertex "
                      + std::to_string(v) + " inside the model");
        }
        auto wit = _w.find({v, *t});
        if (wit == _w.end()) {
          throw Error("phi: (" + std::to_string(v) + ", " + std::to_string(*t)
                      + ") is not a stored boundary pair");
        }
        auto s = symbol(cur, wit->second);
        if (!s) {
          throw Error("phi: no symbol [" + std::to_string(cur) + "," + dotted(wit->second) + "]");
        }
        out.push_back(*s);
        cur = c;
        pos = q;
      }
      return out;
    }

    //! The representation map psi on symbol words.
    Word psi(SymbolWord const& w) const {
      Word out;
      for (auto s : w) {
        auto const& p = _symbols.at(s).psi;
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }

    //! Replaces a stored boundary word and its reverse; for fault injection.
    void override_boundary_word(vertex_type x, vertex_type y, Word w) {
      auto it = _w.find({x, y});
      if (it == _w.end()) {
        throw Error("no stored boundary pair (" + std::to_string(x) + ", " + std::to_string(y)
                    + ")");
      }
      _w[{y, x}] = invert_word(w);
      it->second = std::move(w);
    }

   private:
    template <typename K, typename V>
    static V const& at(std::map<K, V> const& m, K const& k, char const* what) {
      auto it = m.find(k);
      if (it == m.end()) {
        throw Error(std::string("no ") + what + " for coset " + std::to_string(k));
      }
      return it->second;
    }

    void build() {
      auto rep = check_model(_m);
      if (!rep.ok()) {
        throw Error("invalid model:\n" + rep.to_string());
      }
      if (!_m.has_action()) {
        throw Error("the model has no action table");
      }
      if (_J.empty()) {
        _J = _m.indices();
      }
      detail::check_indices(_m, _J);
      if (_J.count(1) == 0) {
        throw Error("the cover must contain coset 1");
      }
      _X = _m.members(_J);
      if (!is_connected(_m.graph, _X)) {
        throw Error("the cover is not connected");
      }
      auto const& g = _m.graph;
      auto const  e = _m.idempotent;

      // BFS from e: representatives are tree words to the first vertex met
      // in each coset, and discovery order fixes the order inside cosets
      constexpr auto none = std::numeric_limits<vertex_type>::max();
      std::vector<std::pair<vertex_type, letter_type>> pred(g.num_vertices(), {none, 0});
      std::vector<char>        seen(g.num_vertices(), 0);
      std::vector<vertex_type> discovery;
      std::deque<vertex_type>  q{e};
      seen[e] = 1;
      while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        discovery.push_back(v);
        for (auto const& [x, u] : g.neighbours(v)) {
          if (!seen[u]) {
            seen[u] = 1;
            pred[u] = {v, x};
            q.push_back(u);
          }
        }
      }
      for (auto v : discovery) {
        auto j = _m.coset[v];
        if (_base.count(j) != 0) {
          continue;
        }
        Word w;
        for (auto u = v; u != e; u = pred[u].first) {
          w.push_back(pred[u].second);
        }
        std::reverse(w.begin(), w.end());
        _base[j] = v;
        _reps[j] = std::move(w);
      }
      for (auto j : _J) {
        if (_base.count(j) == 0) {
          throw Error("coset " + std::to_string(j) + " is not reachable from the idempotent");
        }
      }
      for (auto j : _J) {
        for (auto v : discovery) {
          if (_m.coset[v] == j) {
            _rank[v] = _order.size();
            _order.push_back(v);
          }
        }
      }

      auto bw = boundary_width(g, _X, BoundaryMode::literal);
      _kappa  = bw.width;
      for (auto const& p : bw.pairs) {
        if (p.x == p.y) {
          _w[{p.x, p.y}] = {};
        }
      }
      for (auto const& p : bw.pairs) {
        if (p.x == p.y || _rank.at(p.x) > _rank.at(p.y)) {
          continue;
        }
        auto j = _m.coset[p.x];
        auto s = shortest_word(g, p.x, p.y);
        auto v = _base.at(j);
        auto t = g.read(v, *s);
        if (!t) {
          throw Error("the model is too small: cannot read a word for (" + std::to_string(p.x)
                      + ", " + std::to_string(p.y) + ") from the representative of coset "
                      + std::to_string(j));
        }
        auto key = std::make_pair(j, *t);
        auto it  = _beta.find(key);
        if (it == _beta.end()) {
          it = _beta.emplace(key, *shortest_word(g, v, *t)).first;
        }
        _w[{p.x, p.y}] = it->second;
        _w[{p.y, p.x}] = invert_word(it->second);
      }

      std::set<Word> W;
      for (auto const& [k, w] : _w) {
        W.insert(w);
      }
      for (auto j : _J) {
        for (auto const& w : W) {
          auto t = act(j, w);
          if (t && in_cover(*t)) {
            SubgroupSymbol sym{j, w, *t, {}};
            sym.psi = concat({_m.idempotent_word, _reps.at(j), w, invert_word(_reps.at(*t))});
            _symbol_index.emplace(std::make_pair(j, w), _symbols.size());
            _symbols.push_back(std::move(sym));
          }
        }
      }
    }

    RClassModel                                         _m;
    std::set<std::size_t>                               _J;
    std::vector<vertex_type>                            _X;
    std::size_t                                         _kappa = 0;
    std::map<std::size_t, Word>                         _reps;
    std::map<std::size_t, vertex_type>                  _base;
    std::vector<vertex_type>                            _order;
    std::map<vertex_type, std::size_t>                  _rank;
    std::map<std::pair<vertex_type, vertex_type>, Word> _w;
    std::map<std::pair<std::size_t, vertex_type>, Word> _beta;
    std::vector<SubgroupSymbol>                         _symbols;
    std::map<std::pair<std::size_t, Word>, std::size_t> _symbol_index;
  };

  inline CosetSystem build_coset_system(RClassModel m, std::set<std::size_t> J = {}) {
    return CosetSystem(std::move(m), std::move(J));
  }

  //! Y as (symbol, psi-word) pairs.
  inline std::vector<std::pair<std::size_t, Word>> generator_set_Y(CosetSystem const& cs) {
    std::vector<std::pair<std::size_t, Word>> out;
    for (std::size_t i = 0; i < cs.symbols().size(); ++i) {
      out.emplace_back(i, cs.symbols()[i].psi);
    }
    return out;
  }

  //! Replays the defining properties of the representatives and boundary
  //! words on the model.
  inline CheckReport check_coset_system(CosetSystem const& cs) {
    CheckReport rep;
    auto const& m = cs.model();
    auto const& g = m.graph;
    auto&       r = rep.add("representatives");
    for (auto j : cs.cover()) {
      ++r.checked;
      auto const& rj = cs.representative(j);
      if (j == 1 && !rj.empty()) {
        r.fail("r_1 is not empty");
      }
      auto t = g.read(m.idempotent, rj);
      if (!t || m.coset[*t] != j) {
        r.fail("e r_" + std::to_string(j) + " is not in coset " + std::to_string(j));
      }
      auto loop = concat(rj, invert_word(rj));
      for (vertex_type h = 0; h < g.num_vertices(); ++h) {
        if (m.coset[h] == 1) {
          ++r.checked;
          if (!reads_closed(g, h, loop)) {
            r.fail("h r_" + std::to_string(j) + " r_" + std::to_string(j) + "' != h at h = "
                   + std::to_string(h));
          }
        }
      }
    }
    auto& replay = rep.add("boundary word replay");
    auto& sym    = rep.add("w_yx = w_xy'");
    auto& len    = rep.add("|w_xy| <= kappa");
    for (auto const& [k, w] : cs.boundary_words()) {
      auto [x, y] = k;
      ++replay.checked;
      ++len.checked;
      ++sym.checked;
      auto t = g.read(x, w);
      if (!t || *t != y) {
        replay.fail("w_(" + std::to_string(x) + "," + std::to_string(y) + ") = " + cs.dotted(w)
                    + " does not lead from x to y");
      }
      if (w.size() > cs.kappa()) {
        len.fail("w_(" + std::to_string(x) + "," + std::to_string(y) + ") has length "
                 + std::to_string(w.size()));
      }
      if (x == y && !w.empty()) {
        sym.fail("w_(" + std::to_string(x) + "," + std::to_string(x) + ") is not empty");
      }
      auto back = cs.boundary_words().find({y, x});
      if (back == cs.boundary_words().end() || back->second != invert_word(w)) {
        sym.fail("w_(" + std::to_string(y) + "," + std::to_string(x) + ") is not the inverse of w_("
                 + std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
    // property (1): pairs related by a common s give equal e r_j w
    auto& cons = rep.add("consistency");
    std::map<std::pair<std::size_t, std::size_t>,
             std::vector<std::pair<vertex_type, vertex_type>>>
        groups;
    for (auto const& [k, w] : cs.boundary_words()) {
      groups[{m.coset[k.first], m.coset[k.second]}].push_back(k);
    }
    for (auto const& [jk, ps] : groups) {
      auto v = cs.base(jk.first);
      for (std::size_t a = 0; a < ps.size(); ++a) {
        auto s = shortest_word(g, ps[a].first, ps[a].second);
        for (std::size_t b = 0; b < ps.size(); ++b) {
          if (a == b) {
            continue;
          }
          auto t = g.read(ps[b].first, *s);
          if (!t || *t != ps[b].second) {
            continue;
          }
          ++cons.checked;
          auto e1 = g.read(v, cs.boundary_words().at(ps[a]));
          auto e2 = g.read(v, cs.boundary_words().at(ps[b]));
          if (!e1 || !e2 || *e1 != *e2) {
            cons.fail("e r_" + std::to_string(jk.first) + " w differs for pairs ("
                      + std::to_string(ps[a].first) + "," + std::to_string(ps[a].second) + ") and ("
                      + std::to_string(ps[b].first) + "," + std::to_string(ps[b].second) + ")");
          }
        }
      }
    }
    auto& y = rep.add("symbols");
    for (std::size_t i = 0; i < cs.symbols().size(); ++i) {
      ++y.checked;
      auto const& s = cs.symbols()[i];
      auto        t = g.read(m.idempotent, s.psi);
      if (!t || m.coset[*t] != 1) {
        y.fail("psi(" + cs.symbol_name(i) + ") does not lead from e into H");
      }
    }
    return rep;
  }

  struct ClaimsReport {
    CheckReport report;
    std::size_t unknown = 0;  // samples whose replay left the model
  };

  //! Checks phi(j,a) phi(j.a, a') = 1, phi(j,a) = 1 on loops that avoid the
  //! cover, psi(phi(g)) = g, and prefix compositionality of phi, on seeded
  //! random samples replayed in the model.
  inline ClaimsReport verify_claims(CosetSystem const& cs, std::size_t samples, std::uint64_t seed) {
    ClaimsReport out;
    auto const&  m  = cs.model();
    auto const&  g  = m.graph;
    auto const   e  = m.idempotent;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> J(cs.cover().begin(), cs.cover().end());
    auto const  max_len  = 2 * cs.kappa() + 4;
    auto const  attempts = 200 * samples + 100;

    auto walk = [&](vertex_type from, std::size_t len) {
      Word        w;
      vertex_type at = from;
      for (std::size_t i = 0; i < len; ++i) {
        auto nb = g.neighbours(at);
        if (nb.empty()) {
          break;
        }
        auto [x, u] = nb[rng() % nb.size()];
        w.push_back(x);
        at = u;
      }
      return std::make_pair(w, at);
    };
    auto in_h = [&](SymbolWord const& s) { return g.read(e, cs.psi(s)); };

    auto& c2 = out.report.add("claim2");
    for (std::size_t n = 0, t = 0; n < samples && t < attempts; ++t) {
      auto j        = J[rng() % J.size()];
      auto [a, end] = walk(cs.base(j), rng() % (max_len + 1));
      if (!cs.in_cover(m.coset[end])) {
        continue;
      }
      ++n;
      ++c2.checked;
      try {
        auto lhs = cs.phi(j, a);
        auto rhs = cs.phi(m.coset[end], invert_word(a));
        lhs.insert(lhs.end(), rhs.begin(), rhs.end());
        auto r = in_h(lhs);
        if (!r) {
          ++out.unknown;
        } else if (*r != e) {
          c2.fail("j = " + std::to_string(j) + ", alpha = " + cs.dotted(a) + ": " + cs.format(lhs)
                  + " is not 1");
        }
      } catch (Error const& ex) {
        c2.fail("j = " + std::to_string(j) + ", alpha = " + cs.dotted(a) + ": " + ex.what());
      }
    }

    auto& c1 = out.report.add("claim1");
    for (std::size_t n = 0, t = 0; n < samples && t < attempts; ++t) {
      auto        j  = J[rng() % J.size()];
      auto        v  = cs.base(j);
      Word        a;
      vertex_type at = v;
      for (std::size_t i = 0; i < max_len; ++i) {
        auto nb     = g.neighbours(at);
        auto [x, u] = nb[rng() % nb.size()];
        a.push_back(x);
        at = u;
        if (cs.in_cover(m.coset[at])) {
          break;
        }
      }
      if (at != v || a.empty()) {
        continue;
      }
      ++n;
      ++c1.checked;
      try {
        auto p = cs.phi(j, a);
        auto r = in_h(p);
        if (p.size() != 1 || !cs.symbols()[p[0]].w.empty()) {
          c1.fail("j = " + std::to_string(j) + ", alpha = " + cs.dotted(a) + ": phi is "
                  + cs.format(p) + ", not [j,1]");
        } else if (!r) {
          ++out.unknown;
        } else if (*r != e) {
          c1.fail("j = " + std::to_string(j) + ", alpha = " + cs.dotted(a)
                  + ": psi([j,1]) is not 1");
        }
      } catch (Error const& ex) {
        c1.fail("j = " + std::to_string(j) + ", alpha = " + cs.dotted(a) + ": " + ex.what());
      }
    }

    auto& ret  = out.report.add("retraction");
    auto& comp = out.report.add("phi composition");
    std::vector<vertex_type> H;
    for (vertex_type v = 0; v < g.num_vertices(); ++v) {
      if (m.coset[v] == 1) {
        H.push_back(v);
      }
    }
    for (std::size_t n = 0; n < samples; ++n) {
      auto [a, end] = walk(e, rng() % (max_len + 1));
      auto back     = shortest_word(g, end, H[rng() % H.size()]);
      if (!back) {
        continue;
      }
      auto gamma = concat(a, *back);
      ++ret.checked;
      try {
        auto p    = cs.phi(1, gamma);
        auto r    = in_h(p);
        auto want = g.read(e, gamma);
        if (!r || !want) {
          ++out.unknown;
        } else if (*r != *want) {
          ret.fail("gamma = " + cs.dotted(gamma) + ": psi(phi(gamma)) = " + cs.dotted(cs.psi(p))
                   + " ends at " + std::to_string(*r) + ", gamma at " + std::to_string(*want));
        }
        for (std::size_t q = 0; q <= gamma.size(); ++q) {
          Word w1(gamma.begin(), gamma.begin() + static_cast<std::ptrdiff_t>(q));
          Word w2(gamma.begin() + static_cast<std::ptrdiff_t>(q), gamma.end());
          auto c = cs.act(1, w1);
          if (!c || !cs.in_cover(*c)) {
            continue;
          }
          ++comp.checked;
          auto lhs = cs.phi(1, w1);
          auto rhs = cs.phi(*c, w2);
          lhs.insert(lhs.end(), rhs.begin(), rhs.end());
          if (lhs != p) {
            comp.fail("gamma = " + cs.dotted(gamma) + " split at " + std::to_string(q));
          }
        }
      } catch (Error const& ex) {
        ret.fail("gamma = " + cs.dotted(gamma) + ": " + ex.what());
      }
    }
    return out;
  }

  struct SubgroupRelation {
    std::string family;
    SymbolWord  lhs;
    SymbolWord  rhs;
  };

  //! b = phi(psi(b)), and the finite sets b1 = b2 and b1 b2 = 1 read off by
  //! replaying psi in the model; at most `cap` relations.
  inline std::vector<SubgroupRelation> inspection_relations(CosetSystem const& cs,
                                                            std::size_t        cap = 1000) {
    std::vector<SubgroupRelation> out;
    auto const& g = cs.model().graph;
    auto const  e = cs.model().idempotent;
    auto const  n = cs.symbols().size();
    for (std::size_t b = 0; b < n && out.size() < cap; ++b) {
      out.push_back({"b = phi(psi(b))", {b}, cs.phi(1, cs.symbols()[b].psi)});
    }
    std::vector<std::optional<vertex_type>> img(n);
    for (std::size_t b = 0; b < n; ++b) {
      img[b] = g.read(e, cs.symbols()[b].psi);
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n && out.size() < cap; ++b) {
        if (img[a] && img[a] == img[b]) {
          out.push_back({"b1 = b2", {a}, {b}});
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n && out.size() < cap; ++b) {
        auto t = g.read(e, cs.psi({a, b}));
        if (t && *t == e) {
          out.push_back({"b1 b2 = 1", {a, b}, {}});
        }
      }
    }
    return out;
  }

}  // namespace invmon

#endif  // INVMON_SUBGROUP_HPP_
