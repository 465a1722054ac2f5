// Stephen's procedure in synchronous rounds, with budgeted semi-decisions
// for right units, units and equality of right units.

#ifndef INVMON_STEPHEN_HPP_
#define INVMON_STEPHEN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "digraph.hpp"
#include "error.hpp"
#include "presentation.hpp"
#include "words.hpp"

namespace invmon {

  struct StephenBudget {
    std::size_t rounds     = 8;
    std::size_t vertex_cap = 200000;
    //! Only sew at vertices within this undirected distance of the root.
    std::optional<std::size_t> radius;
  };

  struct SchutzenbergerApprox {
    LabeledDigraph graph;  // graph.root() is the end of the base word
    vertex_type    start      = 0;
    std::size_t    rounds     = 0;
    std::size_t    vertex_cap = 0;
    bool           stabilized = false;
    bool           capped     = false;

    vertex_type root() const {
      return *graph.root();
    }
  };

  //! True iff r reads as a closed walk at v.
  inline bool reads_closed(LabeledDigraph const& g, vertex_type v, Word const& r) {
    auto e = g.read(v, r);
    return e && *e == v;
  }

  class StephenRun {
   public:
    StephenRun(Presentation const& p, Word const& base, StephenBudget budget = {})
        : _budget(budget) {
      if (!is_involutive(p.kind)) {
        throw Error("Stephen's procedure needs a special_inverse or group presentation, got "
                    + to_string(p.kind));
      }
      p.alphabet.validate(base);
      for (auto const& r : p.relators()) {
        if (!r.empty()) {
          _relators.push_back(r);
        }
      }
      LabeledDigraph lin(p.alphabet, base.size() + 1);
      for (std::size_t i = 0; i < base.size(); ++i) {
        lin.add_letter_edge(static_cast<vertex_type>(i), base[i], static_cast<vertex_type>(i + 1));
      }
      lin.set_root(static_cast<vertex_type>(base.size()));
      auto f          = fold(lin);
      _approx.graph   = std::move(f.graph);
      _approx.start   = f.map[0];
      _approx.vertex_cap = budget.vertex_cap;
      if (_relators.empty()) {
        _approx.stabilized = true;
      }
    }

    //! One synchronous round; false once stabilized or capped.
    bool step() {
      if (_approx.stabilized || _approx.capped) {
        return false;
      }
      auto&       g  = _approx.graph;
      auto const  n0 = static_cast<vertex_type>(g.num_vertices());
      std::vector<std::size_t> dist;
      bool                     horizon = false;
      if (_budget.radius) {
        dist = bfs_distances(g, {*g.root()}, *_budget.radius + 1);
      }
      LabeledDigraph next  = g;
      bool           sewed = false;
      for (vertex_type v = 0; v < n0; ++v) {
        if (_budget.radius && dist[v] > *_budget.radius) {
          horizon = true;
          continue;
        }
        for (auto const& r : _relators) {
          sewed |= sew(g, next, v, r);
        }
      }
      if (!sewed) {
        _approx.stabilized = !horizon;
        if (horizon) {
          _exhausted = true;
        }
        return false;
      }
      auto f = fold(next);
      if (f.graph.num_vertices() > _budget.vertex_cap) {
        _approx.capped = true;
        return false;
      }
      _approx.graph = std::move(f.graph);
      _approx.start = f.map[_approx.start];
      ++_approx.rounds;
      return true;
    }

    SchutzenbergerApprox const& run(std::size_t rounds) {
      while (_approx.rounds < rounds && step()) {
      }
      return _approx;
    }

    SchutzenbergerApprox const& approx() const noexcept {
      return _approx;
    }

    //! Nothing more will change: stabilized, capped, or every vertex inside
    //! the radius already carries all relator loops.
    bool finished() const noexcept {
      return _approx.stabilized || _approx.capped || _exhausted;
    }

    std::vector<Word> const& relators() const noexcept {
      return _relators;
    }

   private:
    // Adds to `next` the part of a loop labelled r at v that is not already
    // readable in g from either end.
    static bool sew(LabeledDigraph const& g, LabeledDigraph& next, vertex_type v, Word const& r) {
      std::size_t const        m = r.size();
      std::vector<vertex_type> a{v};
      while (a.size() <= m) {
        auto n = g.follow(a.back(), r[a.size() - 1]);
        if (!n) {
          break;
        }
        a.push_back(*n);
      }
      std::size_t i = a.size() - 1;
      if (i == m) {
        if (a.back() == v) {
          return false;
        }
        --i;  // re-add the last edge into v; folding identifies the ends
      }
      // b = vertex from which r[j..m) reads to v, for the least j > i
      std::size_t j = m;
      vertex_type b = v;
      while (j > i + 1) {
        auto n = g.follow(b, inverse_letter(r[j - 1]));
        if (!n) {
          break;
        }
        b = *n;
        --j;
      }
      vertex_type cur = a[i];
      for (std::size_t k = i; k + 1 < j; ++k) {
        auto fresh = next.add_vertex();
        next.add_letter_edge(cur, r[k], fresh);
        cur = fresh;
      }
      next.add_letter_edge(cur, r[j - 1], b);
      return true;
    }

    StephenBudget        _budget;
    std::vector<Word>    _relators;
    SchutzenbergerApprox _approx;
    bool                 _exhausted = false;
  };

  inline SchutzenbergerApprox approximate(Presentation const& p,
                                          Word const&         base,
                                          StephenBudget       budget = {}) {
    StephenRun run(p, base, budget);
    return run.run(budget.rounds);
  }

  //! Relators fail to close at these vertices (among the first `limit`).
  inline std::vector<vertex_type> relator_closure_failures(LabeledDigraph const&    g,
                                                           std::vector<Word> const& relators,
                                                           std::size_t              limit) {
    std::vector<vertex_type> bad;
    for (vertex_type v = 0; v < std::min(limit, g.num_vertices()); ++v) {
      for (auto const& r : relators) {
        if (!reads_closed(g, v, r)) {
          bad.push_back(v);
          break;
        }
      }
    }
    return bad;
  }

  ////////////////////////////////////////////////////////////////////////
  // Semi-decisions
  ////////////////////////////////////////////////////////////////////////

  enum class Verdict { yes, unknown, no };

  inline std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::yes:
        return "yes";
      case Verdict::no:
        return "no";
      case Verdict::unknown:
        return "unknown";
    }
    return "?";
  }

  //! A walk from the root of an approximation.
  struct Witness {
    Word                     word;
    std::vector<vertex_type> walk;
  };

  struct SemiDecision {
    Verdict              verdict = Verdict::unknown;
    std::vector<Witness> witnesses;
    std::size_t          rounds   = 0;
    std::size_t          vertices = 0;
    bool                 stabilized = false;
    bool                 capped     = false;

    explicit operator bool() const noexcept {
      return verdict == Verdict::yes;
    }
  };

  inline std::optional<Witness> walk_from(LabeledDigraph const& g, vertex_type v, Word const& w) {
    Witness wit{w, {v}};
    for (auto x : w) {
      auto n = g.follow(wit.walk.back(), x);
      if (!n) {
        return std::nullopt;
      }
      wit.walk.push_back(*n);
    }
    return wit;
  }

  //! Replays a witness against a graph.
  inline bool replays(LabeledDigraph const& g, Witness const& w) {
    if (w.walk.size() != w.word.size() + 1) {
      return false;
    }
    for (std::size_t i = 0; i < w.word.size(); ++i) {
      auto n = g.follow(w.walk[i], w.word[i]);
      if (!n || *n != w.walk[i + 1]) {
        return false;
      }
    }
    return true;
  }

  namespace detail {
    // Runs rounds from the empty base until `test` yields witnesses.
    template <typename Test>
    SemiDecision semi_decide(Presentation const& p, StephenBudget budget, Test&& test) {
      StephenRun   run(p, {}, budget);
      SemiDecision d;
      while (true) {
        auto const& a = run.approx();
        d.rounds      = a.rounds;
        d.vertices    = a.graph.num_vertices();
        d.stabilized  = a.stabilized;
        d.capped      = a.capped;
        if (auto w = test(a)) {
          d.verdict   = Verdict::yes;
          d.witnesses = std::move(*w);
          return d;
        }
        if (a.rounds >= budget.rounds || !run.step()) {
          d.stabilized = run.approx().stabilized;
          d.capped     = run.approx().capped;
          return d;
        }
      }
    }
  }  // namespace detail

  //! yes iff w labels a walk from the root of an approximation of the
  //! Schützenberger graph of 1.
  inline SemiDecision is_right_unit(Presentation const& p, Word const& w, StephenBudget budget = {}) {
    p.alphabet.validate(w);
    return detail::semi_decide(
        p, budget, [&](SchutzenbergerApprox const& a) -> std::optional<std::vector<Witness>> {
          if (auto wit = walk_from(a.graph, a.root(), w)) {
            return std::vector<Witness>{*wit};
          }
          return std::nullopt;
        });
  }

  inline SemiDecision equal_right_units(Presentation const& p,
                                        Word const&         u,
                                        Word const&         v,
                                        StephenBudget       budget = {}) {
    p.alphabet.validate(u);
    p.alphabet.validate(v);
    return detail::semi_decide(
        p, budget, [&](SchutzenbergerApprox const& a) -> std::optional<std::vector<Witness>> {
          auto wu = walk_from(a.graph, a.root(), u);
          auto wv = walk_from(a.graph, a.root(), v);
          if (wu && wv && wu->walk.back() == wv->walk.back()) {
            return std::vector<Witness>{*wu, *wv};
          }
          return std::nullopt;
        });
  }

  inline SemiDecision is_unit(Presentation const& p, Word const& w, StephenBudget budget = {}) {
    p.alphabet.validate(w);
    auto wi = invert_word(w);
    return detail::semi_decide(
        p, budget, [&](SchutzenbergerApprox const& a) -> std::optional<std::vector<Witness>> {
          auto x = walk_from(a.graph, a.root(), w);
          auto y = walk_from(a.graph, a.root(), wi);
          if (x && y) {
            return std::vector<Witness>{*x, *y};
          }
          return std::nullopt;
        });
  }

}  // namespace invmon

#endif  // INVMON_STEPHEN_HPP_
