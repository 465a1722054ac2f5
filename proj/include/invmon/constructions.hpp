// Builders for M_{S,T}, the truncated RC presentation Q of its right units,
// the generators of RU(M_{S,T}), the substitution psi, M_{Q,W}, R_{Q,W} and
// the elimination check for the b_j.

#ifndef INVMON_CONSTRUCTIONS_HPP_
#define INVMON_CONSTRUCTIONS_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"
#include "rc.hpp"
#include "words.hpp"

namespace invmon {

  struct MstInput {
    Presentation             s_pres;  // rc_monoid <A | u_i = v_i>
    std::vector<std::string> b_subset;

    std::size_t k() const noexcept {
      return s_pres.relations.size();
    }
  };

  //! Adds a generator b and the relation b = w so that the submonoid
  //! generated by w is generated by a letter of A.
  inline void normalize_b(MstInput& in, std::string const& b, Word const& w) {
    in.s_pres.alphabet.validate(w);
    if (!is_positive(w)) {
      throw Error("normalize_b: w_b must be a positive word");
    }
    auto g = in.s_pres.alphabet.add(b);
    in.s_pres.add_relation({make_letter(g)}, w);
    in.b_subset.push_back(b);
  }

  namespace detail {
    inline std::string join(std::vector<std::string> const& xs, char sep) {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != 0) {
          out += sep;
        }
        out += xs[i];
      }
      return out;
    }

    inline std::vector<std::string> split(std::string_view s, char sep) {
      std::vector<std::string> out;
      if (s.empty()) {
        return out;
      }
      std::size_t pos = 0;
      while (true) {
        auto c = s.find(sep, pos);
        out.emplace_back(s.substr(pos, c == std::string_view::npos ? s.size() - pos : c - pos));
        if (c == std::string_view::npos) {
          break;
        }
        pos = c + 1;
      }
      return out;
    }

    //! Letter names joined by '.', the empty word as `1`.
    inline std::string dotted(Alphabet const& A, Word const& w) {
      if (w.empty()) {
        return "1";
      }
      std::vector<std::string> names;
      for (auto x : w) {
        names.push_back(A.letter_name(x));
      }
      return join(names, '.');
    }

    inline Word undotted(Alphabet const& A, std::string_view s) {
      if (s == "1") {
        return {};
      }
      Word out;
      for (auto const& n : split(s, '.')) {
        auto inv  = !n.empty() && n.back() == '\'';
        out.push_back(A.letter(inv ? n.substr(0, n.size() - 1) : n, inv));
      }
      return out;
    }

    inline std::string require_meta(Presentation const& p, std::string const& key) {
      auto v = p.meta_value(key);
      if (!v) {
        throw Error("provenance missing: no @meta " + key);
      }
      return *v;
    }

    inline void check_mst_input(MstInput const& in) {
      if (in.s_pres.kind != Kind::rc_monoid && in.s_pres.kind != Kind::monoid) {
        throw Error("S must be given by an rc_monoid presentation");
      }
      if (in.k() == 0) {
        throw Error("S must have at least one relation");
      }
      for (auto const& b : in.b_subset) {
        if (!in.s_pres.alphabet.contains(b)) {
          throw Error("B is not a subset of A: \"" + b + "\" is not a generator of S");
        }
      }
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // M_{S,T}
  ////////////////////////////////////////////////////////////////////////

  inline Presentation build_mst(MstInput const& in) {
    detail::check_mst_input(in);
    auto const&  A = in.s_pres.alphabet;
    auto const   k = in.k();
    Presentation m(Kind::special_inverse, A);
    try {
      for (std::size_t i = 0; i <= k; ++i) {
        m.alphabet.add("p" + std::to_string(i));
      }
      m.alphabet.add("z");
      m.alphabet.add("d");
    } catch (Error const& e) {
      throw Error(std::string("generator name clash: ") + e.what());
    }
    auto const& S = m.alphabet;
    auto        p = [&](std::size_t i, bool inv = false) {
      return S.letter("p" + std::to_string(i), inv);
    };
    auto z = S.letter("z"), zi = S.letter("z", true);
    auto d = S.letter("d"), di = S.letter("d", true);
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t a = 0; a < A.size(); ++a) {
        m.add_relation({p(i), make_letter(a), p(i, true), p(i), make_letter(a, true), p(i, true)});
      }
    }
    for (std::size_t i = 1; i <= k; ++i) {
      auto const& rel = in.s_pres.relations[i - 1];
      m.add_relation(concat({{p(i)}, rel.lhs, {di}, invert_word(rel.rhs), {p(i, true)}}));
    }
    m.add_relation({p(0), d, p(0, true)});
    for (auto const& b : in.b_subset) {
      auto x = A.letter(b);
      m.add_relation({z, x, zi, z, inverse_letter(x), zi});
    }
    Word last{z};
    for (std::size_t i = 0; i <= k; ++i) {
      last.push_back(p(i, true));
      last.push_back(p(i));
    }
    last.push_back(zi);
    m.add_relation(last);
    m.meta = {{"construction", "mst"},
              {"k", std::to_string(k)},
              {"A", detail::join(A.names(), ',')},
              {"B", detail::join(in.b_subset, ',')}};
    return m;
  }

  struct MstProvenance {
    std::size_t              k = 0;
    std::vector<std::string> A;
    std::vector<std::string> B;
  };

  inline MstProvenance mst_provenance(Presentation const& p) {
    auto c = detail::require_meta(p, "construction");
    if (c != "mst" && c != "q") {
      throw Error("provenance missing: presentation was not built by build_mst or build_q");
    }
    MstProvenance out;
    out.k = std::stoul(detail::require_meta(p, "k"));
    out.A = detail::split(detail::require_meta(p, "A"), ',');
    out.B = detail::split(detail::require_meta(p, "B"), ',');
    return out;
  }

  //! p_i, z p_i', p_i a p_i' and z b z', in that order.
  inline std::vector<Word> ru_generators(Presentation const& mst) {
    auto const  prov = mst_provenance(mst);
    auto const& S    = mst.alphabet;
    auto        p    = [&](std::size_t i, bool inv = false) {
      return S.letter("p" + std::to_string(i), inv);
    };
    std::vector<Word> out;
    for (std::size_t i = 0; i <= prov.k; ++i) {
      out.push_back({p(i)});
    }
    for (std::size_t i = 0; i <= prov.k; ++i) {
      out.push_back({S.letter("z"), p(i, true)});
    }
    for (std::size_t i = 0; i <= prov.k; ++i) {
      for (auto const& a : prov.A) {
        out.push_back({p(i), S.letter(a), p(i, true)});
      }
    }
    for (auto const& b : prov.B) {
      out.push_back({S.letter("z"), S.letter(b), S.letter("z", true)});
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Q
  ////////////////////////////////////////////////////////////////////////

  struct QTruncation {
    std::size_t L         = 2;
    std::size_t max_len   = 8;  // chain search budgets for S-equalities
    std::size_t max_steps = 20000;
  };

  //! Words of length at most L over n letters in shortlex order.
  inline std::vector<Word> shortlex_words(std::size_t n, std::size_t L) {
    std::vector<Word> out{Word{}};
    std::size_t       lo = 0;
    for (std::size_t len = 1; len <= L; ++len) {
      std::size_t hi = out.size();
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t g = 0; g < n; ++g) {
          auto w = out[i];
          w.push_back(make_letter(g));
          out.push_back(std::move(w));
        }
      }
      lo = hi;
    }
    return out;
  }

  inline Presentation build_q(MstInput const& in, QTruncation const& t = {}) {
    detail::check_mst_input(in);
    auto const&  A = in.s_pres.alphabet;
    auto const   k = in.k();
    Presentation q(Kind::rc_monoid, Alphabet{});
    auto         idx = [](std::size_t i) { return std::to_string(i); };
    try {
      for (std::size_t i = 0; i <= k; ++i) {
        q.alphabet.add("p" + idx(i));
      }
      for (std::size_t i = 0; i <= k; ++i) {
        q.alphabet.add("q" + idx(i));
      }
      for (std::size_t i = 0; i <= k; ++i) {
        for (auto const& a : A.names()) {
          q.alphabet.add(decorated_name(a, idx(i)));
        }
      }
      for (auto const& b : in.b_subset) {
        q.alphabet.add(decorated_name(b, "z"));
      }
    } catch (Error const& e) {
      throw Error(std::string("generator name clash: ") + e.what());
    }
    auto const& Q   = q.alphabet;
    auto        P   = [&](std::size_t i) { return Q.letter("p" + idx(i)); };
    auto        Qi  = [&](std::size_t i) { return Q.letter("q" + idx(i)); };
    auto        dec = [&](Word const& w, std::size_t i) { return index_decorate(w, A, idx(i), Q); };

    auto words = shortlex_words(A.size(), t.L);
    for (auto const& w : words) {
      for (std::size_t i = 1; i <= k; ++i) {
        q.add_relation(concat({{Qi(i)}, dec(w, i), {P(i)}}), concat({{Qi(0)}, dec(w, 0), {P(0)}}));
      }
    }
    q.trunc = {{"L", std::to_string(t.L)},
               {"max_len", std::to_string(t.max_len)},
               {"max_steps", std::to_string(t.max_steps)}};
    std::vector<std::pair<Word, Word>> certified;
    for (std::size_t x = 0; x < words.size(); ++x) {
      for (std::size_t y = x + 1; y < words.size(); ++y) {
        auto res = search_chain(in.s_pres, words[x], words[y], t.max_len, t.max_steps);
        if (!res) {
          continue;
        }
        certified.emplace_back(words[x], words[y]);
        std::vector<std::string> steps;
        for (auto const& s : res.chain->steps) {
          steps.push_back(format_step(A, s));
        }
        q.trunc.emplace_back("cert", detail::dotted(A, words[x]) + "|" + detail::dotted(A, words[y])
                                         + "|" + (steps.empty() ? "-" : detail::join(steps, ',')));
      }
    }
    for (std::size_t i = 0; i <= k; ++i) {
      for (auto const& [u, v] : certified) {
        q.add_relation(concat({Qi(i)}, dec(u, i)), concat({Qi(i)}, dec(v, i)));
      }
    }
    for (auto const& b : in.b_subset) {
      auto bz = Q.letter(decorated_name(b, "z"));
      for (std::size_t i = 0; i <= k; ++i) {
        q.add_relation({Qi(i), dec({A.letter(b)}, i)[0]}, {bz, Qi(i)});
      }
    }
    q.meta = {{"construction", "q"},
              {"k", std::to_string(k)},
              {"A", detail::join(A.names(), ',')},
              {"B", detail::join(in.b_subset, ',')}};
    return q;
  }

  //! Replays every `cert` entry of a Q presentation in S.
  inline std::vector<std::string> check_q_certificates(Presentation const& s, Presentation const& q) {
    std::vector<std::string> bad;
    for (auto const& [key, value] : q.trunc) {
      if (key != "cert") {
        continue;
      }
      auto parts = detail::split(value, '|');
      try {
        if (parts.size() != 3) {
          throw Error("expected u|v|steps");
        }
        auto                u = detail::undotted(s.alphabet, parts[0]);
        auto                v = detail::undotted(s.alphabet, parts[1]);
        std::vector<RStep> steps;
        auto                cur = to_rword(u);
        for (auto const& st : parts[2] == "-" ? std::vector<std::string>{} : detail::split(parts[2], ',')) {
          auto step = parse_step(s.alphabet, st);
          if (step.kind == StepKind::deletion && step.pos < cur.size()) {
            step.letter = cur[step.pos] >> 1;
          }
          auto r = apply_step(s, cur, step);
          if (auto* msg = std::get_if<std::string>(&r)) {
            throw Error(*msg);
          }
          cur = std::get<RWord>(r);
          steps.push_back(step);
        }
        auto chain = replay_steps(s, to_rword(u), steps);
        if (!validate_chain(s, chain) || chain.words.back() != to_rword(v)) {
          throw Error("chain does not connect the words");
        }
      } catch (Error const& e) {
        bad.push_back(value + ": " + e.what());
      }
    }
    return bad;
  }

  ////////////////////////////////////////////////////////////////////////
  // psi
  ////////////////////////////////////////////////////////////////////////

  //! p_i -> p_i, q_i -> z p_i', a^(i) -> p_i a p_i', b^(z) -> z b z'.
  inline Word psi_substitute(Word const& w, Alphabet const& q_alphabet, Presentation const& mst) {
    auto const& S = mst.alphabet;
    auto        image = [&](std::string const& name) -> Word {
      auto caret = name.find('^');
      if (caret != std::string::npos) {
        auto base = name.substr(0, caret);
        auto tag  = name.substr(caret + 1);
        if (!S.contains(base)) {
          throw Error("unknown letter \"" + name + "\"");
        }
        if (tag == "z") {
          return {S.letter("z"), S.letter(base), S.letter("z", true)};
        }
        auto pi = "p" + tag;
        if (!S.contains(pi)) {
          throw Error("unknown letter \"" + name + "\"");
        }
        return {S.letter(pi), S.letter(base), S.letter(pi, true)};
      }
      if (name.size() > 1 && (name[0] == 'p' || name[0] == 'q')
          && std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        auto pi = "p" + name.substr(1);
        if (!S.contains(pi)) {
          throw Error("unknown letter \"" + name + "\"");
        }
        if (name[0] == 'p') {
          return {S.letter(pi)};
        }
        return {S.letter("z"), S.letter(pi, true)};
      }
      throw Error("unknown letter \"" + name + "\"");
    };
    Word out;
    for (auto x : w) {
      auto img = image(q_alphabet.name(generator_of(x)));
      if (is_inverse_letter(x)) {
        img = invert_word(img);
      }
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // M_{Q,W} and R_{Q,W}
  ////////////////////////////////////////////////////////////////////////

  //! e(u_1, ..., u_m) = u_1 u_1' ... u_m u_m'
  inline Word e_word(std::vector<Word> const& us) {
    Word out;
    for (auto const& u : us) {
      out.insert(out.end(), u.begin(), u.end());
      auto ui = invert_word(u);
      out.insert(out.end(), ui.begin(), ui.end());
    }
    return out;
  }

  struct MqwResult {
    Presentation primary;
    Presentation alternate;
  };

  namespace detail {
    inline void check_group_input(Presentation const& g, std::vector<Word> const& W) {
      if (g.kind != Kind::group && g.kind != Kind::special_inverse) {
        throw Error("expected a group presentation, got " + to_string(g.kind));
      }
      if (g.relations.empty()) {
        throw Error("the relator set must not be empty");
      }
      for (auto const& w : W) {
        g.alphabet.validate(w);
      }
    }
  }  // namespace detail

  inline MqwResult build_mqw(Presentation const& group, std::vector<Word> const& W,
                             std::string const& t_name = "t") {
    detail::check_group_input(group, W);
    auto const& A = group.alphabet;
    Alphabet    S = A;
    try {
      S.add(t_name);
    } catch (Error const& e) {
      throw Error(std::string("generator name clash: ") + e.what());
    }
    auto              t = S.letter(t_name), ti = S.letter(t_name, true);
    auto              rels = group.relators();
    std::vector<Word> us;
    for (std::size_t a = 0; a < A.size(); ++a) {
      us.push_back({make_letter(a)});
    }
    for (auto const& w : W) {
      us.push_back(concat({{t}, w, {ti}}));
    }
    for (std::size_t a = 0; a < A.size(); ++a) {
      us.push_back({make_letter(a, true)});
    }
    MqwResult res{Presentation(Kind::special_inverse, S), Presentation(Kind::special_inverse, S)};
    res.primary.add_relation(concat(e_word(us), rels[0]));
    for (std::size_t i = 1; i < rels.size(); ++i) {
      res.primary.add_relation(rels[i]);
    }
    for (auto const& r : rels) {
      res.alternate.add_relation(r);
    }
    for (std::size_t a = 0; a < A.size(); ++a) {
      res.alternate.add_relation({make_letter(a), make_letter(a, true)});
      res.alternate.add_relation({make_letter(a, true), make_letter(a)});
    }
    for (auto const& w : W) {
      res.alternate.add_relation(concat({{t}, w, {ti, t}, invert_word(w), {ti}}));
    }
    std::vector<std::string> ws;
    for (auto const& w : W) {
      ws.push_back(detail::dotted(A, w));
    }
    for (auto* p : {&res.primary, &res.alternate}) {
      p->meta = {{"construction", p == &res.primary ? "mqw" : "mqw_alt"},
                 {"t", t_name},
                 {"W", detail::join(ws, ',')}};
    }
    return res;
  }

  inline std::string inverse_generator_name(std::string const& a) {
    return a + "_inv";
  }

  inline Presentation build_rqw(Presentation const& group, std::vector<Word> const& W,
                                std::string const& t_name = "t") {
    detail::check_group_input(group, W);
    auto const&  A = group.alphabet;
    Presentation r(Kind::rc_monoid, A);
    std::vector<std::string> bs;
    try {
      for (auto const& a : A.names()) {
        r.alphabet.add(inverse_generator_name(a));
      }
      for (std::size_t j = 1; j <= W.size(); ++j) {
        bs.push_back("b" + std::to_string(j));
        r.alphabet.add(bs.back());
      }
      r.alphabet.add(t_name);
    } catch (Error const& e) {
      throw Error(std::string("generator name clash: ") + e.what());
    }
    auto const n      = A.size();
    auto       lift   = [&](Word const& w) {
      Word out;
      for (auto x : w) {
        out.push_back(make_letter(generator_of(x) + (is_inverse_letter(x) ? n : 0)));
      }
      return out;
    };
    auto t = r.alphabet.letter(t_name);
    for (std::size_t a = 0; a < n; ++a) {
      r.add_relation({make_letter(a), make_letter(a + n)}, {});
      r.add_relation({make_letter(a + n), make_letter(a)}, {});
    }
    for (auto const& rel : group.relators()) {
      r.add_relation(lift(rel), {});
    }
    std::vector<std::string> ws;
    for (std::size_t j = 0; j < W.size(); ++j) {
      r.add_relation(concat({{t}, lift(W[j])}), {r.alphabet.letter(bs[j]), t});
      ws.push_back(detail::dotted(r.alphabet, lift(W[j])));
    }
    r.meta = {{"construction", "rqw"},
              {"A", detail::join(A.names(), ',')},
              {"B", detail::join(bs, ',')},
              {"t", t_name},
              {"W", detail::join(ws, ',')}};
    return r;
  }

  struct TietzeReport {
    bool                     ok = true;
    std::vector<std::string> eliminated;      // relations reducing to 1
    std::vector<std::string> group_relators;  // t-free residues kept
    std::vector<std::string> failures;

    explicit operator bool() const noexcept {
      return ok;
    }
  };

  //! Substitutes b_j -> t w_j t', a_inv -> a' and reduces lhs rhs^-1 in the
  //! free group on A and t. Passes iff every relation reduces to 1 or to a
  //! relator of K_Q, i.e. what remains presents K_Q * FG(t).
  inline TietzeReport tietze_check_rqw(Presentation const& r) {
    if (detail::require_meta(r, "construction") != "rqw") {
      throw Error("provenance missing: presentation was not built by build_rqw");
    }
    auto A_names = detail::split(detail::require_meta(r, "A"), ',');
    auto B_names = detail::split(detail::require_meta(r, "B"), ',');
    auto t_name  = detail::require_meta(r, "t");
    auto W_text  = detail::split(detail::require_meta(r, "W"), ',');
    if (W_text.size() != B_names.size()) {
      throw Error("provenance mismatch: |W| != |B|");
    }
    Alphabet G(A_names);
    G.add(t_name);
    auto const& R = r.alphabet;
    // images of the generators of R in the free group on A and t
    std::vector<Word> img(R.size());
    for (std::size_t a = 0; a < A_names.size(); ++a) {
      img[R.letter(A_names[a]) >> 1] = {G.letter(A_names[a])};
      img[R.letter(inverse_generator_name(A_names[a])) >> 1] = {G.letter(A_names[a], true)};
    }
    auto t = G.letter(t_name);
    img[R.letter(t_name) >> 1] = {t};
    auto sub = [&](Word const& w) {
      Word out;
      for (auto x : w) {
        auto const& y = img[generator_of(x)];
        auto        z = is_inverse_letter(x) ? invert_word(y) : y;
        out.insert(out.end(), z.begin(), z.end());
      }
      return out;
    };
    for (std::size_t j = 0; j < B_names.size(); ++j) {
      auto wj = sub(detail::undotted(R, W_text[j]));
      img[R.letter(B_names[j]) >> 1] = concat({{t}, wj, {inverse_letter(t)}});
    }
    // relators of K_Q as they appear in R, up to inversion
    std::set<Word> kq;
    for (auto const& rel : r.relations) {
      auto lhs = rel.lhs;
      bool tb  = std::any_of(lhs.begin(), lhs.end(), [&](letter_type x) {
        auto n = R.name(generator_of(x));
        return n == t_name || std::find(B_names.begin(), B_names.end(), n) != B_names.end();
      });
      if (!tb && rel.rhs.empty()) {
        auto g = free_reduce(sub(lhs));
        if (!g.empty()) {
          kq.insert(g);
          kq.insert(invert_word(g));
        }
      }
    }
    TietzeReport rep;
    for (auto const& rel : r.relations) {
      auto text = R.format(rel.lhs) + " = " + R.format(rel.rhs);
      auto red  = free_reduce(concat(sub(rel.lhs), invert_word(sub(rel.rhs))));
      if (red.empty()) {
        rep.eliminated.push_back(text);
      } else if (std::find(red.begin(), red.end(), t) == red.end()
                 && std::find(red.begin(), red.end(), inverse_letter(t)) == red.end()
                 && kq.count(red) != 0) {
        rep.group_relators.push_back(text);
      } else {
        rep.ok = false;
        rep.failures.push_back(text + "  ->  " + G.format(red));
      }
    }
    return rep;
  }

}  // namespace invmon

#endif  // INVMON_CONSTRUCTIONS_HPP_
