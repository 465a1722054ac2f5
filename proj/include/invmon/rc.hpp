// Right cancellative chains: steps, validation, bounded bidirectional
// search, and the block-flip word problem of the M_r family.

#ifndef INVMON_RC_HPP_
#define INVMON_RC_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"
#include "words.hpp"

namespace invmon {

  //! Letters of (A u A^R)*: `2 * generator` for a, `2 * generator + 1` for a^R.
  using RWord = std::vector<std::uint32_t>;

  constexpr std::uint32_t r_letter(std::size_t gen, bool tagged = false) {
    return static_cast<std::uint32_t>(2 * gen + (tagged ? 1 : 0));
  }
  constexpr bool is_r_tagged(std::uint32_t x) {
    return (x & 1U) != 0;
  }

  inline RWord to_rword(Word const& w) {
    RWord out;
    out.reserve(w.size());
    for (auto x : w) {
      if (is_inverse_letter(x)) {
        throw Error("formal inverses are not allowed in RC words");
      }
      out.push_back(r_letter(generator_of(x)));
    }
    return out;
  }

  inline std::optional<Word> to_word(RWord const& w) {
    Word out;
    out.reserve(w.size());
    for (auto x : w) {
      if (is_r_tagged(x)) {
        return std::nullopt;
      }
      out.push_back(make_letter(x >> 1));
    }
    return out;
  }

  //! Length of the longest prefix without tagged letters.
  inline std::size_t positive_prefix(RWord const& w) {
    std::size_t f = 0;
    while (f < w.size() && !is_r_tagged(w[f])) {
      ++f;
    }
    return f;
  }

  inline std::string format_rword(Alphabet const& A, RWord const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += ' ';
      }
      out += A.name(w[i] >> 1);
      if (is_r_tagged(w[i])) {
        out += "^R";
      }
    }
    return out;
  }

  inline RWord parse_rword(Alphabet const& A, std::string_view text) {
    RWord out;
    for (auto tok : detail::split_ws(text)) {
      if (tok == "1") {
        continue;
      }
      bool tagged = tok.size() > 2 && tok.substr(tok.size() - 2) == "^R";
      auto name   = tagged ? tok.substr(0, tok.size() - 2) : tok;
      auto g      = A.index(name);
      if (!g) {
        throw ParseError("unknown generator \"" + std::string(name) + "\"");
      }
      out.push_back(r_letter(*g, tagged));
    }
    return out;
  }

  enum class StepKind { r_step, insertion, deletion };

  struct RStep {
    StepKind    kind     = StepKind::r_step;
    std::size_t pos      = 0;  // length of the positive prefix p
    std::size_t relation = 0;
    bool        forward  = true;  // lhs -> rhs
    std::size_t letter   = 0;     // generator inserted or deleted

    bool operator==(RStep const&) const = default;
  };

  struct RChain {
    std::vector<RWord> words;
    std::vector<RStep> steps;
  };

  //! The step undoing s, as applied to the word s produced.
  inline RStep inverse_step(RStep s) {
    switch (s.kind) {
      case StepKind::r_step:
        s.forward = !s.forward;
        break;
      case StepKind::insertion:
        s.kind = StepKind::deletion;
        break;
      case StepKind::deletion:
        s.kind = StepKind::insertion;
        break;
    }
    return s;
  }

  //! Applies s to u; the error message says why it is not legal.
  inline std::variant<RWord, std::string> apply_step(Presentation const& p,
                                                     RWord const&        u,
                                                     RStep const&        s) {
    auto const f = positive_prefix(u);
    if (s.pos > f) {
      return "prefix of length " + std::to_string(s.pos) + " is not in A*";
    }
    switch (s.kind) {
      case StepKind::r_step: {
        if (s.relation >= p.relations.size()) {
          return "relation " + std::to_string(s.relation) + " does not exist";
        }
        auto const& rel  = p.relations[s.relation];
        auto        from = to_rword(s.forward ? rel.lhs : rel.rhs);
        auto        to   = to_rword(s.forward ? rel.rhs : rel.lhs);
        if (s.pos + from.size() > u.size()
            || !std::equal(from.begin(), from.end(), u.begin() + s.pos)) {
          return "relation side not found at position " + std::to_string(s.pos);
        }
        RWord out(u.begin(), u.begin() + s.pos);
        out.insert(out.end(), to.begin(), to.end());
        out.insert(out.end(), u.begin() + s.pos + from.size(), u.end());
        return out;
      }
      case StepKind::insertion: {
        if (s.letter >= p.alphabet.size()) {
          return "letter out of range";
        }
        RWord out(u.begin(), u.begin() + s.pos);
        out.push_back(r_letter(s.letter));
        out.push_back(r_letter(s.letter, true));
        out.insert(out.end(), u.begin() + s.pos, u.end());
        return out;
      }
      case StepKind::deletion: {
        if (s.pos + 2 > u.size() || u[s.pos] != r_letter(s.letter)
            || u[s.pos + 1] != r_letter(s.letter, true)) {
          return "no factor a a^R at position " + std::to_string(s.pos);
        }
        RWord out(u.begin(), u.begin() + s.pos);
        out.insert(out.end(), u.begin() + s.pos + 2, u.end());
        return out;
      }
    }
    return "unknown step kind";
  }

  struct ChainValidation {
    bool                       valid = true;
    std::optional<std::size_t> step;  // index of the first bad step
    std::string                message;

    explicit operator bool() const noexcept {
      return valid;
    }
  };

  //! Checks each step, the purity of the ends and the nesting of insertions
  //! and deletions.
  inline ChainValidation validate_chain(Presentation const& p, RChain const& c) {
    auto fail = [](std::optional<std::size_t> i, std::string msg) {
      return ChainValidation{false, i, std::move(msg)};
    };
    if (p.kind != Kind::rc_monoid && p.kind != Kind::monoid) {
      return fail(std::nullopt, "presentation kind must be rc_monoid");
    }
    if (c.words.empty()) {
      return fail(std::nullopt, "chain has no words");
    }
    if (c.words.size() != c.steps.size() + 1) {
      return fail(std::nullopt, "chain has " + std::to_string(c.words.size()) + " words but "
                                    + std::to_string(c.steps.size()) + " steps");
    }
    for (auto const& w : c.words) {
      for (auto x : w) {
        if ((x >> 1) >= p.alphabet.size()) {
          return fail(std::nullopt, "malformed word: letter not in alphabet");
        }
      }
    }
    if (positive_prefix(c.words.front()) != c.words.front().size()) {
      return fail(std::nullopt, "first word contains tagged letters");
    }
    if (positive_prefix(c.words.back()) != c.words.back().size()) {
      return fail(std::nullopt, "last word contains tagged letters");
    }
    // ids of open insertions, innermost last
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      auto const& s = c.steps[i];
      auto const& u = c.words[i];
      if (s.kind == StepKind::deletion) {
        if (open.empty()) {
          return fail(i, "deletion without a matching insertion");
        }
        if (s.pos > positive_prefix(u) && s.pos + 1 < u.size() && is_r_tagged(u[s.pos + 1])
            && u[s.pos] == (u[s.pos + 1] ^ 1U)) {
          return fail(i, "deletion crosses an open insertion (stack order violated)");
        }
      }
      auto r = apply_step(p, u, s);
      if (auto* msg = std::get_if<std::string>(&r)) {
        return fail(i, *msg);
      }
      if (std::get<RWord>(r) != c.words[i + 1]) {
        return fail(i, "word does not match the step");
      }
      if (s.kind == StepKind::insertion) {
        open.push_back(i);
      } else if (s.kind == StepKind::deletion) {
        open.pop_back();
      }
    }
    if (!open.empty()) {
      return fail(std::nullopt, "insertion at step " + std::to_string(open.back())
                                    + " is never deleted");
    }
    return {};
  }

  //! Replays the steps from the first word, filling in the words.
  inline RChain replay_steps(Presentation const& p, RWord u, std::vector<RStep> const& steps) {
    RChain c;
    c.words.push_back(std::move(u));
    for (std::size_t i = 0; i < steps.size(); ++i) {
      auto r = apply_step(p, c.words.back(), steps[i]);
      if (auto* msg = std::get_if<std::string>(&r)) {
        throw Error("step " + std::to_string(i) + ": " + *msg);
      }
      c.words.push_back(std::get<RWord>(std::move(r)));
      c.steps.push_back(steps[i]);
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form of steps and chains
  ////////////////////////////////////////////////////////////////////////

  //! `R<rel><+|->@<pos>`, `I<letter>@<pos>`, `D@<pos>`; relations are
  //! numbered from 0.
  inline std::string format_step(Alphabet const& A, RStep const& s) {
    switch (s.kind) {
      case StepKind::r_step:
        return "R" + std::to_string(s.relation) + (s.forward ? "+" : "-") + "@"
               + std::to_string(s.pos);
      case StepKind::insertion:
        return "I" + A.name(s.letter) + "@" + std::to_string(s.pos);
      case StepKind::deletion:
        return "D@" + std::to_string(s.pos);
    }
    return "?";
  }

  //! Deletion letters are left 0; `parse_chain` reads them off the words.
  inline RStep parse_step(Alphabet const& A, std::string_view t) {
    auto bad = [&]() { return ParseError("malformed step \"" + std::string(t) + "\""); };
    auto at  = t.rfind('@');
    if (t.empty() || at == std::string_view::npos || at + 1 == t.size()) {
      throw bad();
    }
    RStep       s;
    std::size_t pos = 0;
    for (char c : t.substr(at + 1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw bad();
      }
      pos = pos * 10 + static_cast<std::size_t>(c - '0');
    }
    s.pos     = pos;
    auto body = t.substr(1, at - 1);
    switch (t[0]) {
      case 'R': {
        if (body.size() < 2 || (body.back() != '+' && body.back() != '-')) {
          throw bad();
        }
        s.kind    = StepKind::r_step;
        s.forward = body.back() == '+';
        std::size_t rel = 0;
        for (char c : body.substr(0, body.size() - 1)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw bad();
          }
          rel = rel * 10 + static_cast<std::size_t>(c - '0');
        }
        s.relation = rel;
        break;
      }
      case 'I': {
        auto g = A.index(body);
        if (!g) {
          throw ParseError("unknown generator \"" + std::string(body) + "\" in step");
        }
        s.kind   = StepKind::insertion;
        s.letter = *g;
        break;
      }
      case 'D':
        if (!body.empty()) {
          throw bad();
        }
        s.kind = StepKind::deletion;
        break;
      default:
        throw bad();
    }
    return s;
  }

  inline std::string serialize_chain(Alphabet const& A, RChain const& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.words.size(); ++i) {
      os << "word " << format_rword(A, c.words[i]) << '\n';
      if (i < c.steps.size()) {
        os << "step " << format_step(A, c.steps[i]) << '\n';
      }
    }
    return os.str();
  }

  inline RChain parse_chain(Alphabet const& A, std::string_view text) {
    RChain      c;
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
      auto nl  = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos      = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++lineno;
      auto hash = raw.find('#');
      if (hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      auto tok = detail::split_ws(raw);
      if (tok.empty()) {
        continue;
      }
      try {
        if (tok[0] == "word") {
          auto body = raw.substr(static_cast<std::size_t>(tok[0].data() - raw.data()) + 4);
          c.words.push_back(parse_rword(A, body));
        } else if (tok[0] == "step" && tok.size() == 2) {
          auto s = parse_step(A, tok[1]);
          if (s.kind == StepKind::deletion && !c.words.empty() && s.pos < c.words.back().size()) {
            s.letter = c.words.back()[s.pos] >> 1;
          }
          c.steps.push_back(s);
        } else {
          throw ParseError("expected \"word ...\" or \"step ...\"");
        }
      } catch (ParseError const& e) {
        throw ParseError(e.what(), lineno, 1);
      }
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Search
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    struct RWordHash {
      std::size_t operator()(RWord const& w) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : w) {
          h = (h ^ x) * 1099511628211ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 32));
      }
    };

    //! All words one legal step away from w, with at most max_len letters;
    //! each is built in `out` and passed to emit by reference.
    template <typename Emit>
    void for_each_neighbour(Presentation const&             p,
                            std::vector<std::pair<RWord, RWord>> const& rels,
                            RWord const&                    w,
                            std::size_t                     max_len,
                            RWord&                          out,
                            Emit&&                          emit) {
      auto const f = positive_prefix(w);
      for (std::size_t i = 0; i < rels.size(); ++i) {
        for (int dir = 0; dir < 2; ++dir) {
          auto const& from = dir == 0 ? rels[i].first : rels[i].second;
          auto const& to   = dir == 0 ? rels[i].second : rels[i].first;
          if (w.size() - from.size() + to.size() > max_len || from.size() > f) {
            continue;
          }
          for (std::size_t pos = 0; pos + from.size() <= f; ++pos) {
            if (std::equal(from.begin(), from.end(), w.begin() + pos)) {
              out.assign(w.begin(), w.begin() + pos);
              out.insert(out.end(), to.begin(), to.end());
              out.insert(out.end(), w.begin() + pos + from.size(), w.end());
              emit(std::as_const(out), RStep{StepKind::r_step, pos, i, dir == 0, 0});
            }
          }
        }
      }
      if (w.size() + 2 <= max_len) {
        for (std::size_t pos = 0; pos <= f; ++pos) {
          for (std::size_t a = 0; a < p.alphabet.size(); ++a) {
            out.assign(w.begin(), w.begin() + pos);
            out.push_back(r_letter(a));
            out.push_back(r_letter(a, true));
            out.insert(out.end(), w.begin() + pos, w.end());
            emit(std::as_const(out), RStep{StepKind::insertion, pos, 0, true, a});
          }
        }
      }
      if (f >= 1 && f < w.size() && w[f] == (w[f - 1] | 1U)) {
        out.assign(w.begin(), w.begin() + (f - 1));
        out.insert(out.end(), w.begin() + f + 1, w.end());
        emit(std::as_const(out), RStep{StepKind::deletion, f - 1, 0, true, w[f - 1] >> 1});
      }
    }

    inline std::vector<std::pair<RWord, RWord>> rc_relations(Presentation const& p) {
      std::vector<std::pair<RWord, RWord>> out;
      for (auto const& r : p.relations) {
        out.emplace_back(to_rword(r.lhs), to_rword(r.rhs));
      }
      return out;
    }
  }  // namespace detail

  struct SearchResult {
    std::optional<RChain> chain;
    std::size_t           visited   = 0;
    std::size_t           max_len   = 0;
    std::size_t           max_steps = 0;
    //! Every word within the length bound connected to u was visited, so no
    //! chain with words of at most max_len letters exists.
    bool exhausted = false;

    explicit operator bool() const noexcept {
      return chain.has_value();
    }
  };

  //! Bidirectional breadth-first search over words of at most max_len
  //! letters; max_steps bounds the number of distinct words visited.
  inline SearchResult search_chain(Presentation const& p,
                                   Word const&         u,
                                   Word const&         v,
                                   std::size_t         max_len,
                                   std::size_t         max_steps) {
    if (max_len == 0 || max_steps == 0) {
      throw Error("search_chain: budgets must be positive");
    }
    if (p.kind != Kind::rc_monoid && p.kind != Kind::monoid) {
      throw Error("search_chain: expected an rc_monoid presentation, got " + to_string(p.kind));
    }
    p.alphabet.validate(u);
    p.alphabet.validate(v);
    SearchResult res;
    res.max_len   = max_len;
    res.max_steps = max_steps;
    auto ru = to_rword(u), rv = to_rword(v);
    if (ru == rv) {
      res.chain   = RChain{{ru}, {}};
      res.visited = 1;
      return res;
    }
    if (ru.size() > max_len || rv.size() > max_len) {
      return res;
    }
    auto rels = detail::rc_relations(p);

    struct Node {
      std::uint32_t parent;
      RStep         step;  // applied to parent gives this node
    };
    struct Side {
      std::unordered_map<RWord, std::uint32_t, detail::RWordHash> index;
      std::vector<RWord>                                          words;
      std::vector<Node>                                           nodes;
      std::vector<std::uint32_t>                                  frontier;
    };
    Side sides[2];
    auto add = [&](Side& s, RWord const& w, std::uint32_t parent, RStep step) {
      auto id = static_cast<std::uint32_t>(s.words.size());
      s.index.emplace(w, id);
      s.words.push_back(w);
      s.nodes.push_back({parent, step});
      s.frontier.push_back(id);
      return id;
    };
    add(sides[0], ru, UINT32_MAX, {});
    add(sides[1], rv, UINT32_MAX, {});
    RWord buf;
    res.visited = 2;

    std::optional<std::pair<std::uint32_t, std::uint32_t>> meet;  // (forward id, backward id)
    bool budget_hit = false;
    while (!meet && !budget_hit) {
      int  d     = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
      if (sides[0].frontier.empty() || sides[1].frontier.empty()) {
        res.exhausted = true;
        break;
      }
      Side& me    = sides[d];
      Side& other = sides[1 - d];
      std::vector<std::uint32_t> level;
      level.swap(me.frontier);
      for (auto id : level) {
        auto w = me.words[id];
        detail::for_each_neighbour(p, rels, w, max_len, buf, [&](RWord const& n, RStep st) {
          if (meet || budget_hit) {
            return;
          }
          if (me.index.count(n) != 0) {
            return;
          }
          if (res.visited >= max_steps) {
            budget_hit = true;
            return;
          }
          auto nid = add(me, n, id, st);
          ++res.visited;
          auto it = other.index.find(n);
          if (it != other.index.end()) {
            meet = d == 0 ? std::make_pair(nid, it->second) : std::make_pair(it->second, nid);
          }
        });
        if (meet || budget_hit) {
          break;
        }
      }
    }
    if (!meet) {
      return res;
    }
    std::vector<RStep> steps;
    for (auto id = meet->first; sides[0].nodes[id].parent != UINT32_MAX;
         id      = sides[0].nodes[id].parent) {
      steps.push_back(sides[0].nodes[id].step);
    }
    std::reverse(steps.begin(), steps.end());
    for (auto id = meet->second; sides[1].nodes[id].parent != UINT32_MAX;
         id      = sides[1].nodes[id].parent) {
      steps.push_back(inverse_step(sides[1].nodes[id].step));
    }
    auto chain = replay_steps(p, ru, steps);
    auto ok    = validate_chain(p, chain);
    if (!ok || chain.words.back() != rv) {
      throw std::logic_error("search_chain built an invalid chain: " + ok.message);
    }
    res.chain = std::move(chain);
    return res;
  }

  namespace detail {
    //! Words kept as they are.
    struct PlainWords {
      using key_type = RWord;
      using hash     = RWordHash;

      RWord const& pack(RWord const& w) const {
        return w;
      }
      void unpack(RWord const& k, RWord& out) const {
        out = k;
      }
    };

    //! Words of at most max_len letters packed into 64 bits, letter + 1 per
    //! slot, when the alphabet is small enough.
    struct PackedWords {
      using key_type = std::uint64_t;
      using hash     = std::hash<std::uint64_t>;

      unsigned bits = 0;

      static std::optional<PackedWords> fit(std::size_t gens, std::size_t max_len) {
        unsigned b = 1;
        while ((std::size_t(1) << b) < 2 * gens + 1) {
          ++b;
        }
        if (b * max_len > 64) {
          return std::nullopt;
        }
        return PackedWords{b};
      }
      std::uint64_t pack(RWord const& w) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
          k |= std::uint64_t(w[i] + 1) << (bits * i);
        }
        return k;
      }
      void unpack(std::uint64_t k, RWord& out) const {
        out.clear();
        auto const mask = (std::uint64_t(1) << bits) - 1;
        for (; k != 0; k >>= bits) {
          out.push_back(static_cast<std::uint32_t>((k & mask) - 1));
        }
      }
    };

    template <typename Codec>
    std::optional<std::vector<Word>> component_with(Presentation const& p,
                                                    RWord const&        ru,
                                                    std::size_t         max_len,
                                                    std::size_t         max_nodes,
                                                    Codec const&        codec) {
      using key_type = typename Codec::key_type;
      auto                                                    rels = rc_relations(p);
      std::unordered_set<key_type, typename Codec::hash>      seen;
      std::vector<key_type>                                   order;
      seen.insert(codec.pack(ru));
      order.push_back(codec.pack(ru));
      RWord             w, buf;
      std::vector<Word> pure;
      bool              over = false;
      for (std::size_t i = 0; i < order.size() && !over; ++i) {
        codec.unpack(order[i], w);
        if (auto pw = to_word(w)) {
          pure.push_back(std::move(*pw));
        }
        for_each_neighbour(p, rels, w, max_len, buf, [&](RWord const& n, RStep) {
          if (over) {
            return;
          }
          auto k = codec.pack(n);
          if (seen.insert(k).second) {
            if (seen.size() > max_nodes) {
              over = true;
              return;
            }
            order.push_back(std::move(k));
          }
        });
      }
      if (over) {
        return std::nullopt;
      }
      std::sort(pure.begin(), pure.end());
      return pure;
    }
  }  // namespace detail

  //! Pure words connected to u by chains whose words have at most max_len
  //! letters; nullopt if more than max_nodes words would be visited.
  inline std::optional<std::vector<Word>> chain_component(Presentation const& p,
                                                          Word const&         u,
                                                          std::size_t         max_len,
                                                          std::size_t         max_nodes) {
    auto ru = to_rword(u);
    if (auto packed = detail::PackedWords::fit(p.alphabet.size(), std::max(max_len, ru.size()))) {
      return detail::component_with(p, ru, max_len, max_nodes, *packed);
    }
    return detail::component_with(p, ru, max_len, max_nodes, detail::PlainWords{});
  }

  ////////////////////////////////////////////////////////////////////////
  // The M_r family
  ////////////////////////////////////////////////////////////////////////

  inline Alphabet mr_alphabet() {
    return Alphabet({"a0", "a1", "p0", "p1", "q0", "q1"});
  }

  //! q0 a0^m p0 = q1 a1^m p1 for 0 <= m <= r.
  inline Presentation mr_presentation(std::size_t r) {
    Presentation p(Kind::rc_monoid, mr_alphabet());
    p.name = "M_" + std::to_string(r);
    for (std::size_t m = 0; m <= r; ++m) {
      Word lhs{make_letter(4)}, rhs{make_letter(5)};
      lhs.insert(lhs.end(), m, make_letter(0));
      rhs.insert(rhs.end(), m, make_letter(1));
      lhs.push_back(make_letter(2));
      rhs.push_back(make_letter(3));
      p.add_relation(lhs, rhs);
    }
    return p;
  }

  struct Role {
    char role;   // 'a', 'p' or 'q'
    int  index;  // 0 or 1
  };

  //! Reads `a0` / `a^0`, `p1`, `q0` style names.
  inline Role mr_role(std::string const& name) {
    auto base = forget_name(name);
    std::string tag;
    if (auto c = name.find('^'); c != std::string::npos) {
      tag = name.substr(c + 1);
    } else {
      tag = name.substr(base.size());
    }
    if ((base != "a" && base != "p" && base != "q") || (tag != "0" && tag != "1")) {
      throw Error("letter \"" + name + "\" is outside the alphabet {a0,a1,p0,p1,q0,q1}");
    }
    return {base[0], tag[0] - '0'};
  }

  //! Exact word problem of M_r (r < 0: the infinite presentation): the
  //! index-forgotten words agree and the words differ only by the indices of
  //! maximal blocks q a^k p with k <= r that are uniformly indexed in both.
  inline bool mr_equal(long r, Word const& u, Word const& v, Alphabet const& A = mr_alphabet()) {
    auto roles = [&](Word const& w) {
      std::vector<Role> out;
      for (auto x : w) {
        if (is_inverse_letter(x)) {
          throw Error("formal inverse " + A.letter_name(x) + " in an M_r word");
        }
        out.push_back(mr_role(A.name(generator_of(x))));
      }
      return out;
    };
    auto ru = roles(u), rv = roles(v);
    if (ru.size() != rv.size()) {
      return false;
    }
    for (std::size_t i = 0; i < ru.size(); ++i) {
      if (ru[i].role != rv[i].role) {
        return false;
      }
    }
    auto uniform = [](std::vector<Role> const& w, std::size_t b, std::size_t e) {
      for (std::size_t i = b + 1; i < e; ++i) {
        if (w[i].index != w[b].index) {
          return false;
        }
      }
      return true;
    };
    std::size_t i = 0;
    while (i < ru.size()) {
      if (ru[i].role == 'q') {
        std::size_t j = i + 1;
        while (j < ru.size() && ru[j].role == 'a') {
          ++j;
        }
        if (j < ru.size() && ru[j].role == 'p') {
          std::size_t k = j - i - 1;
          if ((r < 0 || k <= static_cast<std::size_t>(r)) && uniform(ru, i, j + 1)
              && uniform(rv, i, j + 1)) {
            i = j + 1;
            continue;
          }
          for (std::size_t t = i; t <= j; ++t) {
            if (ru[t].index != rv[t].index) {
              return false;
            }
          }
          i = j + 1;
          continue;
        }
      }
      if (ru[i].index != rv[i].index) {
        return false;
      }
      ++i;
    }
    return true;
  }

}  // namespace invmon

#endif  // INVMON_RC_HPP_
