// Involutive alphabets, words over doubled alphabets, free reduction, Munn
// trees and equality in the free inverse monoid.

#ifndef INVMON_WORDS_HPP_
#define INVMON_WORDS_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace invmon {

  //! A signed letter: `2 * generator` for x, `2 * generator + 1` for x'.
  using letter_type = std::uint32_t;
  using Word        = std::vector<letter_type>;

  constexpr letter_type make_letter(std::size_t gen, bool inverse = false) {
    return static_cast<letter_type>(2 * gen + (inverse ? 1 : 0));
  }
  constexpr std::size_t generator_of(letter_type x) {
    return x >> 1;
  }
  constexpr bool is_inverse_letter(letter_type x) {
    return (x & 1U) != 0;
  }
  constexpr letter_type inverse_letter(letter_type x) {
    return x ^ 1U;
  }

  inline bool is_positive(Word const& w) {
    return std::none_of(w.begin(), w.end(), is_inverse_letter);
  }

  inline Word concat(Word a, Word const& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  inline Word concat(std::initializer_list<Word> ws) {
    Word out;
    for (auto const& w : ws) {
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  }

  namespace detail {
    inline bool is_ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) != 0;
    }
    inline bool is_ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    // [A-Za-z][A-Za-z0-9_]* optionally followed by ^[A-Za-z0-9]+
    inline bool is_generator_name(std::string_view s) {
      if (s.empty() || !is_ident_start(s[0])) {
        return false;
      }
      std::size_t i = 1;
      while (i < s.size() && is_ident_char(s[i])) {
        ++i;
      }
      if (i == s.size()) {
        return true;
      }
      if (s[i] != '^' || i + 1 == s.size()) {
        return false;
      }
      for (++i; i < s.size(); ++i) {
        if (std::isalnum(static_cast<unsigned char>(s[i])) == 0) {
          return false;
        }
      }
      return true;
    }

    inline std::vector<std::string_view> split_ws(std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t                   i = 0;
      while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
          ++i;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) {
          ++j;
        }
        if (j > i) {
          out.push_back(s.substr(i, j - i));
        }
        i = j;
      }
      return out;
    }
  }  // namespace detail

  //! An ordered set of generator names; the formal inverse of `x` is `x'`.
  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> names) {
      for (auto& n : names) {
        add(std::move(n));
      }
    }

    std::size_t add(std::string name) {
      if (!detail::is_generator_name(name)) {
        throw ParseError("invalid generator name \"" + name + "\"");
      }
      if (_index.count(name) != 0) {
        throw Error("duplicate generator \"" + name + "\"");
      }
      _index.emplace(name, _names.size());
      _names.push_back(std::move(name));
      return _names.size() - 1;
    }

    std::size_t size() const noexcept {
      return _names.size();
    }

    //! Number of signed letters, i.e. twice the number of generators.
    std::size_t letters() const noexcept {
      return 2 * _names.size();
    }

    std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    std::string const& name(std::size_t gen) const {
      return _names.at(gen);
    }

    std::optional<std::size_t> index(std::string_view name) const {
      auto it = _index.find(std::string(name));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    bool contains(std::string_view name) const {
      return index(name).has_value();
    }

    letter_type letter(std::string_view name, bool inverse = false) const {
      auto i = index(name);
      if (!i) {
        throw Error("unknown generator \"" + std::string(name) + "\"");
      }
      return make_letter(*i, inverse);
    }

    std::string letter_name(letter_type x) const {
      if (generator_of(x) >= _names.size()) {
        throw Error("letter " + std::to_string(x) + " not in alphabet");
      }
      return _names[generator_of(x)] + (is_inverse_letter(x) ? "'" : "");
    }

    bool single_char() const {
      return std::all_of(_names.begin(), _names.end(), [](auto const& n) {
        return n.size() == 1;
      });
    }

    void validate(Word const& w) const {
      for (auto x : w) {
        if (generator_of(x) >= _names.size()) {
          throw Error("malformed word: letter " + std::to_string(x)
                      + " not in alphabet");
        }
      }
    }

    //! Parses whitespace separated generator names with `'` suffixes; `1` is
    //! the empty word. Juxtaposition is accepted when every generator name is
    //! a single character.
    Word parse(std::string_view text) const {
      Word out;
      for (auto tok : detail::split_ws(text)) {
        if (tok == "1") {
          continue;
        }
        if (parse_token(tok, out)) {
          continue;
        }
        if (!single_char()) {
          throw ParseError("unknown generator in \"" + std::string(tok) + "\"");
        }
        std::size_t i = 0;
        while (i < tok.size()) {
          auto g = index(tok.substr(i, 1));
          if (!g) {
            throw ParseError("unknown generator \"" + std::string(1, tok[i])
                             + "\" in \"" + std::string(tok) + "\"");
          }
          ++i;
          bool inv = false;
          while (i < tok.size() && tok[i] == '\'') {
            inv = !inv;
            ++i;
          }
          out.push_back(make_letter(*g, inv));
        }
      }
      return out;
    }

    std::string format(Word const& w) const {
      if (w.empty()) {
        return "1";
      }
      std::string out;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != 0) {
          out += ' ';
        }
        out += letter_name(w[i]);
      }
      return out;
    }

    bool operator==(Alphabet const& that) const {
      return _names == that._names;
    }

   private:
    bool parse_token(std::string_view tok, Word& out) const {
      std::size_t end = tok.size();
      bool        inv = false;
      while (end > 0 && tok[end - 1] == '\'') {
        inv = !inv;
        --end;
      }
      auto g = index(tok.substr(0, end));
      if (!g) {
        return false;
      }
      out.push_back(make_letter(*g, inv));
      return true;
    }

    std::vector<std::string>                     _names;
    std::unordered_map<std::string, std::size_t> _index;
  };

  ////////////////////////////////////////////////////////////////////////
  // Free group operations
  ////////////////////////////////////////////////////////////////////////

  //! Removes factors x x' and x' x until none remain.
  inline Word free_reduce(Word const& w) {
    Word out;
    out.reserve(w.size());
    for (auto x : w) {
      if (!out.empty() && out.back() == inverse_letter(x)) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  inline Word invert_word(Word const& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) {
      x = inverse_letter(x);
    }
    return out;
  }

  //! Prefixes in increasing length; the word itself is included.
  inline std::vector<Word> prefixes(Word const& w, bool include_empty = false) {
    std::vector<Word> out;
    if (include_empty) {
      out.emplace_back();
    }
    for (std::size_t i = 1; i <= w.size(); ++i) {
      out.emplace_back(w.begin(), w.begin() + i);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Index decoration
  ////////////////////////////////////////////////////////////////////////

  inline std::string decorated_name(std::string_view base, std::string_view tag) {
    return std::string(base) + "^" + std::string(tag);
  }

  //! Erases a decoration: `a^1` -> `a`, `p0` -> `p`, `q12` -> `q`.
  inline std::string forget_name(std::string_view name) {
    auto caret = name.find('^');
    if (caret != std::string_view::npos) {
      return std::string(name.substr(0, caret));
    }
    std::size_t end = name.size();
    while (end > 1 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) {
      --end;
    }
    return std::string(name.substr(0, end));
  }

  //! Replaces every letter a of w (over `from`) by a^tag (over `to`).
  inline Word index_decorate(Word const&     w,
                             Alphabet const& from,
                             std::string_view tag,
                             Alphabet const& to) {
    Word out;
    out.reserve(w.size());
    for (auto x : w) {
      if (is_inverse_letter(x)) {
        throw Error("unsupported decoration: inverse letter "
                    + from.letter_name(x));
      }
      out.push_back(to.letter(decorated_name(from.name(generator_of(x)), tag)));
    }
    return out;
  }

  //! Names of the letters of w with decorations erased.
  inline std::vector<std::string> index_forget(Word const& w, Alphabet const& from) {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (auto x : w) {
      out.push_back(forget_name(from.name(generator_of(x)))
                    + (is_inverse_letter(x) ? "'" : ""));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Munn trees
  ////////////////////////////////////////////////////////////////////////

  //! Birooted tree, vertices numbered by BFS from the start root.
  struct MunnTree {
    std::size_t vertices = 1;
    // (src, generator, dst), sorted
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
    std::size_t                                                   start = 0;
    std::size_t                                                   end   = 0;

    bool operator==(MunnTree const&) const = default;
  };

  //! The vertices of the Munn tree of w are the reduced forms of the
  //! prefixes of w; ends are the images of the start and end of w.
  inline MunnTree munn_tree(Word const& w) {
    std::map<Word, std::size_t> id;
    std::vector<Word>           verts;
    auto                        intern = [&](Word const& v) {
      auto [it, fresh] = id.emplace(v, verts.size());
      if (fresh) {
        verts.push_back(v);
      }
      return it->second;
    };
    Word cur;
    intern(cur);
    std::map<std::pair<std::size_t, letter_type>, std::size_t> next;
    for (auto x : w) {
      std::size_t from = id[cur];
      if (!cur.empty() && cur.back() == inverse_letter(x)) {
        cur.pop_back();
      } else {
        cur.push_back(x);
      }
      std::size_t to                      = intern(cur);
      next[{from, x}]                     = to;
      next[{to, inverse_letter(x)}]       = from;
    }
    // canonical renumbering by BFS from the start root, letters in order
    std::vector<std::size_t> canon(verts.size(), SIZE_MAX);
    std::queue<std::size_t>  q;
    canon[0]        = 0;
    std::size_t cnt = 1;
    q.push(0);
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (auto it = next.lower_bound({v, 0}); it != next.end() && it->first.first == v;
           ++it) {
        auto u = it->second;
        if (canon[u] == SIZE_MAX) {
          canon[u] = cnt++;
          q.push(u);
        }
      }
    }
    MunnTree t;
    t.vertices = verts.size();
    t.start    = 0;
    t.end      = canon[id[free_reduce(w)]];
    for (auto const& [key, to] : next) {
      auto [from, x] = key;
      if (!is_inverse_letter(x)) {
        t.edges.emplace_back(canon[from], generator_of(x), canon[to]);
      }
    }
    std::sort(t.edges.begin(), t.edges.end());
    return t;
  }

  //! Equality in the free inverse monoid.
  inline bool fim_equal(Word const& u, Word const& v) {
    return munn_tree(u) == munn_tree(v);
  }

}  // namespace invmon

#endif  // INVMON_WORDS_HPP_
