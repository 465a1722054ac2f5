// Kind-tagged presentations: parsing, serialization, greatest group image and
// prefix generators.

#ifndef INVMON_PRESENTATION_HPP_
#define INVMON_PRESENTATION_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "words.hpp"

namespace invmon {

  enum class Kind { special_inverse, rc_monoid, group, monoid };

  inline std::string to_string(Kind k) {
    switch (k) {
      case Kind::special_inverse:
        return "special_inverse";
      case Kind::rc_monoid:
        return "rc_monoid";
      case Kind::group:
        return "group";
      case Kind::monoid:
        return "monoid";
    }
    return "?";
  }

  inline std::optional<Kind> kind_from_string(std::string_view s) {
    if (s == "special_inverse") {
      return Kind::special_inverse;
    } else if (s == "rc_monoid") {
      return Kind::rc_monoid;
    } else if (s == "group") {
      return Kind::group;
    } else if (s == "monoid") {
      return Kind::monoid;
    }
    return std::nullopt;
  }

  //! Inverse and group kinds use the doubled alphabet.
  inline bool is_involutive(Kind k) {
    return k == Kind::special_inverse || k == Kind::group;
  }

  struct Relation {
    Word lhs;
    Word rhs;

    bool operator==(Relation const&) const = default;
  };

  using KeyValue = std::pair<std::string, std::string>;

  class Presentation {
   public:
    Kind                     kind = Kind::special_inverse;
    Alphabet                 alphabet;
    std::vector<Relation>    relations;
    std::string              name;
    std::vector<std::string> comments;
    //! Truncation bounds and certificates for relation families that are
    //! infinite in principle.
    std::vector<KeyValue> trunc;
    //! Free-form provenance written by the builders.
    std::vector<KeyValue> meta;

    bool operator==(Presentation const&) const = default;

    Presentation() = default;
    Presentation(Kind k, Alphabet a) : kind(k), alphabet(std::move(a)) {}

    void add_relation(Word lhs, Word rhs = {}) {
      relations.push_back({std::move(lhs), std::move(rhs)});
    }

    //! Relator words lhs rhs^-1; only meaningful for involutive kinds.
    std::vector<Word> relators() const {
      std::vector<Word> out;
      for (auto const& r : relations) {
        out.push_back(concat(r.lhs, invert_word(r.rhs)));
      }
      return out;
    }

    std::size_t max_relator_length() const {
      std::size_t m = 0;
      for (auto const& r : relations) {
        m = std::max(m, r.lhs.size() + r.rhs.size());
      }
      return m;
    }

    std::optional<std::string> meta_value(std::string_view key) const {
      for (auto const& [k, v] : meta) {
        if (k == key) {
          return v;
        }
      }
      return std::nullopt;
    }

    std::optional<std::string> trunc_value(std::string_view key) const {
      for (auto const& [k, v] : trunc) {
        if (k == key) {
          return v;
        }
      }
      return std::nullopt;
    }

    //! Throws if the relations violate the constraints of the kind.
    void validate() const {
      for (std::size_t i = 0; i < relations.size(); ++i) {
        auto const& r = relations[i];
        alphabet.validate(r.lhs);
        alphabet.validate(r.rhs);
        if (is_involutive(kind)) {
          if (!r.rhs.empty()) {
            throw Error("relation " + std::to_string(i + 1) + ": right-hand side must be 1 for "
                        + to_string(kind) + " presentations");
          }
        } else if (!is_positive(r.lhs) || !is_positive(r.rhs)) {
          throw Error("relation " + std::to_string(i + 1)
                      + ": formal inverses are not allowed in " + to_string(kind)
                      + " presentations");
        }
      }
    }
  };

  namespace detail {
    inline std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

    inline std::vector<KeyValue> parse_kv(std::string_view body, std::size_t line, std::size_t col) {
      std::vector<KeyValue> out;
      for (auto tok : split_ws(body)) {
        auto eq = tok.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          throw ParseError("expected key=value, found \"" + std::string(tok) + "\"", line, col);
        }
        out.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
      }
      return out;
    }
  }  // namespace detail

  //! Line-oriented grammar: `@kind`, `@gens`, `@rel lhs = rhs`, `@trunc k=v`,
  //! `@meta k=v`, `@name`, `#` comments.
  inline Presentation parse_presentation(std::string_view text) {
    Presentation p;
    bool         have_kind = false, have_gens = false;
    std::size_t  lineno    = 0;
    std::size_t  pos       = 0;
    while (pos <= text.size()) {
      auto        nl   = text.find('\n', pos);
      std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
      pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
      ++lineno;
      auto line = detail::trim(raw);
      if (line.empty()) {
        continue;
      }
      if (line.front() == '#') {
        p.comments.emplace_back(detail::trim(line.substr(1)));
        continue;
      }
      auto hash = line.find('#');
      if (hash != std::string_view::npos) {
        line = detail::trim(line.substr(0, hash));
      }
      std::size_t col = static_cast<std::size_t>(line.data() - raw.data()) + 1;
      if (line.front() != '@') {
        throw ParseError("expected a directive starting with '@'", lineno, col);
      }
      auto        sp        = line.find_first_of(" \t");
      std::string directive(line.substr(0, sp));
      std::string_view body = sp == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(sp));
      if (directive == "@kind") {
        auto k = kind_from_string(body);
        if (!k) {
          throw ParseError("unknown kind \"" + std::string(body) + "\"", lineno, col);
        }
        p.kind    = *k;
        have_kind = true;
      } else if (directive == "@gens") {
        if (have_gens) {
          throw ParseError("duplicate @gens", lineno, col);
        }
        try {
          for (auto tok : detail::split_ws(body)) {
            p.alphabet.add(std::string(tok));
          }
        } catch (Error const& e) {
          throw ParseError(e.what(), lineno, col);
        }
        have_gens = true;
      } else if (directive == "@rel") {
        if (!have_gens) {
          throw ParseError("@rel before @gens", lineno, col);
        }
        auto eq = body.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError("expected \"lhs = rhs\"", lineno, col);
        }
        try {
          Relation r{p.alphabet.parse(body.substr(0, eq)), p.alphabet.parse(body.substr(eq + 1))};
          p.relations.push_back(std::move(r));
        } catch (Error const& e) {
          throw ParseError(e.what(), lineno, col);
        }
      } else if (directive == "@trunc") {
        auto kv = detail::parse_kv(body, lineno, col);
        p.trunc.insert(p.trunc.end(), kv.begin(), kv.end());
      } else if (directive == "@meta") {
        auto kv = detail::parse_kv(body, lineno, col);
        p.meta.insert(p.meta.end(), kv.begin(), kv.end());
      } else if (directive == "@name") {
        p.name = std::string(body);
      } else {
        throw ParseError("unknown directive " + directive, lineno, col);
      }
    }
    if (!have_kind) {
      throw ParseError("missing @kind");
    }
    if (!have_gens) {
      throw ParseError("missing @gens");
    }
    p.validate();
    return p;
  }

  inline std::string serialize_presentation(Presentation const& p) {
    std::ostringstream os;
    for (auto const& c : p.comments) {
      os << "# " << c << '\n';
    }
    if (!p.name.empty()) {
      os << "@name " << p.name << '\n';
    }
    os << "@kind " << to_string(p.kind) << '\n';
    os << "@gens";
    for (auto const& n : p.alphabet.names()) {
      os << ' ' << n;
    }
    os << '\n';
    for (auto const& r : p.relations) {
      os << "@rel " << p.alphabet.format(r.lhs) << " = " << p.alphabet.format(r.rhs) << '\n';
    }
    for (auto const& [k, v] : p.trunc) {
      os << "@trunc " << k << '=' << v << '\n';
    }
    for (auto const& [k, v] : p.meta) {
      os << "@meta " << k << '=' << v << '\n';
    }
    return os.str();
  }

  //! Same generators and relators, group kind; a group input is returned as is.
  inline Presentation group_image(Presentation const& p) {
    if (p.kind != Kind::special_inverse && p.kind != Kind::group) {
      throw Error("group_image: expected a special_inverse presentation, got " + to_string(p.kind));
    }
    Presentation q = p;
    q.kind         = Kind::group;
    return q;
  }

  struct PrefixGeneratorSet {
    std::vector<Word>        words;
    std::vector<std::size_t> source;  // index of the relator each word came from
  };

  //! Nonempty prefixes of all relators, deduplicated literally, in order of
  //! first occurrence.
  inline PrefixGeneratorSet prefix_generators(Presentation const& p) {
    if (!is_involutive(p.kind)) {
      throw Error("prefix_generators: expected special_inverse or group, got " + to_string(p.kind));
    }
    PrefixGeneratorSet out;
    std::set<Word>     seen;
    auto               rels = p.relators();
    for (std::size_t i = 0; i < rels.size(); ++i) {
      for (auto& w : prefixes(rels[i])) {
        if (seen.insert(w).second) {
          out.words.push_back(std::move(w));
          out.source.push_back(i);
        }
      }
    }
    return out;
  }

}  // namespace invmon

#endif  // INVMON_PRESENTATION_HPP_
