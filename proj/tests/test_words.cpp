#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "invmon/words.hpp"

using namespace invmon;

namespace {
  Alphabet ab() {
    return Alphabet({"a", "b"});
  }

  // Reduction by repeatedly deleting the leftmost cancelling pair.
  Word naive_reduce(Word w) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i + 1] == inverse_letter(w[i])) {
          w.erase(w.begin() + i, w.begin() + i + 2);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  // Munn: u = v in FIM iff the reduced forms agree and the reduced prefixes
  // of u and v generate the same prefix-closed set.
  bool munn_oracle(Word const& u, Word const& v) {
    auto span = [](Word const& w) {
      std::set<Word> out{Word{}};
      Word           cur;
      for (auto x : w) {
        cur.push_back(x);
        auto r = naive_reduce(cur);
        for (std::size_t i = 0; i <= r.size(); ++i) {
          out.emplace(r.begin(), r.begin() + i);
        }
      }
      return out;
    };
    return naive_reduce(u) == naive_reduce(v) && span(u) == span(v);
  }

  std::vector<Word> all_words(std::size_t letters, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t       lo = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::size_t hi = out.size();
      for (std::size_t i = lo; i < hi; ++i) {
        for (letter_type x = 0; x < letters; ++x) {
          auto w = out[i];
          w.push_back(x);
          out.push_back(w);
        }
      }
      lo = hi;
    }
    return out;
  }
}  // namespace

TEST_CASE("word text syntax", "[words]") {
  auto A = ab();
  CHECK(A.parse("a b' a") == Word{0, 3, 0});
  CHECK(A.parse("ab'a") == Word{0, 3, 0});
  CHECK(A.parse("1").empty());
  CHECK(A.format({}) == "1");
  CHECK(A.format({0, 3}) == "a b'");
  CHECK_THROWS_AS(A.parse("c"), ParseError);
  Alphabet long_names({"p0", "a^1"});
  CHECK(long_names.parse("p0 a^1'") == Word{0, 3});
  CHECK_THROWS(long_names.parse("p0a^1"));
  CHECK_THROWS(Alphabet({"a", "a"}));
  CHECK_THROWS(Alphabet({"1x"}));
}

TEST_CASE("free_reduce", "[words]") {
  auto A = ab();
  CHECK(free_reduce(A.parse("a a' b")) == A.parse("b"));
  CHECK(free_reduce({}).empty());
  CHECK(free_reduce(A.parse("a b b' a")) == A.parse("a a"));
  for (auto const& w : all_words(4, 6)) {
    auto r = free_reduce(w);
    REQUIRE(r == naive_reduce(w));
    REQUIRE(free_reduce(r) == r);
    REQUIRE(r.size() <= w.size());
    REQUIRE(free_reduce(concat(w, invert_word(w))).empty());
  }
}

TEST_CASE("invert_word and prefixes", "[words]") {
  auto A = ab();
  CHECK(invert_word(A.parse("a b")) == A.parse("b' a'"));
  CHECK(invert_word({}).empty());
  CHECK(invert_word(A.parse("a'")) == A.parse("a"));
  for (auto const& w : all_words(4, 4)) {
    REQUIRE(invert_word(invert_word(w)) == w);
  }
  Alphabet abc({"a", "b", "c"});
  CHECK(prefixes(abc.parse("abc")) == std::vector<Word>{abc.parse("a"), abc.parse("ab"), abc.parse("abc")});
  CHECK(prefixes({}, true) == std::vector<Word>{Word{}});
  CHECK(prefixes(A.parse("a b'")) == std::vector<Word>{A.parse("a"), A.parse("a b'")});
  CHECK(prefixes({}).empty());
}

TEST_CASE("index decoration", "[words]") {
  auto     A = ab();
  Alphabet D({"a^0", "b^0", "a^1", "b^1", "b^z", "p0", "q0"});
  CHECK(index_decorate(A.parse("a b"), A, "1", D) == D.parse("a^1 b^1"));
  CHECK(index_decorate({}, A, "z", D).empty());
  CHECK(index_decorate(A.parse("b"), A, "z", D) == D.parse("b^z"));
  CHECK_THROWS_WITH(index_decorate(A.parse("a'"), A, "0", D),
                    Catch::Matchers::ContainsSubstring("unsupported decoration"));
  CHECK(index_forget(D.parse("q0 a^0 p0"), D) == std::vector<std::string>{"q", "a", "p"});
  CHECK(index_forget(D.parse("b^z'"), D) == std::vector<std::string>{"b'"});
  CHECK(forget_name("q12") == "q");
  CHECK(forget_name("a0") == "a");
  CHECK(forget_name("x") == "x");
}

TEST_CASE("Munn trees", "[words]") {
  auto A = ab();
  auto t = munn_tree(A.parse("a a'"));
  CHECK(t.vertices == 2);
  CHECK(t.edges.size() == 1);
  CHECK(t.start == t.end);
  CHECK(std::get<0>(t.edges[0]) == t.start);
  CHECK(munn_tree(A.parse("a a' a")) == munn_tree(A.parse("a")));
  auto p = munn_tree(A.parse("a b"));
  CHECK(p.vertices == 3);
  CHECK(p.edges.size() == 2);
  CHECK(p.end != p.start);
  CHECK(fim_equal(A.parse("a a' b b'"), A.parse("b b' a a'")));
  CHECK_FALSE(fim_equal(A.parse("a a'"), {}));
  CHECK(fim_equal(A.parse("a b' a"), A.parse("a b' a")));
}

TEST_CASE("Munn trees respect the Wagner pairs", "[words]") {
  auto ws = all_words(4, 4);
  for (auto const& u : ws) {
    auto ui = invert_word(u);
    REQUIRE(fim_equal(concat({u, ui, u}), u));
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
  for (int i = 0; i < 3000; ++i) {
    auto const& u = ws[pick(rng)];
    auto const& v = ws[pick(rng)];
    REQUIRE(fim_equal(concat({u, invert_word(u), v, invert_word(v)}),
                      concat({v, invert_word(v), u, invert_word(u)})));
  }
}

TEST_CASE("fim_equal agrees with the reduced-prefix description", "[words]") {
  auto ws = all_words(4, 4);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
  for (std::size_t i = 0; i < ws.size(); i += 3) {
    for (std::size_t j = 0; j < ws.size(); j += 7) {
      REQUIRE(fim_equal(ws[i], ws[j]) == munn_oracle(ws[i], ws[j]));
    }
  }
  for (int i = 0; i < 2000; ++i) {
    auto const& u = ws[pick(rng)];
    auto const& v = ws[pick(rng)];
    auto const& w = ws[pick(rng)];
    if (fim_equal(u, v)) {
      REQUIRE(fim_equal(concat(u, w), concat(v, w)));
      REQUIRE(fim_equal(v, u));
    }
    // some equal pairs to exercise compatibility
    auto u2 = concat({u, invert_word(u), u});
    REQUIRE(fim_equal(concat(u2, w), concat(u, w)));
  }
}
