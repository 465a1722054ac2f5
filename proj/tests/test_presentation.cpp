#include "catch_amalgamated.hpp"
#include "invmon/presentation.hpp"

using namespace invmon;

TEST_CASE("parse special inverse presentation", "[presentation]") {
  auto p = parse_presentation("@kind special_inverse\n@gens a\n@rel a a = 1\n");
  CHECK(p.kind == Kind::special_inverse);
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].lhs == Word{0, 0});
  CHECK(p.relations[0].rhs.empty());
}

TEST_CASE("parse rc presentation", "[presentation]") {
  auto p = parse_presentation("# commuting\n@kind rc_monoid\n@gens a b\n@rel a b = b a  # trailing\n");
  CHECK(p.kind == Kind::rc_monoid);
  REQUIRE(p.relations.size() == 1);
  CHECK(p.relations[0].lhs == Word{0, 2});
  CHECK(p.relations[0].rhs == Word{2, 0});
  CHECK(p.comments == std::vector<std::string>{"commuting"});
}

TEST_CASE("parse errors", "[presentation]") {
  CHECK_THROWS_AS(parse_presentation("@kind special_inverse\n@gens a b\n@rel a c = 1\n"),
                  ParseError);
  try {
    parse_presentation("@kind special_inverse\n@gens a\n\n  @rel a = a\n");
    FAIL("expected an error");
  } catch (Error const& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("right-hand side"));
  }
  try {
    parse_presentation("@kind group\n@gens a\n  @bogus\n");
    FAIL("expected an error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS(parse_presentation("@kind rc_monoid\n@gens a\n@rel a' = a\n"));
  CHECK_THROWS(parse_presentation("@gens a\n"));
  CHECK_THROWS(parse_presentation("@kind monoid\n"));
  CHECK_THROWS(parse_presentation("@kind magma\n@gens a\n"));
}

TEST_CASE("serialize round trip", "[presentation]") {
  std::string text = "# note\n@name sample\n@kind special_inverse\n@gens a b p0 a^1\n"
                     "@rel a b a' = 1\n@rel p0 a^1 p0' = 1\n@trunc L=2\n@meta k=1\n";
  auto p = parse_presentation(text);
  auto s = serialize_presentation(p);
  CHECK(s == text);
  CHECK(parse_presentation(s) == p);
  auto q = parse_presentation("@kind monoid\n@gens x y\n@rel x y = 1\n@rel x = y y\n");
  CHECK(parse_presentation(serialize_presentation(q)) == q);
}

TEST_CASE("group_image", "[presentation]") {
  auto p = parse_presentation("@kind special_inverse\n@gens a\n@rel a a = 1\n");
  auto g = group_image(p);
  CHECK(g.kind == Kind::group);
  CHECK(g.relations == p.relations);
  CHECK(g.alphabet == p.alphabet);
  CHECK(group_image(g) == g);
  auto p2 = parse_presentation("@kind special_inverse\n@gens a b\n@rel a b = 1\n");
  CHECK(group_image(p2).relations == p2.relations);
  CHECK_THROWS(group_image(parse_presentation("@kind rc_monoid\n@gens a\n")));
}

TEST_CASE("prefix generators", "[presentation]") {
  auto p = parse_presentation("@kind special_inverse\n@gens a b\n@rel a b = 1\n");
  auto s = prefix_generators(p);
  CHECK(s.words == std::vector<Word>{{0}, {0, 2}});
  auto q = parse_presentation("@kind special_inverse\n@gens a\n@rel a a = 1\n");
  CHECK(prefix_generators(q).words == std::vector<Word>{{0}, {0, 0}});
  auto r = parse_presentation("@kind special_inverse\n@gens a b\n@rel a b = 1\n@rel a a = 1\n");
  auto t = prefix_generators(r);
  CHECK(t.words == std::vector<Word>{{0}, {0, 2}, {0, 0}});
  CHECK(t.source == std::vector<std::size_t>{0, 0, 1});
  auto rels = r.relators();
  for (std::size_t i = 0; i < t.words.size(); ++i) {
    auto const& w   = t.words[i];
    auto const& rel = rels[t.source[i]];
    REQUIRE(w.size() <= rel.size());
    REQUIRE(std::equal(w.begin(), w.end(), rel.begin()));
  }
  CHECK_THROWS(prefix_generators(parse_presentation("@kind monoid\n@gens a\n")));
}
