#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"
#include "invmon/constructions.hpp"
#include "invmon/stephen.hpp"

using namespace invmon;

namespace {
  // S = <a | a = a>, B empty
  MstInput trivial_instance() {
    return {parse_presentation("@kind rc_monoid\n@gens a\n@rel a = a\n"), {}};
  }

  MstInput commuting_instance() {
    return {parse_presentation("@kind rc_monoid\n@gens a b\n@rel a b = b a\n"), {"b"}};
  }

  std::vector<Word> parse_all(Alphabet const& A, std::vector<std::string> const& ws) {
    std::vector<Word> out;
    for (auto const& w : ws) {
      out.push_back(A.parse(w));
    }
    return out;
  }

  std::set<std::pair<Word, Word>> relation_set(Presentation const& p) {
    std::set<std::pair<Word, Word>> out;
    for (auto const& r : p.relations) {
      out.emplace(r.lhs, r.rhs);
    }
    return out;
  }

  StephenBudget local(std::size_t rounds, std::size_t radius) {
    return {rounds, 60000, radius};
  }
}  // namespace

TEST_CASE("M_{S,T} for the one-letter instance", "[constructions]") {
  auto m = build_mst(trivial_instance());
  CHECK(m.kind == Kind::special_inverse);
  CHECK(m.alphabet.names() == std::vector<std::string>{"a", "p0", "p1", "z", "d"});
  auto expected = parse_all(m.alphabet,
                            {"p0 a p0' p0 a' p0'",
                             "p1 a p1' p1 a' p1'",
                             "p1 a d' a' p1'",
                             "p0 d p0'",
                             "z p0' p0 p1' p1 z'"});
  CHECK(m.relators() == expected);
  CHECK(ru_generators(m)
        == parse_all(m.alphabet, {"p0", "p1", "z p0'", "z p1'", "p0 a p0'", "p1 a p1'"}));
  // text round trip keeps the provenance
  auto back = parse_presentation(serialize_presentation(m));
  CHECK(ru_generators(back) == ru_generators(m));
}

TEST_CASE("M_{S,T} with a nonempty B", "[constructions]") {
  auto m = build_mst(commuting_instance());
  CHECK(m.alphabet.names() == std::vector<std::string>{"a", "b", "p0", "p1", "z", "d"});
  auto rels = m.relators();
  REQUIRE(rels.size() == 4 + 1 + 1 + 1 + 1);
  CHECK(rels[4] == m.alphabet.parse("p1 a b d' a' b' p1'"));
  CHECK(rels[6] == m.alphabet.parse("z b z' z b' z'"));
  CHECK(ru_generators(m).back() == m.alphabet.parse("z b z'"));

  MstInput bad = commuting_instance();
  bad.b_subset = {"c"};
  CHECK_THROWS_WITH(build_mst(bad), Catch::Matchers::ContainsSubstring("not a subset"));
  MstInput clash{parse_presentation("@kind rc_monoid\n@gens z\n@rel z = z\n"), {}};
  CHECK_THROWS_WITH(build_mst(clash), Catch::Matchers::ContainsSubstring("clash"));
  CHECK_THROWS(ru_generators(parse_presentation("@gens a\n")));
}

TEST_CASE("normalize_b adds a generator for the submonoid", "[constructions]") {
  MstInput in{parse_presentation("@kind rc_monoid\n@gens a\n@rel a a a = a\n"), {}};
  normalize_b(in, "c", in.s_pres.alphabet.parse("a a"));
  CHECK(in.b_subset == std::vector<std::string>{"c"});
  CHECK(in.k() == 2);
  CHECK(in.s_pres.relations.back().rhs == Word{0, 0});
  auto m = build_mst(in);
  CHECK(m.alphabet.contains("p2"));
}

TEST_CASE("Q for the one-letter instance", "[constructions]") {
  auto q = build_q(trivial_instance(), {2, 6, 2000});
  CHECK(q.kind == Kind::rc_monoid);
  CHECK(q.alphabet.names() == std::vector<std::string>{"p0", "p1", "q0", "q1", "a^0", "a^1"});
  // S is free on a, so only the first family is present
  std::vector<Relation> expected;
  for (auto const& [l, r] : std::vector<std::pair<std::string, std::string>>{
           {"q1 p1", "q0 p0"}, {"q1 a^1 p1", "q0 a^0 p0"}, {"q1 a^1 a^1 p1", "q0 a^0 a^0 p0"}}) {
    expected.push_back({q.alphabet.parse(l), q.alphabet.parse(r)});
  }
  CHECK(q.relations == expected);
  CHECK(q.trunc_value("L") == "2");
}

TEST_CASE("Q certifies S-equalities and grows with L", "[constructions]") {
  auto in = commuting_instance();
  auto q1 = build_q(in, {1, 6, 5000});
  auto q2 = build_q(in, {2, 6, 5000});
  auto const& Q = q2.alphabet;
  CHECK(Q.names()
        == std::vector<std::string>{"p0", "p1", "q0", "q1", "a^0", "b^0", "a^1", "b^1", "b^z"});
  auto rs = relation_set(q2);
  CHECK(rs.count({Q.parse("q0 a^0 b^0"), Q.parse("q0 b^0 a^0")}) == 1);
  CHECK(rs.count({Q.parse("q1 a^1 b^1"), Q.parse("q1 b^1 a^1")}) == 1);
  CHECK(rs.count({Q.parse("q1 b^1"), Q.parse("b^z q1")}) == 1);
  CHECK(rs.count({Q.parse("q0 a^0"), Q.parse("q0 b^0")}) == 0);
  // exactly one certified pair at L = 2
  auto certs = std::count_if(q2.trunc.begin(), q2.trunc.end(), [](auto const& kv) { return kv.first == "cert"; });
  CHECK(certs == 1);
  CHECK(check_q_certificates(in.s_pres, q2).empty());
  auto r1 = relation_set(q1);
  CHECK(std::includes(rs.begin(), rs.end(), r1.begin(), r1.end()));

  auto forged = q2;
  forged.trunc.emplace_back("cert", "a|b|-");
  CHECK(check_q_certificates(in.s_pres, forged).size() == 1);
  auto back = parse_presentation(serialize_presentation(q2));
  CHECK(check_q_certificates(in.s_pres, back).empty());
}

TEST_CASE("psi maps Q into the right units", "[constructions]") {
  auto in = trivial_instance();
  auto m  = build_mst(in);
  auto q  = build_q(in, {1, 6, 2000});
  auto const& Q = q.alphabet;
  CHECK(psi_substitute(Q.parse("q1 a^1 p1"), Q, m) == m.alphabet.parse("z p1' p1 a p1' p1"));
  CHECK(psi_substitute(Q.parse("a^0"), Q, m) == m.alphabet.parse("p0 a p0'"));
  CHECK_THROWS_WITH(psi_substitute({0}, Alphabet({"x"}), m), Catch::Matchers::ContainsSubstring("unknown letter"));

  // every generator image is a right unit
  for (auto const& g : ru_generators(m)) {
    CHECK(is_right_unit(m, g, local(6, 4)).verdict == Verdict::yes);
  }
  // relations of Q hold between the images
  for (auto const& r : q.relations) {
    auto d = equal_right_units(m, psi_substitute(r.lhs, Q, m), psi_substitute(r.rhs, Q, m), local(8, 5));
    CHECK(d.verdict == Verdict::yes);
  }
  // the generators are not units
  for (auto const& g : parse_all(m.alphabet, {"p0", "z p1'"})) {
    CHECK(is_unit(m, g, local(6, 4)).verdict != Verdict::yes);
  }
}

TEST_CASE("M_{Q,W} primary and alternate forms", "[constructions]") {
  auto g = parse_presentation("@kind group\n@gens a\n@rel a a = 1\n");
  std::vector<Word> W{{0}};
  auto res = build_mqw(g, W);
  auto const& S = res.primary.alphabet;
  CHECK(S.names() == std::vector<std::string>{"a", "t"});
  REQUIRE(res.primary.relators().size() == 1);
  CHECK(res.primary.relators()[0] == S.parse("a a' t a t' t a' t' a' a a a"));
  CHECK(res.alternate.relators()
        == parse_all(S, {"a a", "a a'", "a' a", "t a t' t a' t'"}));

  // every relator of one form is 1 in the other
  for (auto const& [from, to] : {std::pair{&res.primary, &res.alternate}, std::pair{&res.alternate, &res.primary}}) {
    for (auto const& r : from->relators()) {
      CHECK(equal_right_units(*to, r, {}, local(8, 4)).verdict == Verdict::yes);
    }
  }

  CHECK_THROWS(build_mqw(parse_presentation("@kind group\n@gens a\n"), W));
  CHECK_THROWS_WITH(build_mqw(g, W, "a"), Catch::Matchers::ContainsSubstring("clash"));
}

TEST_CASE("R_{Q,W} and the elimination of b_j", "[constructions]") {
  auto g = parse_presentation("@kind group\n@gens a b\n@rel a b a' b' = 1\n");
  std::vector<Word> W{g.alphabet.parse("a b'"), g.alphabet.parse("b")};
  auto r = build_rqw(g, W);
  auto const& R = r.alphabet;
  CHECK(R.names() == std::vector<std::string>{"a", "b", "a_inv", "b_inv", "b1", "b2", "t"});
  CHECK(r.kind == Kind::rc_monoid);
  auto rs = relation_set(r);
  CHECK(rs.count({R.parse("a a_inv"), {}}) == 1);
  CHECK(rs.count({R.parse("b_inv b"), {}}) == 1);
  CHECK(rs.count({R.parse("a b a_inv b_inv"), {}}) == 1);
  CHECK(rs.count({R.parse("t a b_inv"), R.parse("b1 t")}) == 1);
  CHECK(rs.count({R.parse("t b"), R.parse("b2 t")}) == 1);

  auto rep = tietze_check_rqw(r);
  CHECK(rep.ok);
  CHECK(rep.group_relators.size() == 1);
  CHECK(rep.eliminated.size() == 6);
  CHECK(tietze_check_rqw(parse_presentation(serialize_presentation(r))).ok);

  auto bad = r;
  for (auto& rel : bad.relations) {
    if (rel.rhs == R.parse("b1 t")) {
      rel.rhs = R.parse("b1");
    }
  }
  auto brep = tietze_check_rqw(bad);
  CHECK_FALSE(brep.ok);
  CHECK(brep.failures.size() == 1);
  CHECK_THROWS_WITH(tietze_check_rqw(g), Catch::Matchers::ContainsSubstring("provenance"));
}

TEST_CASE("small truncations and the B = {a} variant", "[constructions]") {
  auto q0 = build_q(trivial_instance(), {0, 4, 500});
  REQUIRE(q0.relations.size() == 1);
  CHECK(q0.relations[0].lhs == q0.alphabet.parse("q1 p1"));

  MstInput in = trivial_instance();
  in.b_subset = {"a"};
  auto qa     = build_q(in, {0, 4, 500});
  auto const& Q = qa.alphabet;
  REQUIRE(qa.relations.size() == 3);
  CHECK(qa.relations[1] == Relation{Q.parse("q0 a^0"), Q.parse("a^z q0")});
  CHECK(qa.relations[2] == Relation{Q.parse("q1 a^1"), Q.parse("a^z q1")});
  auto m = build_mst(in);
  CHECK(m.relators().back() == m.alphabet.parse("z p0' p0 p1' p1 z'"));
  CHECK(m.relators()[4] == m.alphabet.parse("z a z' z a' z'"));
  CHECK(ru_generators(m).size() == 2 + 2 + 2 + 1);
  // w^(i) maps to p_i w p_i' after free reduction
  CHECK(free_reduce(psi_substitute(Q.parse("a^1 a^1"), Q, m)) == m.alphabet.parse("p1 a a p1'"));
  CHECK(psi_substitute({}, Q, m).empty());
}

TEST_CASE("z u z' = z v z' exactly when u = v in T", "[constructions]") {
  MstInput in = trivial_instance();
  in.b_subset = {"a"};
  auto m = build_mst(in);
  auto const& S = m.alphabet;
  std::vector<Word> us{{}, S.parse("a"), S.parse("a a")};
  for (auto const& u : us) {
    for (auto const& v : us) {
      auto d = equal_right_units(m, concat({S.parse("z"), u, S.parse("z'")}),
                                 concat({S.parse("z"), v, S.parse("z'")}), local(8, 5));
      // T = a^* is free, so equality in T is literal equality
      if (u == v) {
        CHECK(d.verdict == Verdict::yes);
      } else {
        CHECK(d.verdict != Verdict::yes);
      }
    }
  }
}

TEST_CASE("the one-letter instance has no nontrivial generator units", "[constructions]") {
  auto m = build_mst(trivial_instance());
  for (auto const& g : parse_all(m.alphabet, {"p0", "p1", "z", "p0 a p0'", "p1 a p1'"})) {
    CHECK(is_unit(m, g, local(6, 4)).verdict != Verdict::yes);
  }
}
