#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace tagmap;
using tagmap::fixtures::fixture_graph;

namespace {

SpecExpr parse(std::string_view text) {
  auto r = parse_spec(text);
  REQUIRE_MESSAGE(r.ok(), text);
  return r.value();
}

ClassSet den(std::string_view text, const TypeGraph& g) {
  auto r = denote(parse(text), g);
  REQUIRE_MESSAGE(r.ok(), text);
  return r.value();
}

SpecExpr A(const char* f, const char* v) { return SpecExpr::atom(f, AtomOp::eq, v); }
SpecExpr B(const char* n) { return SpecExpr::bare(n); }

}  // namespace

TEST_CASE("parse: conjunction is left-associative") {
  SpecExpr expected = SpecExpr::conj(SpecExpr::conj(A("pos", "v"), A("vtype", "aux")), A("pers", "3"));
  CHECK(structurally_equal(parse("[pos = v & vtype = aux & pers = 3]"), expected));
}

TEST_CASE("parse: bare atoms, grouping and precedence") {
  SpecExpr expected = SpecExpr::conj(B("n"), SpecExpr::disj(SpecExpr::conj(B("common"), B("sg")), B("mass")));
  CHECK(structurally_equal(parse("[n & ( common & sg | mass ) ]"), expected));
  CHECK(structurally_equal(parse("a | b & c"), SpecExpr::disj(B("a"), SpecExpr::conj(B("b"), B("c")))));
  CHECK(structurally_equal(parse("!a & b"), SpecExpr::conj(SpecExpr::negation(B("a")), B("b"))));
}

TEST_CASE("parse: quoted values and trailing dot") {
  SpecExpr e = parse("[pos = 'VB'].");
  CHECK(e.kind == SpecExpr::Kind::atom);
  CHECK(e.value == "VB");
  CHECK(e.value_quoted);
  CHECK(parse("[case != gen]").op == AtomOp::ne);
}

TEST_CASE("parse: dangling = is reported at the operator") {
  auto r = parse_spec("[pos = & v]");
  REQUIRE_FALSE(r.ok());
  const Diagnostic& d = r.error().front();
  CHECK(d.message.find("dangling") != std::string::npos);
  CHECK(d.span.begin.column == 6);
}

TEST_CASE("parse: other syntax errors") {
  for (const char* bad : {"[]", "[a & ]", "[(a | b]", "[a b]", "[a", "a ]", "[a = b = c]", "[!]"})
    CHECK_FALSE_MESSAGE(parse_spec(bad).ok(), bad);
}

TEST_CASE("to_string round-trips through the parser") {
  const TypeGraph& g = fixture_graph();
  oracle::SpecGenerator gen(g, 7);
  for (int i = 0; i < 300; ++i) {
    SpecExpr e = gen.next(4);
    auto back = parse_spec(to_bracketed(e));
    REQUIRE(back.ok());
    CHECK_MESSAGE(structurally_equal(back.value(), e), to_bracketed(e));
  }
  CHECK(to_string(parse("a & (b | c)")) == "a & (b | c)");
  CHECK(to_string(parse("(a & b) | c")) == "a & b | c");
  CHECK(to_string(parse("!(a & b)")) == "!(a & b)");
}

TEST_CASE("denote: examples on the fixture") {
  const TypeGraph& g = fixture_graph();
  ClassSet verbs = g.classes_under(*g.find_node("v"));
  CHECK(den("pos = v", g) == verbs);
  CHECK(verbs.count() == 45);
  CHECK(den("vform = inf | vform != inf", g) == verbs);
  CHECK(den("vform = inf | vform != inf", g) != g.all_classes());
  CHECK(den("pers = 3 & pers != 3", g).empty());
  CHECK(den("pos != v", g) == verbs.complement());
}

TEST_CASE("denote: 14 verb classes in the restricted graph") {
  const TypeGraph& g = fixtures::verbs14_graph();
  CHECK(den("pos = v", g).count() == 14);
}

TEST_CASE("denote: negation is restricted to where the features exist") {
  const TypeGraph& g = fixture_graph();
  ClassSet not_gen = den("!(case = gen)", g);
  CHECK(not_gen == den("case != gen", g));
  CHECK(not_gen.is_subset_of(g.classes_with(*g.find_feature("case"))));
}

TEST_CASE("denote matches the per-class oracle") {
  const TypeGraph& g = fixture_graph();
  oracle::SpecGenerator gen(g, 11);
  for (int i = 0; i < 500; ++i) {
    SpecExpr e = gen.next(4);
    auto d = denote(e, g);
    REQUIRE(d.ok());
    CHECK_MESSAGE(oracle::to_ids(d.value()) == oracle::filter_universe(e, g), to_bracketed(e));
  }
}

TEST_CASE("DNF preserves denotation and typecheck matches per-disjunct satisfiability") {
  const TypeGraph& g = fixture_graph();
  oracle::SpecGenerator gen(g, 13);
  for (int i = 0; i < 300; ++i) {
    SpecExpr e = gen.next(3);
    auto dnf = to_dnf(e, g);
    REQUIRE(dnf.ok());
    CHECK(denote(dnf.value(), g) == denote(e, g).value());
    bool expected = true;
    for (const auto& d : oracle::oracle_dnf(e, g)) expected = expected && oracle::disjunct_satisfiable(d, g);
    CHECK_MESSAGE(typecheck(e, g).ok() == expected, to_bracketed(e));
  }
}

TEST_CASE("De Morgan under the closed world") {
  const TypeGraph& g = fixture_graph();
  ClassSet lhs = den("!(vform = fin & mood = ind)", g);
  ClassSet rhs = den("vform != fin | mood != ind", g);
  rhs &= den("vform = fin | vform != fin", g);
  rhs &= den("mood = ind | mood != ind", g);
  CHECK(lhs == rhs);
  CHECK(lhs == den("mood != ind", g));
  CHECK(den("!(vtype = aux | vform = inf)", g) == den("vtype != aux & vform != inf", g));
}

TEST_CASE("closed-world laws for every feature and value") {
  const TypeGraph& g = fixture_graph();
  for (FeatureId f = 0; f < g.features().size(); ++f) {
    const FeatureDecl& decl = g.feature(f);
    for (const std::string& v : decl.values) {
      ClassSet eq = denote(SpecExpr::atom(decl.name, AtomOp::eq, v), g).value();
      ClassSet ne = denote(SpecExpr::atom(decl.name, AtomOp::ne, v), g).value();
      CHECK_FALSE(eq.intersects(ne));
      ClassSet both = eq;
      both |= ne;
      CHECK(both == g.classes_with(f));
      CHECK(denote(SpecExpr::negation(SpecExpr::atom(decl.name, AtomOp::eq, v)), g).value() == ne);
    }
  }
}

TEST_CASE("typecheck: ill-typed disjunct is named") {
  const TypeGraph& g = fixture_graph();
  auto r = typecheck(parse("[pos = v & (vform = fin | case != gen)]"), g);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == TypeError::Kind::ill_typed);
  CHECK(r.error().disjunct == "[pos=v & case!=gen]");
  CHECK(r.error().message.find("not type compatible") != std::string::npos);
  CHECK(r.error().message.find("pos=v") != std::string::npos);
  CHECK(r.error().message.find("case!=gen") != std::string::npos);
}

TEST_CASE("typecheck: accepted and rejected examples") {
  const TypeGraph& g = fixture_graph();
  auto ok = typecheck(parse("[pos = v & vtype = aux & pers = 3]"), g);
  REQUIRE(ok.ok());
  CHECK(ok.value().denotation.count() == 4);  // indicative past/pres, subjunctive, imperative
  CHECK_FALSE(typecheck(parse("[vform = fin & vform = inf]"), g).ok());
  auto unknown = typecheck(parse("[colour = red]"), g);
  REQUIRE_FALSE(unknown.ok());
  CHECK(unknown.error().kind == TypeError::Kind::unknown_name);
  CHECK(typecheck(parse("[vtype = sg]"), g).error().kind == TypeError::Kind::malformed_atom);
  CHECK(typecheck(parse("[pos = nosuch]"), g).error().kind == TypeError::Kind::unknown_name);
}
