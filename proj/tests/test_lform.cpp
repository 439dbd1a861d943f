#include "divq/lform.hpp"

#include <doctest.h>

#include <random>

using namespace divq;

namespace {
const SRing& gauss() {
  static const SRing R = SRing::from_spec("d=-1;S=2r");
  return R;
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars) {
  Term t(Integer(static_cast<long>(rng() % 7) - 3));
  for (const std::string& v : vars)
    if (rng() % 2) t += Term::var(v, Integer(static_cast<long>(rng() % 9) - 4));
  return t;
}

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  int pick = static_cast<int>(rng() % (depth > 0 ? 4 : 2));
  if (pick == 0) return Formula::eq(random_term(rng, vars), random_term(rng, vars));
  if (pick == 1) return Formula::div(random_term(rng, vars), random_term(rng, vars));
  std::vector<Formula> kids;
  for (int i = 0; i < 2 + static_cast<int>(rng() % 2); ++i) kids.push_back(random_formula(rng, vars, depth - 1));
  return pick == 2 ? Formula::all(std::move(kids)) : Formula::any(std::move(kids));
}
}  // namespace

TEST_CASE("parse examples") {
  Formula f = parse_formula("(div (+ x 1) y)");
  CHECK(f.kind == FormulaKind::div);
  CHECK(f.lhs == Term::var("x") + Term(1));
  CHECK(f.rhs == Term::var("y"));
  CHECK(parse_formula("(and (eq x 0) (eq y 0))").kind == FormulaKind::conj);
  Formula e = parse_formula("(exists (a b) (eq (+ a (* -2 b)) 3))");
  CHECK(e.kind == FormulaKind::exists);
  CHECK(e.vars == std::vector<std::string>{"a", "b"});
  CHECK(e.children[0].lhs.coeffs.at("b") == -2);
}

TEST_CASE("the language is positive") {
  CHECK_THROWS_AS(parse_formula("(not (eq x 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(forall (x) (eq x 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(eq x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(eq (* x y) 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(eq X 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(eq x 0) junk"), ParseError);
  try {
    parse_formula("(eq x 0");
    FAIL("no error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 7);
  }
}

TEST_CASE("print and parse round trip") {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, {"x", "y", "z"}, 3);
    if (rng() % 2) f = Formula::exists({"z"}, f);
    std::string text = print_formula(f);
    Formula g = parse_formula(text);
    CHECK(print_formula(g) == text);
    CHECK(atom_count(g) == atom_count(f));
  }
}

TEST_CASE("variables") {
  Formula f = parse_formula("(and (div x 1) (exists (a b) (and (eq (+ a b) y) (exists (c) (div c a)))))");
  CHECK(free_variables(f) == std::set<std::string>{"x", "y"});
  CHECK(bound_variables(f) == std::vector<std::string>{"a", "b", "c"});
  CHECK(atom_count(f) == 3);
  CHECK_THROWS(bound_variables(parse_formula("(and (exists (a) (eq a 0)) (exists (a) (eq a 1)))")));
  CHECK_THROWS(bound_variables(parse_formula("(and (eq a 0) (exists (a) (eq a 1)))")));
}

TEST_CASE("evaluation examples") {
  const SRing& R = gauss();
  CHECK(eval_closed(R, parse_formula("(div x 1)"), {{"x", KElem(2)}}));
  CHECK_FALSE(eval_closed(R, parse_formula("(div x 1)"), {{"x", KElem(3)}}));
  CHECK(eval_closed(R, parse_formula("(eq (+ x x) 0)"), {{"x", KElem(0)}}));
  CHECK_FALSE(eval_closed(R, parse_formula("(div 0 1)"), {}));
  CHECK(eval_closed(R, parse_formula("(div 0 0)"), {}));
  CHECK_THROWS(eval_closed(R, parse_formula("(div x 1)"), {}));
  CHECK_THROWS(eval_closed(R, parse_formula("(div x 1)"), {{"x", KElem(1, 0, 3)}}));
  // a disjunct decided without its witness
  Formula f = parse_formula("(or (eq x 0) (exists (z) (eq z x)))");
  CHECK(eval_closed(R, f, {{"x", KElem(0)}}));
  CHECK_THROWS(eval_closed(R, f, {{"x", KElem(1)}}));
  Witness w;
  w.values["z"] = Value(KElem(1));
  CHECK(eval_closed(R, f, {{"x", KElem(1)}}, w));
}

TEST_CASE("evaluation respects substitution") {
  const SRing& R = gauss();
  std::mt19937_64 rng(53);
  auto elem = [&] { return KElem(Integer(static_cast<long>(rng() % 7) - 3), Integer(static_cast<long>(rng() % 7) - 3),
                                 Integer(rng() % 2 ? 1 : 2)); };
  for (int i = 0; i < 300; ++i) {
    Formula body = random_formula(rng, {"x", "z"}, 2);
    Formula f = Formula::exists({"z"}, body);
    Assignment A{{"x", elem()}};
    KElem z = elem();
    Witness W;
    W.values["z"] = Value(z);
    Assignment full = A;
    full["z"] = z;
    CHECK(eval_closed(R, f, A, W) == eval_closed(R, body, full));
    std::map<std::string, Value> env{{"x", Value(A["x"])}, {"z", Value(z)}};
    CHECK(eval_partial(ValueOracle(R), body, env) == truth_of(eval_closed(R, body, full)));
  }
}

TEST_CASE("candidate enumeration") {
  const SRing& R = gauss();
  auto any0 = search_candidates(R, VarHint::any, 0);
  CHECK(any0 == std::vector<KElem>{KElem(0)});
  auto any1 = search_candidates(R, VarHint::any, 1);
  // 9 integral values, then the new ones over 2
  CHECK(any1.size() == 9 + 8);
  CHECK(any1.front() == KElem(-1, -1));
  auto units = search_candidates(R, VarHint::unit, 1);
  CHECK(units.size() == 4 * 3);
  CHECK(units.front() == KElem(1, -1, 2));  // (1 + w)^-1
  for (const KElem& u : units) CHECK(is_s_unit(R, u));
  std::set<std::string> seen;
  for (const KElem& u : search_candidates(R, VarHint::any, 3))
    CHECK(seen.insert(format_kelem(u)).second);
}

TEST_CASE("search examples") {
  const SRing& R = gauss();
  auto hit = search_exists(R, parse_formula("(exists (z) (eq z x))"), {{"x", KElem(3)}}, 3);
  REQUIRE(hit.has_value());
  CHECK(hit->at("z") == KElem(3));
  CHECK_FALSE(search_exists(R, parse_formula("(exists (z) (eq z x))"), {{"x", KElem(3)}}, 2).has_value());
  Formula unsat = parse_formula("(exists (z) (and (eq z 0) (eq (+ z 1) 0)))");
  for (long B = 0; B <= 3; ++B) CHECK_FALSE(search_exists(R, unsat, {}, B).has_value());
  // first hit in enumeration order
  auto unit = search_exists(R, parse_formula("(exists (u) (and (div u 1) (div (+ u -1) 2)))"), {}, 1,
                            {{"u", VarHint::unit}});
  REQUIRE(unit.has_value());
  CHECK(divides(R, KElem(2), R.field().sub(unit->at("u"), KElem(1))));
}

TEST_CASE("search is sound and monotone in the bound") {
  const SRing& R = gauss();
  std::mt19937_64 rng(59);
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    Formula body = random_formula(rng, {"x", "z"}, 1);
    Formula f = Formula::exists({"z"}, body);
    Assignment A{{"x", KElem(Integer(static_cast<long>(rng() % 5) - 2))}};
    bool before = false;
    for (long B = 0; B <= 3; ++B) {
      auto w = search_exists(R, f, A, B);
      if (before) CHECK(w.has_value());
      if (w) {
        Assignment full = A;
        full["z"] = w->at("z");
        CHECK(eval_closed(R, body, full));
        before = true;
      }
    }
    found += before;
  }
  CHECK(found > 0);
}
