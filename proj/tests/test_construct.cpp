#include "divq/construct.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace divq;

namespace {
const SRing& gauss() {
  static const SRing R = SRing::from_spec("d=-1;S=2r");
  return R;
}
const SRing& minus5() {
  static const SRing R = SRing::from_spec("d=-5;S=2r");
  return R;
}
const Constants& gauss_constants() {
  static const Constants C = compute_constants(gauss());
  return C;
}
const Constants& minus5_constants() {
  static const Constants C = compute_constants(minus5());
  return C;
}

long residue(const KElem& a, long p, long r) {
  mpz_class num = a.x + a.y * r, inv, den = a.den, pm = p;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
  mpz_class v = num * inv % p;
  if (v < 0) v += p;
  return v.get_si();
}

bool all_passed(const std::vector<NamedCheck>& checks) {
  bool ok = true;
  for (const NamedCheck& c : checks) {
    if (!c.passed) MESSAGE(c.name << ": " << c.detail);
    ok = ok && c.passed;
  }
  return ok;
}
}  // namespace

TEST_CASE("constants") {
  const Constants& C = gauss_constants();
  CHECK(C.c_sq == Rational(1, 2));
  CHECK(C.q == 11);
  CHECK(C.q_list == std::vector<Integer>{3, 5, 7, 11, 13});
  const Constants& C5 = minus5_constants();
  CHECK(C5.c_sq == Rational(1, 4));
  CHECK(C5.q == 17);
  CHECK(C5.q_list == std::vector<Integer>{3, 5, 7});
  CHECK(all_passed(check_constants(gauss(), C)));
  CHECK(all_passed(check_constants(minus5(), C5)));
  Constants bad = C;
  bad.q = 3;
  CHECK_FALSE(all_passed(check_constants(gauss(), bad)));
}

TEST_CASE("Lenstra pair recertified by subgroup closure") {
  for (const SRing* R : {&gauss(), &minus5()}) {
    LenstraPair L = find_lenstra_pair(*R, 2000);
    CHECK(L.b > 0);
    CHECK(L.b < L.p);
    long p = L.p.get_si(), r = L.prime.r.get_si();
    CHECK(L.prime.kind == Splitting::split);
    CHECK_FALSE(R->contains(L.prime));
    std::vector<long> gens{residue(R->torsion_generator(), p, r)};
    for (const KElem& g : R->generators()) gens.push_back(residue(g, p, r));
    std::set<long> H = oracle::subgroup(gens, p);
    CHECK(H.count(L.b.get_si()) == 0);
    CHECK(L.index == (p - 1) / static_cast<long>(H.size()));
    // and it is the least such b
    for (long b = 1; b < L.b.get_si(); ++b) CHECK(H.count(b) == 1);
  }
  CHECK(find_lenstra_pair(gauss(), 2000).p == 41);
  CHECK(find_lenstra_pair(minus5(), 2000).p == 41);
  CHECK_THROWS(find_lenstra_pair(gauss(), 30));
}

TEST_CASE("p x + b is never an S-unit") {
  std::mt19937_64 rng(61);
  for (const SRing* R : {&gauss(), &minus5()}) {
    const Constants& C = R == &gauss() ? gauss_constants() : minus5_constants();
    for (int i = 0; i < 200; ++i) {
      KElem x = random_element(*R, rng, 30, 4);
      KElem v = R->field().add(R->field().scale(x, C.lenstra.p), KElem(C.lenstra.b));
      CHECK_FALSE(is_s_unit(*R, v));
    }
  }
}

TEST_CASE("builders") {
  const SRing& R = gauss();
  const Constants& C = gauss_constants();
  Formula neq = build_neq(R, C);
  CHECK(free_variables(neq) == std::set<std::string>{"y"});
  CHECK(atom_count(neq) == 3);
  CHECK(parse_formula(print_formula(neq)) == neq);
  Formula pu = build_produnits(R, C);
  CHECK(free_variables(pu) == std::set<std::string>{"x", "y", "z"});
  // 5^k (u_K + 1) 2 + 3
  CHECK(atom_count(pu) == 5 * 5 * 2 + 3);
  CHECK(atom_count(build_produnits(minus5(), minus5_constants())) == 5 * 3 * 2 + 3);
  for (const Formula& f : {build_phi_inf(R, C), build_sq(R, C), build_sq(minus5(), minus5_constants())}) {
    CHECK_NOTHROW(bound_variables(f));
    CHECK(parse_formula(print_formula(f)) == f);
  }
  CHECK(free_variables(build_sq(R, C)) == std::set<std::string>{"x", "y"});
  CHECK(multi_indices(2, 1) == std::vector<std::vector<long>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(p_power(R, {3}) == 8);
}

TEST_CASE("products of S-units, exhaustively") {
  for (const SRing* R : {&gauss(), &minus5()}) {
    const Constants& C = R == &gauss() ? gauss_constants() : minus5_constants();
    const Field& F = R->field();
    Formula f = build_produnits(*R, C);
    std::vector<KElem> box;
    for (const KElem& z : F.torsion_units())
      for (long a = -1; a <= 1; ++a) box.push_back(F.mul(z, F.pow(R->generators()[0], a)));
    for (const KElem& x : box)
      for (const KElem& y : box)
        for (const KElem& z : box)
          CHECK(eval_closed(*R, f, {{"x", x}, {"y", y}, {"z", z}}) == (z == F.mul(x, y)));
    // a non-unit argument is rejected outright
    CHECK_FALSE(eval_closed(*R, f, {{"x", KElem(3)}, {"y", KElem(1)}, {"z", KElem(3)}}));
  }
}

TEST_CASE("select_beta") {
  const SRing& R = gauss();
  CHECK(select_beta(R, KElem(1), KElem(1), KElem(1)) == std::vector<long>{1});
  // exclusions -v(x)/e = -1 and (v(y) - v(z))/e = -1 leave 0
  CHECK(select_beta(R, KElem(2), KElem(1), KElem(2)) == std::vector<long>{0});
  // exclusions 1 and 0
  CHECK(select_beta(R, KElem(1, 0, 2), KElem(1), KElem(1)) == std::vector<long>{2});
}

TEST_CASE("select_alpha") {
  const SRing& R = gauss();
  const Field& F = R.field();
  CHECK(select_alpha_claimA(R, KElem(3), KElem(9), {Integer(1)}) == std::vector<long>{1});
  KElem x = F.mul(KElem(3), F.pow(KElem(1, 1), 5));
  CHECK(select_alpha_claimA(R, x, F.mul(x, x), {Integer(0)}) == std::vector<long>{0});
  // exclusions 0, 1 and 2 push alpha to 3
  KElem y = KElem(1, 0, 16);
  CHECK(select_alpha_claimA(R, KElem(3), y, {Integer(2)}) == std::vector<long>{3});
  CHECK(select_alpha_claimA(R, KElem(3), y, {Integer(4)}) == std::vector<long>{1});
}

TEST_CASE("neq certificates") {
  const SRing& R = gauss();
  const Constants& C = gauss_constants();
  const Field& F = R.field();
  Formula f = build_neq(R, C);
  for (const KElem& y : {KElem(3), KElem(0, 1), KElem(1, 0, 2), KElem(7, -4, 8)}) {
    NeqWitness w = witness_neq(R, C, Value(y));
    CHECK(w.a.add(F, w.b) == Value(1));
    CHECK(w.ell == C.lenstra.p * w.x + C.lenstra.b);
    CHECK(w.a == w.r.mul(F, Value(y)));
    Witness W;
    add_neq_witness(w, "", W);
    CHECK(eval_closed(R, f, {{"y", y}}, W));
  }
  CHECK_THROWS(witness_neq(R, C, Value(0)));
  CHECK_FALSE(search_exists(R, f, {{"y", KElem(0)}}, 2).has_value());
  std::mt19937_64 rng(67);
  Formula f5 = build_neq(minus5(), minus5_constants());
  for (int i = 0; i < 100; ++i) {
    KElem y = random_element(minus5(), rng, 40, 3);
    if (y.is_zero()) continue;
    Witness W;
    add_neq_witness(witness_neq(minus5(), minus5_constants(), Value(y)), "", W);
    CHECK(eval_closed(minus5(), f5, {{"y", y}}, W));
  }
}

TEST_CASE("inf units") {
  const SRing& R = gauss();
  UnitSymbol e3 = witness_inf_unit(R, {KElem(3)});
  CHECK(e3.base == KElem(1, 1));
  CHECK(e3.exponent == 8);
  UnitSymbol e1 = witness_inf_unit(R, {KElem(1)});
  CHECK(e1.exponent == 1);
  CHECK(witness_inf_unit(R, {}).exponent == 1);
  UnitSymbol e11 = witness_inf_unit(R, {KElem(11), KElem(3)});
  ValueOracle O(R, e11);
  Value em1 = Value::monomial(1).sub(R.field(), Value(1));
  CHECK(O.divides(Value(11), em1) == Truth::yes);
  CHECK(O.divides(Value(3), em1) == Truth::yes);
}

TEST_CASE("phi_inf") {
  const SRing& R = gauss();
  const Constants& C = gauss_constants();
  const Field& F = R.field();
  Formula f = build_phi_inf(R, C);
  KElem u(1, 1);
  CHECK(eval_closed(R, f, {{"u", u}}, witness_phi_inf(R, C, Value(u), std::nullopt, "")));
  KElem u2 = F.mul(KElem(1, 0, 2), F.pow(u, 3));
  CHECK(eval_closed(R, f, {{"u", u2}}, witness_phi_inf(R, C, Value(u2), std::nullopt, "")));
  // u = w: the only m with Prod_u(w, w, m) is -1, and psi_neq(0) has no witness
  Formula pu = produnits_formula(R, C, Term::var("u"), Term::var("u"), Term::var("m"));
  for (const KElem& m : search_candidates(R, VarHint::unit, 3))
    CHECK(eval_closed(R, pu, {{"u", F.omega()}, {"m", m}}) == (m == KElem(-1)));
  CHECK_FALSE(search_exists(R, build_neq(R, C), {{"y", KElem(0)}}, 2).has_value());
  // u = 1 is not even a candidate once psi_neq(u - 1) is refuted, same refutation
  CHECK_FALSE(eval_closed(R, f, {{"u", KElem(3)}}, witness_phi_inf(R, C, Value(KElem(1, 1)), std::nullopt, "")));
}

TEST_CASE("squares: equational cases") {
  const SRing& R = gauss();
  const Constants& C = gauss_constants();
  Formula f = build_sq(R, C);
  CHECK(eval_closed(R, f, {{"x", KElem(0)}, {"y", KElem(0)}}));
  CHECK(eval_closed(R, f, {{"x", KElem(1, 0, 2)}, {"y", KElem(1, 0, 4)}}));
  CHECK(eval_closed(R, f, {{"x", KElem(0, 1, 4)}, {"y", KElem(-1, 0, 16)}}));
  CHECK(is_cleared_power(R, C, KElem(1, 0, 2)));
  CHECK(is_cleared_power(R, C, KElem(-1, 0, 64)));
  CHECK(is_cleared_power(R, C, KElem(0, -1, 4)));
  CHECK_FALSE(is_cleared_power(R, C, KElem(3)));
  CHECK_FALSE(is_cleared_power(R, C, KElem(1, 0, 128)));
  CHECK_FALSE(is_cleared_power(minus5(), minus5_constants(), KElem(0, 1, 2)));
}

TEST_CASE("squares: certificates") {
  const SRing& R = gauss();
  const Constants& C = gauss_constants();
  const Field& F = R.field();
  Formula f = build_sq(R, C);
  for (const KElem& x : {KElem(3), KElem(0, 3), KElem(1, 2), KElem(-5, 3, 2), KElem(1, 1)}) {
    SqWitness w = witness_sq(R, C, x);
    CHECK(eval_closed(R, f, {{"x", x}, {"y", F.mul(x, x)}}, w.witness));
    LemmaReport rep = lemma_checks(R, C, x, w.eps);
    CHECK(rep.hypotheses_hold);
    CHECK(all_passed(rep.hypotheses));
    CHECK(all_passed(rep.conclusions));
    CHECK(rep.passed());
    // the same eps cannot certify a wrong square
    CHECK_FALSE(eval_closed(R, f, {{"x", x}, {"y", F.add(F.mul(x, x), KElem(1))}}, w.witness));
  }
  // w itself is a root of -1 and needs no unit at all
  CHECK(is_cleared_power(R, C, KElem(0, 1)));
  CHECK(eval_closed(R, f, {{"x", KElem(0, 1)}, {"y", KElem(-1)}}));
  CHECK_THROWS(witness_sq(R, C, KElem(0, 1)));
  LemmaReport tors = lemma_checks(R, C, KElem(3), UnitSymbol{R.torsion_generator(), 5});
  CHECK_FALSE(tors.hypotheses_hold);
}

TEST_CASE("squares: certificates in a class number two ring") {
  const SRing& R = minus5();
  const Constants& C = minus5_constants();
  const Field& F = R.field();
  Formula f = build_sq(R, C);
  std::mt19937_64 rng(71);
  for (int i = 0; i < 10;) {
    KElem x = random_element(R, rng, 6, 2);
    if (x.is_zero() || is_cleared_power(R, C, x)) continue;
    ++i;
    SqWitness w = witness_sq(R, C, x);
    CHECK(eval_closed(R, f, {{"x", x}, {"y", F.mul(x, x)}}, w.witness));
    CHECK(lemma_checks(R, C, x, w.eps).passed());
  }
}
