#include "divq/construct.hpp"

#include <algorithm>
#include <set>

namespace divq {

namespace {

bool below_s(const SRing& R, const Integer& p) {
  const auto& ps = R.rational_primes();
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

// Elements of F_p^x generated by gens, by closure.
std::set<Integer> generated_subgroup(const std::vector<Integer>& gens, const Integer& p) {
  std::set<Integer> h{Integer(1)};
  std::vector<Integer> frontier{Integer(1)};
  while (!frontier.empty()) {
    std::vector<Integer> next;
    for (const Integer& a : frontier)
      for (const Integer& g : gens) {
        Integer c = mod(a * g, p);
        if (h.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return h;
}

NamedCheck check(std::string name, bool ok, std::string detail = {}) { return {std::move(name), ok, std::move(detail)}; }

Term var(const std::string& name) { return Term::var(name); }

Value power_of_x(long k) { return Value::monomial(k); }

}  // namespace

LenstraPair find_lenstra_pair(const SRing& R, long scan_bound) {
  if (scan_bound < 2) throw PreconditionError("find_lenstra_pair: scan bound must be at least 2");
  for (Integer p = 2; p <= scan_bound; p = next_prime(p)) {
    for (const PrimeIdeal& P : split_prime(R.field(), p)) {
      if (P.kind != Splitting::split || R.contains(P)) continue;
      Integer index = unit_image_index(R, P);
      if (index == 1) continue;
      // The image is the subgroup of index `index` of a cyclic group.
      Integer e = (p - 1) / index;
      for (Integer b = 2; b < p; ++b)
        if (powmod(b, e, p) != 1) return {p, b, P, index};
    }
  }
  throw Error("find_lenstra_pair: no pair with p <= " + std::to_string(scan_bound));
}

Constants compute_constants(const SRing& R, long scan_bound) {
  Constants C;
  C.lenstra = find_lenstra_pair(R, scan_bound);
  Integer den = 1;
  for (const PrimeIdeal& P : R.primes()) den *= ipow(P.q, R.class_number());
  C.c_sq = Rational(Integer(1), den);
  Rational bound = Rational(4) / C.c_sq;
  Integer q = 1;
  do q = next_prime(q);
  while (Rational(q) <= bound || below_s(R, q));
  C.q = q;
  for (Integer p = 2; C.q_list.size() < static_cast<std::size_t>(R.unit_count()) + 1; p = next_prime(p))
    if (!below_s(R, p)) C.q_list.push_back(p);
  return C;
}

std::vector<NamedCheck> check_constants(const SRing& R, const Constants& C) {
  std::vector<NamedCheck> out;
  Rational expected = 1;
  for (const PrimeIdeal& P : R.primes()) expected /= Rational(ipow(P.q, R.class_number()));
  out.push_back(check("C^2 = prod q_P^-h_K", C.c_sq == expected, to_string(C.c_sq)));
  out.push_back(check("q > 4/C^2", Rational(C.q) > Rational(4) / C.c_sq, "q = " + to_string(C.q)));
  out.push_back(check("q prime, not below S", is_prime(C.q) && !below_s(R, C.q)));
  std::set<Integer> distinct(C.q_list.begin(), C.q_list.end());
  bool qs = distinct.size() == C.q_list.size() && C.q_list.size() == static_cast<std::size_t>(R.unit_count()) + 1;
  for (const Integer& qi : C.q_list) qs = qs && is_prime(qi) && !below_s(R, qi);
  out.push_back(check("q_i: u_K + 1 distinct primes not below S", qs));

  const LenstraPair& L = C.lenstra;
  const PrimeIdeal& P = L.prime;
  bool prime_ok = is_prime(L.p) && P.p == L.p && P.e == 1 && P.f == 1 && !R.contains(P);
  out.push_back(check("Lenstra prime unramified, degree one, outside S", prime_ok, P.label()));
  out.push_back(check("0 < b < p", L.b > 0 && L.b < L.p));
  if (prime_ok) {
    auto image = generated_subgroup(unit_image_generators(R, P), L.p);
    Integer index = (L.p - 1) / static_cast<unsigned long>(image.size());
    out.push_back(check("unit image index > 1", index > 1 && index == L.index, "index " + to_string(index)));
    out.push_back(check("b outside the unit image", !image.count(mod(L.b, L.p))));
  }
  return out;
}

std::vector<std::vector<long>> multi_indices(std::size_t k, long box) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur(k, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == box) cur[--i] = 0;
    if (i == 0) break;
    ++cur[i - 1];
  }
  return out;
}

Integer p_power(const SRing& R, const std::vector<long>& alpha) {
  Integer out = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) out *= ipow(R.rational_primes()[i], alpha[i]);
  return out;
}

Formula neq_formula(const Constants& C, const Term& y, const std::string& prefix) {
  Term a = var(prefix + "a"), b = var(prefix + "b"), x = var(prefix + "x");
  return Formula::exists({prefix + "a", prefix + "b", prefix + "x"},
                         Formula::all({Formula::div(y, a), Formula::div(C.lenstra.p * x + C.lenstra.b, b),
                                       Formula::eq(a + b, 1)}));
}

Formula build_neq(const SRing&, const Constants& C) { return neq_formula(C, var("y"), ""); }

Formula produnits_formula(const SRing& R, const Constants& C, const Term& x, const Term& y, const Term& z) {
  std::vector<Formula> parts{Formula::div(x, 1), Formula::div(y, 1), Formula::div(z, 1)};
  for (const auto& alpha : multi_indices(R.rational_primes().size(), C.small_box)) {
    Integer pa = p_power(R, alpha);
    for (const Integer& qi : C.q_list) {
      Term lhs = pa * x + qi;
      Term rhs = pa * z + qi * y;
      parts.push_back(Formula::div(lhs, rhs));
      parts.push_back(Formula::div(rhs, lhs));
    }
  }
  return Formula::all(std::move(parts));
}

Formula build_produnits(const SRing& R, const Constants& C) {
  return produnits_formula(R, C, var("x"), var("y"), var("z"));
}

Formula phi_inf_formula(const SRing& R, const Constants& C, const Term& u, const std::string& prefix) {
  std::vector<Formula> parts{Formula::div(u, 1), neq_formula(C, u - 1, prefix + "n1_"),
                             neq_formula(C, u + 1, prefix + "n2_")};
  const std::string m = prefix + "m";
  if (R.unit_count() == 4) {
    parts.push_back(Formula::exists(
        {m}, Formula::all({produnits_formula(R, C, u, u, var(m)), neq_formula(C, var(m) + 1, prefix + "n3_")})));
  } else if (R.unit_count() == 6) {
    parts.push_back(Formula::exists({m}, Formula::all({produnits_formula(R, C, u, u, var(m)),
                                                       neq_formula(C, var(m) + u + 1, prefix + "n3_"),
                                                       neq_formula(C, var(m) - u + 1, prefix + "n4_")})));
  }
  return Formula::all(std::move(parts));
}

Formula build_phi_inf(const SRing& R, const Constants& C) { return phi_inf_formula(R, C, var("u"), ""); }

Formula build_sq(const SRing& R, const Constants& C) {
  const Term x = var("x"), y = var("y"), eps = var("eps");
  const auto J = multi_indices(R.rational_primes().size(), C.large_box);
  std::vector<Formula> cases{Formula::all({Formula::eq(x, 0), Formula::eq(y, 0)})};
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L})
      cases.push_back(Formula::all({Formula::eq(pa * x + s, 0), Formula::eq(pa * pa * y - 1, 0)}));
  }
  // With -1 a square, p^2a y + 1 vanishes at x = +-sqrt(-1)/p^a and the
  // divisibility part cannot hold there.
  if (R.unit_count() == 4)
    for (const auto& alpha : J) {
      Integer pa = p_power(R, alpha);
      cases.push_back(Formula::all({produnits_formula(R, C, pa * x, pa * x, Term(-1)),
                                    Formula::eq(pa * pa * y + 1, 0)}));
    }

  std::vector<Formula> body{Formula::div(eps, 1), phi_inf_formula(R, C, eps, "inf_")};
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L}) body.push_back(Formula::div(pa * x + s, eps - 1));
  }
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L}) body.push_back(Formula::div(pa * pa * y + s, eps - 1));
  }
  body.push_back(Formula::div(Term(C.q), eps - 1));
  // eps^17 and eps^34 by square-and-multiply
  body.push_back(produnits_formula(R, C, eps, eps, var("e2")));
  body.push_back(produnits_formula(R, C, var("e2"), var("e2"), var("e4")));
  body.push_back(produnits_formula(R, C, var("e4"), var("e4"), var("e8")));
  body.push_back(produnits_formula(R, C, var("e8"), var("e8"), var("e16")));
  body.push_back(produnits_formula(R, C, var("e16"), eps, var("e17")));
  body.push_back(produnits_formula(R, C, var("e17"), var("e17"), var("e34")));
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L})
      body.push_back(Formula::div(pa * x + Integer(s) * var("e17"), pa * pa * y - var("e34")));
  }
  cases.push_back(
      Formula::exists({"eps", "e2", "e4", "e8", "e16", "e17", "e34"}, Formula::all(std::move(body))));
  return Formula::any(std::move(cases));
}

NeqWitness witness_neq(const SRing& R, const Constants& C, const Value& y, const std::optional<UnitSymbol>& symbol) {
  const Field& F = R.field();
  const Integer& p = C.lenstra.p;
  const Integer& b = C.lenstra.b;
  ValueOracle oracle(R, symbol);
  if (oracle.is_zero(y) != Truth::no) throw PreconditionError("witness_neq: y must be nonzero");
  if (!oracle.in_ring(y)) throw PreconditionError("witness_neq: y must lie in O_{K,S}");
  NeqWitness w;
  if (y.is_constant()) {
    KElem yc = y.constant();
    KElem y1(yc.x, yc.y, 1);  // y * den
    Integer n = F.norm_numerator(y1);
    for (Integer x = 0;; ++x) {
      Integer ell = p * x + b;
      if (!is_prime(ell) || gcd(n, ell) != 1) continue;
      Integer g, s1, s2;
      mpz_gcdext(g.get_mpz_t(), s1.get_mpz_t(), s2.get_mpz_t(), n.get_mpz_t(), ell.get_mpz_t());
      // s1 * conj(y1) * y1 + s2 * ell = 1
      KElem r = F.scale(F.conj(y1), s1 * yc.den);
      w.x = x;
      w.ell = ell;
      w.r = Value(r);
      w.a = Value(KElem(s1 * n));
      w.b = Value(KElem(s2 * ell));
      return w;
    }
  }
  Integer dens = 1;
  for (auto& [k, c] : y.terms()) dens = lcm(dens, c.den);
  for (Integer x = 0;; ++x) {
    Integer ell = p * x + b;
    if (!is_prime(ell) || dens % ell == 0) continue;
    bool below = false;
    for (const Integer& ps : R.rational_primes()) below = below || ps == ell;
    if (below) continue;
    ResidueRing ring(F, ell, 1);
    KElem yr = ring.lift(oracle.reduce(y, ring));
    Integer n = mod(F.norm_numerator(yr), ell);
    if (n == 0) continue;
    Integer ninv = invmod(n, ell);
    KElem c = F.conj(yr);
    KElem r0(mod(c.x * ninv, ell), mod(c.y * ninv, ell), 1);
    w.x = x;
    w.ell = ell;
    w.r = Value(r0);
    w.a = y.mul(F, Value(r0));
    w.b = Value(1).sub(F, w.a);
    return w;
  }
}

void add_neq_witness(const NeqWitness& w, const std::string& prefix, Witness& out) {
  out.values[prefix + "a"] = w.a;
  out.values[prefix + "b"] = w.b;
  out.values[prefix + "x"] = Value(KElem(w.x));
}

Witness witness_phi_inf(const SRing& R, const Constants& C, const Value& u, const std::optional<UnitSymbol>& symbol,
                        const std::string& prefix) {
  const Field& F = R.field();
  Witness out;
  out.symbol = symbol;
  add_neq_witness(witness_neq(R, C, u.sub(F, 1), symbol), prefix + "n1_", out);
  add_neq_witness(witness_neq(R, C, u.add(F, 1), symbol), prefix + "n2_", out);
  if (R.unit_count() == 2) return out;
  Value m = u.mul(F, u);
  out.values[prefix + "m"] = m;
  if (R.unit_count() == 4) {
    add_neq_witness(witness_neq(R, C, m.add(F, 1), symbol), prefix + "n3_", out);
  } else {
    add_neq_witness(witness_neq(R, C, m.add(F, u).add(F, 1), symbol), prefix + "n3_", out);
    add_neq_witness(witness_neq(R, C, m.sub(F, u).add(F, 1), symbol), prefix + "n4_", out);
  }
  return out;
}

UnitSymbol witness_inf_unit(const SRing& R, const std::vector<KElem>& moduli) {
  const Field& F = R.field();
  const KElem& eps0 = R.generators().front();
  std::map<PrimeIdeal, long> need;
  for (const KElem& m : moduli) {
    if (m.is_zero()) continue;
    for (auto& [P, k] : factor_element(F, m)) {
      if (k <= 0 || R.contains(P)) continue;
      long& n = need[P];
      n = std::max(n, k * R.class_number());
    }
  }
  Integer t = 1;
  for (auto& [P, k] : need) t = lcm(t, unit_order_mod_prime_power(F, eps0, P, k));
  UnitSymbol eps{eps0, t};
  if (F.is_torsion(eps0)) throw Error("witness_inf_unit: generator is a root of unity");
  ValueOracle oracle(R, eps);
  Value em1 = power_of_x(1).sub(F, 1);
  for (const KElem& m : moduli)
    if (!m.is_zero() && oracle.divides(Value(m), em1) != Truth::yes)
      throw Error("witness_inf_unit: " + format_kelem(m) + " does not divide eps - 1");
  return eps;
}

std::vector<KElem> sq_moduli(const SRing& R, const Constants& C, const KElem& x, const KElem& y) {
  const Field& F = R.field();
  std::vector<KElem> out;
  const auto J = multi_indices(R.rational_primes().size(), C.large_box);
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L}) out.push_back(F.add(F.scale(x, pa), KElem(s)));
  }
  for (const auto& alpha : J) {
    Integer pa = p_power(R, alpha);
    for (long s : {1L, -1L}) out.push_back(F.add(F.scale(y, pa * pa), KElem(s)));
  }
  out.push_back(KElem(C.q));
  std::erase_if(out, [](const KElem& m) { return m.is_zero(); });
  return out;
}

bool is_cleared_power(const SRing& R, const Constants& C, const KElem& x) {
  const Field& F = R.field();
  KElem x2 = F.mul(x, x);
  for (const auto& alpha : multi_indices(R.rational_primes().size(), C.large_box)) {
    Integer pa = p_power(R, alpha);
    KElem px2 = F.scale(x2, pa * pa);
    if (px2 == KElem(1) || px2 == KElem(-1)) return true;
  }
  return false;
}

SqWitness witness_sq(const SRing& R, const Constants& C, const KElem& x) {
  const Field& F = R.field();
  if (x.is_zero() || is_cleared_power(R, C, x))
    throw PreconditionError("witness_sq: x = " + format_kelem(x) + " is handled by the equational cases");
  if (!is_s_integer(R, x)) throw PreconditionError("witness_sq: x must lie in O_{K,S}");
  KElem y = F.mul(x, x);
  SqWitness out;
  out.eps = witness_inf_unit(R, sq_moduli(R, C, x, y));
  out.witness = witness_phi_inf(R, C, power_of_x(1), out.eps, "inf_");
  auto& v = out.witness.values;
  v["eps"] = power_of_x(1);
  v["e2"] = power_of_x(2);
  v["e4"] = power_of_x(4);
  v["e8"] = power_of_x(8);
  v["e16"] = power_of_x(16);
  v["e17"] = power_of_x(C.exponent_17);
  v["e34"] = power_of_x(C.exponent_34);
  return out;
}

namespace {

long least_outside(const std::set<long>& excluded, long box) {
  for (long i = 0; i <= box; ++i)
    if (!excluded.count(i)) return i;
  throw Error("exclusion sets cover the whole box");
}

void exclude_quotient(std::set<long>& ex, long num, long den) {
  if (num % den == 0) ex.insert(num / den);
}

}  // namespace

std::vector<long> select_beta(const SRing& R, const KElem& x, const KElem& y, const KElem& z) {
  const Field& F = R.field();
  std::vector<long> beta;
  for (const Integer& p : R.rational_primes()) {
    std::set<long> ex;
    for (const PrimeIdeal& P : R.primes()) {
      if (P.p != p) continue;
      long vx = valuation(F, x, P), vy = valuation(F, y, P), vz = valuation(F, z, P);
      exclude_quotient(ex, -vx, P.e);       // e beta + v(x) != 0
      exclude_quotient(ex, vy - vz, P.e);   // e beta + v(z) != v(y)
    }
    beta.push_back(least_outside(ex, 4));
  }
  return beta;
}

std::vector<long> select_alpha_claimA(const SRing& R, const KElem& x, const KElem& y,
                                      const std::vector<Integer>& eps1_val) {
  const Field& F = R.field();
  std::vector<long> alpha;
  for (const Integer& p : R.rational_primes()) {
    std::set<long> ex;
    for (std::size_t i = 0; i < R.rank(); ++i) {
      const PrimeIdeal& P = R.primes()[i];
      if (P.p != p) continue;
      long vx = valuation(F, x, P), vy = valuation(F, y, P);
      exclude_quotient(ex, -vx, P.e);
      exclude_quotient(ex, -vy, 2 * P.e);
      // e alpha + v(x) != v(eps_1); values beyond the box cannot collide
      Integer d = eps1_val[i] - vx;
      if (abs(d) <= 64 * P.e) exclude_quotient(ex, d.get_si(), P.e);
    }
    alpha.push_back(least_outside(ex, 6));
  }
  return alpha;
}

bool LemmaReport::passed() const {
  if (!hypotheses_hold) return false;
  for (const auto& c : conclusions)
    if (!c.passed) return false;
  return true;
}

LemmaReport lemma_checks(const SRing& R, const Constants& C, const KElem& x, const UnitSymbol& eps,
                         const std::optional<KElem>& y_in) {
  const Field& F = R.field();
  const long h = R.class_number();
  LemmaReport rep;
  KElem y = y_in ? *y_in : F.mul(x, x);
  if (x.is_zero() || y.is_zero()) throw PreconditionError("lemma_checks: x and y must be nonzero");
  ValueOracle oracle(R, eps);
  auto hyp = [&](std::string name, bool ok, std::string detail = {}) {
    rep.hypotheses.push_back(check(std::move(name), ok, std::move(detail)));
    rep.hypotheses_hold = rep.hypotheses_hold && ok;
  };
  auto concl = [&](std::string name, bool ok, std::string detail = {}) {
    rep.conclusions.push_back(check(std::move(name), ok, std::move(detail)));
  };

  std::vector<Integer> v_eps, v_eps1;
  for (const PrimeIdeal& P : R.primes()) {
    v_eps.push_back(eps.exponent * valuation(F, eps.base, P));
    v_eps1.push_back(v_eps.back() * C.exponent_17);
  }
  rep.alpha = select_alpha_claimA(R, x, y, v_eps1);
  Integer pa = p_power(R, rep.alpha);
  KElem X = F.scale(x, pa), Y = F.scale(y, pa * pa);

  hyp("eps is a unit of infinite order", eps.exponent > 0 && !F.is_torsion(eps.base));
  for (std::size_t i = 0; i < R.rank(); ++i) {
    const PrimeIdeal& P = R.primes()[i];
    long vX = valuation(F, X, P), vY = valuation(F, Y, P);
    hyp("valuations: v_P(X) != 0 at " + P.label(), vX != 0);
    hyp("valuations: v_P(Y) != 0 at " + P.label(), vY != 0);
    hyp("valuations: v_P(X) != v_P(eps_1) at " + P.label(), Integer(vX) != v_eps1[i]);
  }
  Value em1 = power_of_x(1).sub(F, 1);
  auto divides_em1 = [&](const KElem& m) { return oracle.divides(Value(m), em1) == Truth::yes; };
  hyp("X + 1 | eps - 1", divides_em1(F.add(X, 1)));
  hyp("X - 1 | eps - 1", divides_em1(F.sub(X, 1)));
  hyp("Y + 1 | eps - 1", divides_em1(F.add(Y, 1)));
  hyp("Y - 1 | eps - 1", divides_em1(F.sub(Y, 1)));
  hyp("q | eps - 1", divides_em1(KElem(C.q)));
  if (!rep.hypotheses_hold) return rep;

  // eps has integral base, so eps = u / v with u = eps, v = 1.
  ABDecomp ab = ab_decompose(R, X), cd = ab_decompose(R, Y);
  PowerProduct Nu(F.norm_numerator(eps.base), eps.exponent);
  PowerProduct Nv(Integer(1), Integer(0));
  auto max_at_least = [&](const PowerProduct& A, const PowerProduct& B, const Rational& m) {
    return compare(A, m) >= 0 || compare(B, m) >= 0;
  };

  for (auto [tag, d] : {std::pair<const char*, const ABDecomp*>{"X", &ab}, {"Y", &cd}}) {
    for (const PrimeIdeal& P : R.primes()) {
      long va = valuation(F, d->a, P), vb = valuation(F, d->b, P);
      concl(std::string("a/b: v_P(a) > -h_K at ") + P.label() + " (" + tag + ")", va > -h);
      concl(std::string("a/b: v_P(a) > 0 implies v_P(b) = 0 at ") + P.label() + " (" + tag + ")",
            va <= 0 || vb == 0);
      long vx = valuation(F, F.div(d->a, d->b), P);
      concl(std::string("a/b: v_P(x) >= 0 implies v_P(b) = 0 at ") + P.label() + " (" + tag + ")",
            vx < 0 || vb == 0);
    }
    concl(std::string("a/b: |a| > C (") + tag + ")", F.norm(d->a) > C.c_sq, to_string(F.norm(d->a)));
  }
  for (const PrimeIdeal& P : R.primes())
    concl("a/b: v_P(u) > -h_K at " + P.label() + " (eps)", eps.exponent * valuation(F, eps.base, P) > -h);
  concl("a/b: |u| > C (eps)", compare(Nu, C.c_sq) > 0);

  PowerProduct Nu2 = Nu.squared(), Nv2 = Nv.squared();
  concl("height: 1/C <= max{|u|^2,|v|^2}", max_at_least(Nu2, Nv2, Rational(1) / C.c_sq));
  concl("height: max{|u|,|v|} > 2/C",
        compare(Nu, Rational(4) / C.c_sq) > 0 || compare(Nv, Rational(4) / C.c_sq) > 0);
  for (auto [tag, d] : {std::pair<const char*, const ABDecomp*>{"X", &ab}, {"Y", &cd}}) {
    bool ok = max_at_least(Nu2, Nv2, Rational(4) / C.c_sq) && max_at_least(Nu2, Nv2, F.norm(d->a)) &&
              max_at_least(Nu2, Nv2, F.norm(d->b));
    concl(std::string("height: max{2/C,|a|,|b|} <= max{|u|^2,|v|^2} (") + tag + ")", ok);
  }

  const KElem &a = ab.a, &b = ab.b, &c = cd.a, &d = cd.b;
  KElem num = F.sub(F.mul(F.mul(b, b), c), F.mul(F.mul(a, a), d));
  Rational big3 = std::max({F.norm(a), F.norm(b), F.norm(c), F.norm(d)});
  big3 = big3 * big3 * big3;
  concl("final: 2 max{|a|^3,|b|^3,|c|^3,|d|^3} <= max{|u|^8,|v|^8}",
        max_at_least(Nu2.squared().squared(), Nv2, big3 * 4));
  if (!num.is_zero())
    concl("final: |b^2c - a^2d| <= 2 max{|a|^3,|b|^3,|c|^3,|d|^3}", F.norm(num) <= big3 * 4);

  for (const PrimeIdeal& P : R.primes()) {
    long va = valuation(F, a, P), vb = valuation(F, b, P);
    if (!num.is_zero())
      concl("eqpoles: v_P(b^2c - a^2d) > -2h_K at " + P.label(), valuation(F, num, P) > -2 * h);
    for (long s : {1L, -1L}) {
      const char* sign = s > 0 ? "+" : "-";
      Value lhs = Value(a).add(F, Value::monomial(C.exponent_17, F.scale(b, s)));
      auto vl = oracle.valuation_of(lhs, P);
      std::string where = std::string(" (") + sign + ") at " + P.label();
      if (!vl) {
        concl("poles: v_P(a v^17 " + std::string(sign) + " u^17 b) <= h_K + v_P(a) + v_P(b)" + where, false,
              "valuation undetermined");
        continue;
      }
      concl("poles: v_P(a v^17 " + std::string(sign) + " u^17 b) <= h_K + v_P(a) + v_P(b)" + where,
            *vl <= h + va + vb, "v = " + vl->get_str());
      if (!num.is_zero())
        concl("e+-: v_P(e) >= -3h_K - v_P(a) - v_P(b)" + where, valuation(F, num, P) - *vl >= -3 * h - va - vb);
    }
  }
  return rep;
}

KElem random_element(const SRing& R, std::mt19937_64& rng, long height, long den_box) {
  std::uniform_int_distribution<long> coeff(-height, height), expo(0, den_box);
  Integer m = coeff(rng), n = coeff(rng);
  Integer den = 1;
  for (const Integer& p : R.rational_primes()) den *= ipow(p, expo(rng));
  return KElem(m, n, den);
}

KElem random_unit(const SRing& R, std::mt19937_64& rng, long box) {
  std::uniform_int_distribution<int> tors(0, R.unit_count() - 1);
  std::uniform_int_distribution<long> expo(-box, box);
  UnitExponents u;
  u.torsion = tors(rng);
  for (std::size_t i = 0; i < R.rank(); ++i) u.exponents.push_back(expo(rng));
  return unit_from_exponents(R, u);
}

}  // namespace divq
