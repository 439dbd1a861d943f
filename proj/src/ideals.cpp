#include "divq/ideals.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace divq {

KElem PrimeIdeal::gen2() const {
  if (kind == Splitting::inert) return KElem(p);
  return KElem(r, -1, 1);
}

std::string PrimeIdeal::label() const {
  if (kind == Splitting::inert) return "(" + p.get_str() + ")";
  return "(" + p.get_str() + ", " + r.get_str() + ")";
}

std::vector<PrimeIdeal> split_prime(const Field& field, const Integer& p) {
  if (!is_prime(p)) throw PreconditionError("split_prime: " + p.get_str() + " is not prime");
  const Integer t = field.trace();
  const Integer n = field.omega_sq_const();
  const Integer D = field.disc();
  auto make = [&](Splitting kind, int e, int f, Integer r) {
    PrimeIdeal P;
    P.p = p;
    P.e = e;
    P.f = f;
    P.q = ipow(p, f);
    P.r = std::move(r);
    P.kind = kind;
    return P;
  };
  // Roots of X^2 - t X - n mod p.
  std::vector<Integer> roots;
  if (p == 2) {
    for (long r = 0; r < 2; ++r)
      if (mod(Integer(r * r) - t * r - n, 2) == 0) roots.emplace_back(r);
  } else if (mod(D, p) != 0) {
    if (powmod(mod(D, p), (p - 1) / 2, p) == 1) {
      Integer s = sqrt_mod_prime(D, p);
      Integer inv2 = invmod(2, p);
      roots.push_back(mod((t + s) * inv2, p));
      roots.push_back(mod((t - s) * inv2, p));
    }
  } else {
    roots.push_back(mod(t * invmod(2, p), p));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

  if (mod(D, p) == 0) return {make(Splitting::ramified, 2, 1, roots.at(0))};
  if (roots.empty()) return {make(Splitting::inert, 1, 2, Integer(-1))};
  return {make(Splitting::split, 1, 1, roots[0]), make(Splitting::split, 1, 1, roots[1])};
}

PrimeIdeal conjugate(const Field& field, const PrimeIdeal& P) {
  auto ps = split_prime(field, P.p);
  for (auto& Q : ps)
    if (!(Q == P)) return Q;
  return P;
}

namespace {

// v_P of x + y*w, not both zero.
long integral_valuation(const Field& field, const Integer& x, const Integer& y, const PrimeIdeal& P) {
  long c;
  if (x == 0) c = valuation(y, P.p);
  else if (y == 0) c = valuation(x, P.p);
  else c = std::min(valuation(x, P.p), valuation(y, P.p));
  Integer pc = ipow(P.p, static_cast<unsigned long>(c));
  Integer xs = x / pc, ys = y / pc;
  long rest = 0;
  switch (P.kind) {
    case Splitting::inert:
      rest = 0;
      break;
    case Splitting::split:
      // Not divisible by p, so it lies in at most one of P, conj(P).
      if (mod(xs + ys * P.r, P.p) == 0) rest = valuation(field.integral_norm(xs, ys), P.p);
      break;
    case Splitting::ramified:
      rest = valuation(field.integral_norm(xs, ys), P.p);
      break;
  }
  return c * P.e + rest;
}

}  // namespace

long valuation(const Field& field, const KElem& a, const PrimeIdeal& P) {
  if (a.is_zero()) throw PreconditionError("valuation: zero has no finite valuation");
  long num = integral_valuation(field, a.x, a.y, P);
  long den = a.den == 1 ? 0 : valuation(a.den, P.p) * P.e;
  return num - den;
}

Factorization factor_element(const Field& field, const KElem& a) {
  if (a.is_zero()) throw PreconditionError("factor_element: zero");
  std::set<Integer> primes;
  Integer nn = field.norm_numerator(a);
  for (auto& p : prime_factors(nn)) primes.insert(p);
  if (a.den != 1)
    for (auto& p : prime_factors(a.den)) primes.insert(p);
  Factorization out;
  for (const Integer& p : primes) {
    for (const PrimeIdeal& P : split_prime(field, p)) {
      long v = valuation(field, a, P);
      if (v != 0) out[P] = v;
    }
  }
  return out;
}

std::string format_factorization(const Factorization& fac) {
  std::ostringstream os;
  bool first = true;
  for (auto& [P, k] : fac) {
    if (!first) os << ' ';
    first = false;
    os << P.label() << '^' << k;
  }
  return os.str();
}

std::vector<std::array<long, 3>> reduced_forms(long disc) {
  if (disc >= 0 || (((disc % 4) + 4) % 4 != 0 && ((disc % 4) + 4) % 4 != 1))
    throw PreconditionError("reduced_forms: invalid negative discriminant " + std::to_string(disc));
  std::vector<std::array<long, 3>> out;
  const long absd = -disc;
  for (long a = 1; 3 * a * a <= absd; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

long class_number(long disc) { return static_cast<long>(reduced_forms(disc).size()); }

std::optional<KElem> is_principal(const Field& field, const PrimeIdeal& P, long k) {
  if (k < 1) throw PreconditionError("is_principal: exponent must be positive");
  if (P.kind == Splitting::inert) return KElem(ipow(P.p, static_cast<unsigned long>(k)));
  Integer target = ipow(P.q, static_cast<unsigned long>(k));
  std::optional<KElem> best;
  for (const KElem& g : field.elements_of_norm(target)) {
    if (valuation(field, g, P) != k) continue;
    if (!best || std::tie(g.x, g.y) > std::tie(best->x, best->y)) best = g;
  }
  if (best) {
    Factorization fac = factor_element(field, *best);
    if (fac.size() != 1 || fac.begin()->first != P || fac.begin()->second != k)
      throw Error("is_principal: generator does not factor as " + P.label() + "^" + std::to_string(k));
  }
  return best;
}

long class_order(const Field& field, const PrimeIdeal& P, long class_num) {
  for (long k = 1; k <= class_num; ++k) {
    if (class_num % k != 0) continue;
    if (is_principal(field, P, k)) return k;
  }
  throw Error("class_order: no principal power of " + P.label() + " up to the class number");
}

}  // namespace divq
