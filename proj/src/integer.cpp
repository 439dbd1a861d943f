#include "divq/integer.hpp"

#include <algorithm>

namespace divq {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's variant of Pollard rho. n is odd, composite, not a perfect power of
// a small prime (trial division has already removed those).
Integer pollard_brent(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    auto step = [&](const Integer& v) { return mod(v * v + c, n); };
    unsigned long r = 1;
    const unsigned long m = 128;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          Integer d = x - y;
          q = mod(q * abs(d), n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer root;
  for (unsigned long k = 2; k <= 64; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<Integer, int> sub;
      factor_into(root, sub);
      for (auto& [p, e] : sub) out[p] += e * static_cast<int>(k);
      return;
    }
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<Integer, int> factor_integer(const Integer& n) {
  if (n == 0) throw PreconditionError("factor_integer: zero has no factorization");
  std::map<Integer, int> out;
  Integer m = abs(n);
  for (unsigned long p = 2; p < 20000 && m > 1; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++out[Integer(p)];
    }
  }
  factor_into(m, out);
  return out;
}

std::vector<Integer> prime_factors(const Integer& n) {
  std::vector<Integer> ps;
  for (auto& [p, e] : factor_integer(n)) ps.push_back(p);
  return ps;
}

long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw PreconditionError("valuation of zero");
  Integer m = n;
  long k = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw PreconditionError("isqrt of negative number");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer ceil_sqrt(const Integer& n) {
  Integer r = isqrt(n);
  return r * r == n ? r : r + 1;
}

bool is_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer powmod(const Integer& base, const Integer& exp, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer invmod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("invmod: " + a.get_str() + " is not invertible mod " + m.get_str());
  return r;
}

Integer sqrt_mod_prime(const Integer& a0, const Integer& p) {
  Integer a = mod(a0, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1)
    throw PreconditionError("sqrt_mod_prime: non-residue");
  // Tonelli-Shanks
  Integer q = p - 1;
  long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  Integer c = powmod(z, q, p);
  Integer x = powmod(a, (q + 1) / 2, p);
  Integer t = powmod(a, q, p);
  long m = s;
  while (t != 1) {
    long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = mod(tt * tt, p);
      ++i;
    }
    Integer b = c;
    for (long j = 0; j < m - i - 1; ++j) b = mod(b * b, p);
    x = mod(x * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  return x;
}

Integer order_mod_prime(const Integer& a, const Integer& p) {
  Integer r = mod(a, p);
  if (r == 0) throw PreconditionError("order_mod_prime: zero residue");
  Integer n = p - 1;
  for (auto& [l, e] : factor_integer(p - 1)) {
    for (int i = 0; i < e; ++i) {
      if (powmod(r, n / l, p) == 1) n /= l;
      else break;
    }
  }
  return n;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::int64_t to_i64(const Integer& n) {
  if (!n.fits_slong_p()) throw Error("integer out of 64-bit range: " + n.get_str());
  return n.get_si();
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace divq
