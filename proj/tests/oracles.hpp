// Independent reference computations for the tests. Nothing here calls into
// the library's number theory; only the Integer/KElem types are shared.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdlib>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

inline bool squarefree(long n) {
  n = std::labs(n);
  for (long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

/// Negative fundamental discriminants D with |D| <= bound.
inline std::vector<long> fundamental_discriminants(long bound) {
  std::vector<long> out;
  for (long D = -3; D >= -bound; --D) {
    long m = ((D % 4) + 4) % 4;
    if (m == 1 && squarefree(D)) out.push_back(D);
    if (m == 0) {
      long k = D / 4, km = ((k % 4) + 4) % 4;
      if ((km == 2 || km == 3) && squarefree(k)) out.push_back(D);
    }
  }
  return out;
}

/// Count of reduced primitive forms, straight from the definition.
inline long forms_class_number(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

/// h = -(w / 2|D|) sum_{a=1}^{|D|} chi_D(a) a
inline long dirichlet_class_number(long D) {
  long w = D == -4 ? 4 : D == -3 ? 6 : 2;
  mpz_class sum = 0, d = D;
  for (long a = 1; a < -D; ++a) sum += mpz_class(mpz_kronecker(d.get_mpz_t(), mpz_class(a).get_mpz_t())) * a;
  mpz_class h = -w * sum;
  return mpz_class(h / (2 * -D)).get_si();
}

/// O_K = Z[w], w^2 = t w + n.
struct Ring {
  long t, n;
  explicit Ring(long d) : t(((d % 4) + 4) % 4 == 1 ? 1 : 0), n(t ? (d - 1) / 4 : d) {}
  using V = std::array<mpz_class, 2>;
  V mul(const V& a, const V& b) const {
    return {a[0] * b[0] + n * a[1] * b[1], a[0] * b[1] + a[1] * b[0] + t * a[1] * b[1]};
  }
};

/// Z-lattice in Hermite form {(a, 0), (x1, g)}.
struct Lattice {
  mpz_class a, x1, g;

  static Lattice span(const std::vector<Ring::V>& vs) {
    mpz_class a = 0, g = 0, x1 = 0;
    for (const auto& v : vs) {
      if (v[1] == 0) {
        a = gcd(a, v[0]);
      } else if (g == 0) {
        g = v[1];
        x1 = v[0];
      } else {
        // (x1, g), v -> (nx, d) plus two vectors on the x axis
        mpz_class d, s, u;
        mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), g.get_mpz_t(), v[1].get_mpz_t());
        mpz_class nx = s * x1 + u * v[0];
        a = gcd(a, mpz_class(x1 - (g / d) * nx));
        a = gcd(a, mpz_class(v[0] - (v[1] / d) * nx));
        g = d;
        x1 = nx;
      }
    }
    if (g < 0) {
      g = -g;
      x1 = -x1;
    }
    if (a != 0) x1 = ((x1 % a) + a) % a;
    return {a, x1, g};
  }

  bool contains(const Ring::V& v) const {
    if (g == 0) return v[1] == 0 && (a == 0 ? v[0] == 0 : v[0] % a == 0);
    if (v[1] % g != 0) return false;
    mpz_class rest = v[0] - (v[1] / g) * x1;
    return a == 0 ? rest == 0 : rest % a == 0;
  }

  std::vector<Ring::V> basis() const { return {{a, 0}, {x1, g}}; }
};

/// The ideal P^k as a lattice, P = (p, r - w) (r < 0: P = (p)).
inline Lattice prime_power(const Ring& R, long p, long r, long k) {
  std::vector<Ring::V> gens{{p, 0}};
  if (r >= 0) gens.push_back({r, -1});
  Ring::V one{1, 0}, w{0, 1};
  Lattice L = Lattice::span({one, w});
  for (long i = 0; i < k; ++i) {
    std::vector<Ring::V> vs;
    for (const auto& b : L.basis())
      for (const auto& g : gens) {
        Ring::V prod = R.mul(b, g);
        vs.push_back(prod);
        vs.push_back(R.mul(prod, w));
      }
    L = Lattice::span(vs);
  }
  return L;
}

/// v_P of a nonzero integral element (x, y).
inline long integral_valuation(const Ring& R, const Ring::V& v, long p, long r) {
  long k = 0;
  while (prime_power(R, p, r, k + 1).contains(v)) ++k;
  return k;
}

/// Subgroup of F_p^x generated by gens, by closure.
inline std::set<long> subgroup(const std::vector<long>& gens, long p) {
  std::set<long> h{1};
  std::vector<long> frontier{1};
  while (!frontier.empty()) {
    std::vector<long> next;
    for (long a : frontier)
      for (long g : gens) {
        long c = static_cast<long>((static_cast<__int128>(a) * g) % p);
        c = (c + p) % p;
        if (h.insert(c).second) next.push_back(c);
      }
    frontier = next;
  }
  return h;
}

}  // namespace oracle
