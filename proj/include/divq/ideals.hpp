#ifndef DIVQ_IDEALS_HPP
#define DIVQ_IDEALS_HPP

#include "divq/qfield.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace divq {

enum class Splitting { split, inert, ramified };

/// A prime ideal P = (p, r - w) of O_K, or P = (p) when p is inert.
/// Identity is the pair (p, r); r = -1 marks the inert case.
struct PrimeIdeal {
  Integer p;
  int e = 1;
  int f = 1;
  Integer q;  // residue field size p^f
  Integer r;  // root of the minimal polynomial of w mod p, or -1
  Splitting kind = Splitting::split;

  KElem gen2() const;
  std::string label() const;  // "(p, r)" or "(p)"

  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.p == b.p && a.r == b.r; }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p < b.p || (a.p == b.p && a.r < b.r);
  }
};

/// The primes above p, ordered by their root r (split primes come out as
/// "first" and "second" in that order).
std::vector<PrimeIdeal> split_prime(const Field& field, const Integer& p);

/// The other prime above the same rational prime, or P itself.
PrimeIdeal conjugate(const Field& field, const PrimeIdeal& P);

/// v_P(a) for a != 0.
long valuation(const Field& field, const KElem& a, const PrimeIdeal& P);

/// Exponents of the fractional ideal aO_K, keyed by prime in (p, r) order.
using Factorization = std::map<PrimeIdeal, long>;

Factorization factor_element(const Field& field, const KElem& a);

/// Sorted "(p, r)^k" list, e.g. "(2, 1)^2 (5, 3)^-1". Empty string for units of O_K.
std::string format_factorization(const Factorization& fac);

/// Reduced primitive forms (a, b, c) of discriminant disc < 0.
std::vector<std::array<long, 3>> reduced_forms(long disc);

long class_number(long disc);
inline long class_number(const Field& field) { return class_number(field.disc()); }

/// A generator g of P^k, chosen as the lexicographically largest (x, y) among
/// the integral elements of norm q^k whose ideal is exactly P^k.
std::optional<KElem> is_principal(const Field& field, const PrimeIdeal& P, long k);

/// Least k >= 1 with P^k principal. It divides the class number, so only
/// divisors of h are tried.
long class_order(const Field& field, const PrimeIdeal& P, long class_num);
inline long class_order(const Field& field, const PrimeIdeal& P) {
  return class_order(field, P, class_number(field));
}

}  // namespace divq

#endif
