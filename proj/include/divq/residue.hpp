#ifndef DIVQ_RESIDUE_HPP
#define DIVQ_RESIDUE_HPP

#include "divq/ideals.hpp"

namespace divq {

/// Arithmetic in O_K / p^prec O_K. Elements are coordinate pairs reduced into
/// [0, p^prec). Used to decide congruences involving huge powers of a unit
/// without ever forming the power.
class ResidueRing {
public:
  struct Elem {
    Integer x = 0;
    Integer y = 0;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  ResidueRing(const Field& field, Integer p, long prec);

  const Integer& modulus() const { return m_; }
  long precision() const { return prec_; }

  /// Image of an element whose denominator is prime to p.
  Elem reduce(const KElem& a) const;
  KElem lift(const Elem& a) const { return KElem(a.x, a.y, 1); }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, const Integer& e) const;  // e >= 0
  bool is_zero(const Elem& a) const { return a.x == 0 && a.y == 0; }

  /// True iff v_P(a) >= n for any element congruent to a, provided
  /// n <= e(P) * prec.
  bool valuation_at_least(const Elem& a, const PrimeIdeal& P, long n) const;

private:
  const Field* field_;
  Integer p_;
  long prec_;
  Integer m_;
};

/// Order of the unit g in (O_K / P^k)^x. g must be integral with v_P(g) = 0.
Integer unit_order_mod_prime_power(const Field& field, const KElem& g, const PrimeIdeal& P, long k);

}  // namespace divq

#endif
