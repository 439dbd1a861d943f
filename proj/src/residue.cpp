#include "divq/residue.hpp"

namespace divq {

ResidueRing::ResidueRing(const Field& field, Integer p, long prec)
    : field_(&field), p_(std::move(p)), prec_(prec), m_(ipow(p_, static_cast<unsigned long>(prec))) {
  if (prec < 1) throw PreconditionError("ResidueRing: precision must be positive");
}

ResidueRing::Elem ResidueRing::reduce(const KElem& a) const {
  Integer inv = a.den == 1 ? Integer(1) : invmod(a.den, m_);
  return {mod(a.x * inv, m_), mod(a.y * inv, m_)};
}

ResidueRing::Elem ResidueRing::add(const Elem& a, const Elem& b) const {
  return {mod(a.x + b.x, m_), mod(a.y + b.y, m_)};
}

ResidueRing::Elem ResidueRing::sub(const Elem& a, const Elem& b) const {
  return {mod(a.x - b.x, m_), mod(a.y - b.y, m_)};
}

ResidueRing::Elem ResidueRing::mul(const Elem& a, const Elem& b) const {
  Integer yy = a.y * b.y;
  return {mod(a.x * b.x + field_->omega_sq_const() * yy, m_),
          mod(a.x * b.y + a.y * b.x + field_->trace() * yy, m_)};
}

ResidueRing::Elem ResidueRing::pow(const Elem& a, const Integer& e) const {
  if (e < 0) throw PreconditionError("ResidueRing::pow: negative exponent");
  Elem result{1, 0}, base = a;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, base);
    if (i + 1 < bits) base = mul(base, base);
  }
  return result;
}

bool ResidueRing::valuation_at_least(const Elem& a, const PrimeIdeal& P, long n) const {
  if (n <= 0) return true;
  if (n > static_cast<long>(P.e) * prec_)
    throw PreconditionError("valuation_at_least: precision too small");
  if (is_zero(a)) return true;
  return valuation(*field_, lift(a), P) >= n;
}

Integer unit_order_mod_prime_power(const Field& field, const KElem& g, const PrimeIdeal& P, long k) {
  if (!g.is_integral() || valuation(field, g, P) != 0)
    throw PreconditionError("unit_order_mod_prime_power: " + format_kelem(g) + " is not a unit mod " + P.label());
  long prec = (k + P.e - 1) / P.e;
  ResidueRing ring(field, P.p, prec);
  ResidueRing::Elem one{1, 0};
  ResidueRing::Elem h = ring.reduce(g);
  auto is_one = [&](const Integer& m) { return ring.valuation_at_least(ring.sub(ring.pow(h, m), one), P, k); };
  // |(O_K/P^k)^x| = (q - 1) q^(k-1)
  Integer n = (P.q - 1) * ipow(P.q, static_cast<unsigned long>(k - 1));
  std::map<Integer, int> fac = factor_integer(P.q - 1);
  if (k > 1) fac[P.p] += P.f * static_cast<int>(k - 1);
  for (auto& [l, e] : fac) {
    for (int i = 0; i < e && is_one(n / l); ++i) n /= l;
  }
  if (!is_one(n)) throw Error("unit_order_mod_prime_power: group order check failed");
  return n;
}

}  // namespace divq
