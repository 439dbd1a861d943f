#ifndef DIVQ_SRING_HPP
#define DIVQ_SRING_HPP

#include "divq/ideals.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divq {

/// An S-unit whose ideal is a product of the prime generators' ideals with
/// exponents that are not multiples of the class orders.
class NotInLatticeError : public Error {
public:
  using Error::Error;
};

/// One entry of an S specification: a rational prime plus which prime above
/// it, tagged "r" (ramified), "s1"/"s2" (first/second split prime in root
/// order) or "i" (inert).
struct PrimeSpec {
  Integer p;
  std::string tag;
};

struct RingSpec {
  long d = -1;
  std::vector<PrimeSpec> primes;
};

/// "2r,5s1"
std::vector<PrimeSpec> parse_prime_list(std::string_view text);
/// "d=-1;S=2r,5s1"
RingSpec parse_ring_spec(std::string_view text);
std::string format_ring_spec(const RingSpec& spec);

/// The ring O_{K,S} together with everything derived from S once: class
/// number, class orders h_i, generators pi_i with pi_i O_K = P_i^{h_i}, and the
/// torsion generator zeta.
class SRing {
public:
  SRing(Field field, std::vector<PrimeIdeal> primes);
  static SRing from_spec(const RingSpec& spec);
  static SRing from_spec(std::string_view text) { return from_spec(parse_ring_spec(text)); }

  const Field& field() const { return field_; }
  const std::vector<PrimeIdeal>& primes() const { return primes_; }
  std::size_t rank() const { return primes_.size(); }
  long class_number() const { return class_number_; }
  const std::vector<long>& class_orders() const { return class_orders_; }
  const std::vector<KElem>& generators() const { return generators_; }
  const KElem& torsion_generator() const { return field_.torsion_generator(); }
  /// Number of units of O_K (2, 4 or 6).
  int unit_count() const { return field_.torsion_order(); }
  /// The distinct rational primes below S, ascending.
  const std::vector<Integer>& rational_primes() const { return rational_primes_; }
  const RingSpec& spec() const { return spec_; }

  std::optional<std::size_t> index_of(const PrimeIdeal& P) const;
  bool contains(const PrimeIdeal& P) const { return index_of(P).has_value(); }

private:
  Field field_;
  std::vector<PrimeIdeal> primes_;
  long class_number_;
  std::vector<long> class_orders_;
  std::vector<KElem> generators_;
  std::vector<Integer> rational_primes_;
  RingSpec spec_;
};

bool is_s_integer(const SRing& R, const KElem& x);

/// x | y in O_{K,S}. Only 0 is divisible by 0.
bool divides(const SRing& R, const KElem& x, const KElem& y);

bool is_s_unit(const SRing& R, const KElem& x);

/// x = zeta^torsion * prod pi_i^exponents[i].
struct UnitExponents {
  int torsion = 0;
  std::vector<long> exponents;
  friend bool operator==(const UnitExponents&, const UnitExponents&) = default;
};

UnitExponents unit_decompose(const SRing& R, const KElem& x);
KElem unit_from_exponents(const SRing& R, const UnitExponents& u);

/// Image of x in F_p^x for a degree-one prime P outside S, in {1, ..., p-1}.
Integer reduce_mod(const SRing& R, const PrimeIdeal& P, const KElem& x);

/// Residues of zeta and every pi_i at P.
std::vector<Integer> unit_image_generators(const SRing& R, const PrimeIdeal& P);

/// [F_p^x : image of O_{K,S}^x].
Integer unit_image_index(const SRing& R, const PrimeIdeal& P);

/// x = a / b with b in O_K a product of generators of P^{beta_P} over the
/// primes of S where x has a pole, beta_P the largest multiple of the class
/// order not exceeding -v_P(x).
struct ABDecomp {
  KElem a;
  KElem b;
  std::vector<long> beta;  // per prime of S, 0 where x has no pole
};

ABDecomp ab_decompose(const SRing& R, const KElem& x);

}  // namespace divq

#endif
