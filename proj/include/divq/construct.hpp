#ifndef DIVQ_CONSTRUCT_HPP
#define DIVQ_CONSTRUCT_HPP

#include "divq/lform.hpp"
#include "divq/magnitude.hpp"

#include <random>
#include <string>
#include <vector>

namespace divq {

/// p, b with p*x + b never an S-unit, certified by a degree-one prime P above
/// p where the S-units reduce into a proper subgroup of F_p^x.
struct LenstraPair {
  Integer p;
  Integer b;
  PrimeIdeal prime;
  Integer index;  // [F_p^x : image of the S-units]
};

/// Throws Error when no pair exists with p <= scan_bound.
LenstraPair find_lenstra_pair(const SRing& R, long scan_bound);

struct Constants {
  LenstraPair lenstra;
  Rational c_sq;  // C^2 = prod_{P in S} q_P^{-h_K}
  Integer q;      // least prime > 4/C^2 not below S
  std::vector<Integer> q_list;  // least w + 1 primes not below S
  long small_box = 4;   // I = {0..4}^k
  long large_box = 6;   // J = {0..6}^k
  long exponent_17 = 17;
  long exponent_34 = 34;
};

Constants compute_constants(const SRing& R, long scan_bound = 2000);

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Re-derives every documented property of the constants from scratch.
std::vector<NamedCheck> check_constants(const SRing& R, const Constants& C);

/// All multi-indices in {0..box}^k, lexicographic.
std::vector<std::vector<long>> multi_indices(std::size_t k, long box);

/// prod p_i^{alpha_i} over the rational primes below S.
Integer p_power(const SRing& R, const std::vector<long>& alpha);

// Formula builders. Every builder that introduces bound variables takes a
// prefix so that nested copies never share names.

/// exists A, B, x (y | A and p x + b | B and A + B = 1)
Formula neq_formula(const Constants& C, const Term& y, const std::string& prefix);
Formula build_neq(const SRing& R, const Constants& C);

/// x | 1 and y | 1 and z | 1 and, for alpha in I and each q_i,
/// p^alpha x + q_i | p^alpha z + q_i y and back.
Formula produnits_formula(const SRing& R, const Constants& C, const Term& x, const Term& y, const Term& z);
Formula build_produnits(const SRing& R, const Constants& C);

/// u is a unit that is not a root of unity.
Formula phi_inf_formula(const SRing& R, const Constants& C, const Term& u, const std::string& prefix);
Formula build_phi_inf(const SRing& R, const Constants& C);

/// y = x^2 over O_{K,S}. Besides the displayed cases, Q(i) gets one more
/// equational case, x = +-sqrt(-1) p^{-alpha}.
Formula build_sq(const SRing& R, const Constants& C);

// Certificates.

struct NeqWitness {
  Value a, b;
  Integer x;
  Integer ell;  // p x + b
  Value r;      // a = r * y
};

/// y must be nonzero; with a symbol, y may mention it (its coefficients must
/// then be S-integers).
NeqWitness witness_neq(const SRing& R, const Constants& C, const Value& y,
                       const std::optional<UnitSymbol>& symbol = std::nullopt);
void add_neq_witness(const NeqWitness& w, const std::string& prefix, Witness& out);

/// Bound values for phi_inf_formula at u.
Witness witness_phi_inf(const SRing& R, const Constants& C, const Value& u, const std::optional<UnitSymbol>& symbol,
                        const std::string& prefix);

/// pi_1^t with every modulus dividing pi_1^t - 1; t = 1 for no moduli.
UnitSymbol witness_inf_unit(const SRing& R, const std::vector<KElem>& moduli);

/// The moduli p^a x +- 1, p^2a y +- 1 (a in J) and q, zeros dropped.
std::vector<KElem> sq_moduli(const SRing& R, const Constants& C, const KElem& x, const KElem& y);

/// p^{2 alpha} x^2 = +-1 for some alpha in J: x = +-p^{-alpha}, or
/// x = +-sqrt(-1) p^{-alpha} in Q(i). These are the x where some modulus
/// of sq_moduli vanishes; build_sq decides them by equations alone.
bool is_cleared_power(const SRing& R, const Constants& C, const KElem& x);

struct SqWitness {
  UnitSymbol eps;
  Witness witness;
};

SqWitness witness_sq(const SRing& R, const Constants& C, const KElem& x);

std::vector<long> select_beta(const SRing& R, const KElem& x, const KElem& y, const KElem& z);

/// eps1_val[i] = v_{P_i}(eps_1) for the primes of S in order.
std::vector<long> select_alpha_claimA(const SRing& R, const KElem& x, const KElem& y,
                                      const std::vector<Integer>& eps1_val);

struct LemmaReport {
  bool hypotheses_hold = true;
  std::vector<long> alpha;
  std::vector<NamedCheck> hypotheses;
  std::vector<NamedCheck> conclusions;

  bool passed() const;
};

/// Checks the valuation, height and pole inequalities for X = p^alpha x, Y = p^{2 alpha} y and
/// eps (y defaults to x^2).
LemmaReport lemma_checks(const SRing& R, const Constants& C, const KElem& x, const UnitSymbol& eps,
                         const std::optional<KElem>& y = std::nullopt);

// Seeded samplers.

/// (m + n w) / prod p_i^{a_i} with |m|, |n| <= height, a_i in 0..den_box.
KElem random_element(const SRing& R, std::mt19937_64& rng, long height, long den_box);
/// zeta^j prod pi_i^{a_i}, |a_i| <= box.
KElem random_unit(const SRing& R, std::mt19937_64& rng, long box);

}  // namespace divq

#endif
