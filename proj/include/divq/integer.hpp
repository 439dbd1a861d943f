#ifndef DIVQ_INTEGER_HPP
#define DIVQ_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace divq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

bool is_prime(const Integer& n);
Integer next_prime(const Integer& n);  // least prime > n

/// Prime factorization of |n|, n != 0. Trial division followed by Pollard-Brent.
std::map<Integer, int> factor_integer(const Integer& n);

std::vector<Integer> prime_factors(const Integer& n);

/// Largest k with p^k | n (n != 0).
long valuation(const Integer& n, const Integer& p);

Integer ipow(const Integer& base, unsigned long exp);
Integer isqrt(const Integer& n);       // floor
Integer ceil_sqrt(const Integer& n);   // ceil
bool is_square(const Integer& n, Integer* root = nullptr);

/// Least nonnegative residue.
Integer mod(const Integer& a, const Integer& m);
Integer powmod(const Integer& base, const Integer& exp, const Integer& m);
Integer invmod(const Integer& a, const Integer& m);

/// Square root of a modulo an odd prime p; throws if a is a non-residue.
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

/// Order of a in (Z/p)^x, p prime, p does not divide a.
Integer order_mod_prime(const Integer& a, const Integer& p);

Integer lcm(const Integer& a, const Integer& b);

std::int64_t to_i64(const Integer& n);  // throws if out of range

inline std::string to_string(const Integer& n) { return n.get_str(); }
std::string to_string(const Rational& q);

}  // namespace divq

#endif
