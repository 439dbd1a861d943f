#include "divq/integer.hpp"

#include <doctest.h>

#include <random>

using namespace divq;

namespace {
bool trial_prime(long n) {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}
}  // namespace

TEST_CASE("primality agrees with trial division") {
  for (long n = -5; n < 3000; ++n) CHECK(is_prime(Integer(n)) == trial_prime(n));
  CHECK(next_prime(Integer(4)) == 5);
  CHECK(next_prime(Integer(7)) == 11);
  CHECK(next_prime(Integer(8)) == 11);
}

TEST_CASE("factor_integer reassembles") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Integer n = Integer(static_cast<long>(rng() % 1000000)) + 1;
    Integer back = 1;
    for (auto& [p, k] : factor_integer(n)) {
      CHECK(is_prime(p));
      back *= ipow(p, k);
    }
    CHECK(back == n);
  }
  CHECK(valuation(Integer(48), Integer(2)) == 4);
  CHECK(valuation(Integer(-45), Integer(3)) == 2);
}

TEST_CASE("square roots") {
  for (long n = 0; n < 2000; ++n) {
    Integer s = isqrt(Integer(n));
    CHECK(s * s <= n);
    CHECK((s + 1) * (s + 1) > n);
    Integer c = ceil_sqrt(Integer(n));
    CHECK(c * c >= n);
    Integer r;
    CHECK(is_square(Integer(n), &r) == (s * s == n));
  }
}

TEST_CASE("modular helpers") {
  CHECK(mod(Integer(-7), Integer(5)) == 3);
  CHECK(powmod(Integer(3), Integer(40), Integer(41)) == 1);
  for (long p : {3L, 5L, 13L, 41L, 101L}) {
    for (long a = 1; a < p; ++a) {
      CHECK(mod(invmod(Integer(a), Integer(p)) * a, Integer(p)) == 1);
      Integer o = order_mod_prime(Integer(a), Integer(p));
      CHECK(powmod(Integer(a), o, Integer(p)) == 1);
      CHECK((p - 1) % o.get_si() == 0);
      for (long k = 1; k < o.get_si(); ++k) CHECK(powmod(Integer(a), Integer(k), Integer(p)) != 1);
      if (powmod(Integer(a), Integer((p - 1) / 2), Integer(p)) == 1) {
        Integer s = sqrt_mod_prime(Integer(a), Integer(p));
        CHECK(mod(s * s - a, Integer(p)) == 0);
      }
    }
  }
  CHECK(lcm(Integer(4), Integer(6)) == 12);
}

TEST_CASE("to_i64 range") {
  CHECK(to_i64(Integer(-12)) == -12);
  CHECK_THROWS(to_i64(ipow(Integer(2), 80)));
}
