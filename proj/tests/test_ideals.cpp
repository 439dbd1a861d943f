#include "divq/ideals.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace divq;

TEST_CASE("class numbers against both oracles") {
  for (long D : oracle::fundamental_discriminants(400)) {
    long h = class_number(D);
    CHECK_MESSAGE(h == oracle::forms_class_number(D), "D = " << D);
    CHECK_MESSAGE(h == oracle::dirichlet_class_number(D), "D = " << D);
  }
  CHECK(class_number(-4) == 1);
  CHECK(class_number(-3) == 1);
  CHECK(class_number(-20) == 2);
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-56) == 4);
}

TEST_CASE("reduced forms are reduced and primitive") {
  for (auto [a, b, c] : reduced_forms(-84)) {
    CHECK(b * b - 4 * a * c == -84);
    CHECK(std::abs(b) <= a);
    CHECK(a <= c);
  }
  CHECK(reduced_forms(-84).size() == 4);
}

TEST_CASE("splitting of small primes") {
  Field gi(-1);
  auto two = split_prime(gi, Integer(2));
  REQUIRE(two.size() == 1);
  CHECK(two[0].kind == Splitting::ramified);
  CHECK(two[0].e == 2);
  CHECK(two[0].label() == "(2, 1)");
  auto three = split_prime(gi, Integer(3));
  REQUIRE(three.size() == 1);
  CHECK(three[0].kind == Splitting::inert);
  CHECK(three[0].q == 9);
  CHECK(three[0].label() == "(3)");
  auto five = split_prime(gi, Integer(5));
  REQUIRE(five.size() == 2);
  CHECK(five[0].label() == "(5, 2)");
  CHECK(five[1].label() == "(5, 3)");
  CHECK(conjugate(gi, five[0]) == five[1]);
  CHECK(conjugate(gi, two[0]) == two[0]);
}

TEST_CASE("valuations agree with the lattice oracle") {
  std::mt19937_64 rng(17);
  for (long d : {-1L, -5L, -3L, -6L}) {
    Field F(d);
    oracle::Ring OR(d);
    std::vector<PrimeIdeal> primes;
    for (long p : {2L, 3L, 5L, 7L})
      for (const PrimeIdeal& P : split_prime(F, Integer(p))) primes.push_back(P);
    for (int i = 0; i < 60; ++i) {
      long x = static_cast<long>(rng() % 401) - 200, y = static_cast<long>(rng() % 401) - 200;
      if (x == 0 && y == 0) continue;
      for (const PrimeIdeal& P : primes) {
        long r = P.kind == Splitting::inert ? -1 : P.r.get_si();
        long expect = oracle::integral_valuation(OR, {x, y}, P.p.get_si(), r);
        CHECK_MESSAGE(valuation(F, KElem(x, y), P) == expect, "d=" << d << " " << x << "+" << y << "w at " << P.label());
      }
    }
  }
}

TEST_CASE("product formula: norm equals the product of prime norms") {
  std::mt19937_64 rng(23);
  for (long d : {-1L, -5L, -3L, -14L}) {
    Field F(d);
    for (int i = 0; i < 200; ++i) {
      auto c = [&] { return Integer(static_cast<long>(rng() % 2001) - 1000); };
      KElem a(c(), c(), Integer(static_cast<long>(rng() % 30) + 1));
      if (a.is_zero()) continue;
      Rational prod = 1;
      for (auto& [P, k] : factor_element(F, a)) {
        Integer qk = ipow(P.q, static_cast<unsigned long>(k < 0 ? -k : k));
        prod *= k < 0 ? Rational(1, qk) : Rational(qk);
      }
      prod.canonicalize();
      CHECK(prod == F.norm(a));
    }
  }
}

TEST_CASE("factorization examples") {
  Field gi(-1);
  CHECK(format_factorization(factor_element(gi, KElem(2))) == "(2, 1)^2");
  CHECK(format_factorization(factor_element(gi, KElem(1, 1))) == "(2, 1)^1");
  CHECK(format_factorization(factor_element(gi, KElem(0, 1))).empty());
  CHECK(format_factorization(factor_element(gi, KElem(1, 0, 5))) == "(5, 2)^-1 (5, 3)^-1");
}

TEST_CASE("principal powers and class orders") {
  Field f5(-5);
  PrimeIdeal P2 = split_prime(f5, Integer(2))[0];
  CHECK_FALSE(is_principal(f5, P2, 1).has_value());
  auto g = is_principal(f5, P2, 2);
  REQUIRE(g.has_value());
  CHECK(f5.norm(*g) == 4);
  CHECK(valuation(f5, *g, P2) == 2);
  CHECK(class_order(f5, P2) == 2);
  Field gi(-1);
  PrimeIdeal P5 = split_prime(gi, Integer(5))[0];
  auto g5 = is_principal(gi, P5, 1);
  REQUIRE(g5.has_value());
  CHECK(valuation(gi, *g5, P5) == 1);
  CHECK(valuation(gi, *g5, conjugate(gi, P5)) == 0);
  CHECK(class_order(gi, P5) == 1);
}
