#include "divq/magnitude.hpp"

#include <map>

namespace divq {

namespace {

constexpr unsigned long kDirectBits = 1ul << 20;

std::size_t bitlen(const Integer& n) { return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2); }

// [lo, hi] with lo <= log2(n) <= hi, n >= 1, width about 1/k.
std::pair<Rational, Rational> log2_bounds(const Integer& n, unsigned long k) {
  Integer nk = ipow(n, k);
  Rational lo(Integer(static_cast<unsigned long>(bitlen(nk) - 1)), Integer(k));
  Rational hi(Integer(static_cast<unsigned long>(bitlen(nk))), Integer(k));
  lo.canonicalize();
  hi.canonicalize();
  if (n == 1) return {Rational(0), Rational(0)};
  return {lo, hi};
}

}  // namespace

PowerProduct& PowerProduct::operator*=(const PowerProduct& o) {
  factors.insert(factors.end(), o.factors.begin(), o.factors.end());
  return *this;
}

PowerProduct PowerProduct::squared() const {
  PowerProduct r = *this;
  for (auto& [b, e] : r.factors) e *= 2;
  return r;
}

int compare(const PowerProduct& P_in, const Rational& M) {
  std::map<Integer, Integer> merged;
  for (auto& [b, e] : P_in.factors) {
    if (b < 1) throw PreconditionError("PowerProduct bases must be >= 1");
    if (b > 1) merged[b] += e;
  }
  PowerProduct P;
  for (auto& [b, e] : merged)
    if (e != 0) P.factors.emplace_back(b, e);
  if (M <= 0) return 1;
  Integer total = 0;
  for (auto& [b, e] : P.factors) total += abs(e) * static_cast<unsigned long>(bitlen(b));
  if (total <= kDirectBits) {
    Rational v = 1;
    for (auto& [b, e] : P.factors) {
      Integer pw = ipow(b, Integer(abs(e)).get_ui());
      v *= e >= 0 ? Rational(pw) : Rational(Integer(1), pw);
    }
    v.canonicalize();
    return cmp(v, M) < 0 ? -1 : cmp(v, M) > 0 ? 1 : 0;
  }
  // log2 M within [bitlen(num) - 1 - bitlen(den), bitlen(num) - bitlen(den) + 1]
  Rational mlo(Integer(static_cast<long>(bitlen(M.get_num())) - 1 - static_cast<long>(bitlen(M.get_den()))));
  Rational mhi(Integer(static_cast<long>(bitlen(M.get_num())) - static_cast<long>(bitlen(M.get_den())) + 1));
  for (unsigned long k = 64; k <= (1ul << 24); k *= 64) {
    Rational lo = 0, hi = 0;
    for (auto& [b, e] : P.factors) {
      auto [l, h] = log2_bounds(b, k);
      if (e >= 0) {
        lo += l * e;
        hi += h * e;
      } else {
        lo += h * e;
        hi += l * e;
      }
    }
    if (lo > mhi) return 1;
    if (hi < mlo) return -1;
  }
  throw Error("compare: magnitudes too close to separate");
}

int compare(const PowerProduct& P, const PowerProduct& Q) {
  PowerProduct ratio = P;
  for (auto& [b, e] : Q.factors) ratio.factors.emplace_back(b, -e);
  return compare(ratio, Rational(1));
}

}  // namespace divq
