#include "divq/value.hpp"

#include <sstream>

namespace divq {

namespace {

// Expanding the symbol is allowed while base^exponent stays below this many bits.
constexpr unsigned long kExpandBits = 1ul << 16;

void put(std::map<long, KElem>& terms, long k, const KElem& c) {
  if (c.is_zero()) terms.erase(k);
  else terms[k] = c;
}

}  // namespace

Value::Value(const KElem& c) {
  if (!c.is_zero()) terms_[0] = c;
}

Value Value::monomial(long k, const KElem& c) {
  Value v;
  put(v.terms_, k, c);
  return v;
}

bool Value::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

KElem Value::constant() const {
  if (!is_constant()) throw Error("value " + format_value(*this) + " is not a constant");
  return terms_.empty() ? KElem(0) : terms_.begin()->second;
}

long Value::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
long Value::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Value Value::add(const Field& F, const Value& o) const {
  Value r = *this;
  for (auto& [k, c] : o.terms_) {
    auto it = r.terms_.find(k);
    put(r.terms_, k, it == r.terms_.end() ? c : F.add(it->second, c));
  }
  return r;
}

Value Value::sub(const Field& F, const Value& o) const { return add(F, o.scale(F, -1)); }

Value Value::mul(const Field& F, const Value& o) const {
  Value r;
  for (auto& [i, a] : terms_)
    for (auto& [j, b] : o.terms_) {
      auto it = r.terms_.find(i + j);
      KElem ab = F.mul(a, b);
      put(r.terms_, i + j, it == r.terms_.end() ? ab : F.add(it->second, ab));
    }
  return r;
}

Value Value::scale(const Field& F, const Integer& c) const {
  Value r;
  for (auto& [k, a] : terms_) put(r.terms_, k, F.scale(a, c));
  return r;
}

std::string format_value(const Value& v) {
  if (v.is_zero_poly()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "[" << format_kelem(it->second) << "]";
    if (it->first != 0) os << "*X^" << it->first;
  }
  return os.str();
}

ValueOracle::ValueOracle(const SRing& R, std::optional<UnitSymbol> symbol) : R_(&R), symbol_(std::move(symbol)) {
  if (symbol_) {
    if (!symbol_->base.is_integral()) throw PreconditionError("unit symbol base must be integral");
    if (!is_s_unit(R, symbol_->base)) throw PreconditionError("unit symbol base must be an S-unit");
    if (symbol_->exponent < 0) throw PreconditionError("unit symbol exponent must be nonnegative");
  }
}

bool ValueOracle::symbol_expandable() const {
  if (!symbol_) return false;
  const Field& F = R_->field();
  if (F.is_torsion(symbol_->base)) return true;
  Integer n = F.norm_numerator(symbol_->base);
  Integer bits = symbol_->exponent * static_cast<unsigned long>(mpz_sizeinbase(n.get_mpz_t(), 2));
  return bits <= kExpandBits;
}

KElem ValueOracle::symbol_value() const {
  const Field& F = R_->field();
  if (F.is_torsion(symbol_->base)) {
    Integer t = mod(symbol_->exponent, F.torsion_order());
    return F.pow(symbol_->base, t.get_si());
  }
  return F.pow(symbol_->base, to_i64(symbol_->exponent));
}

std::optional<KElem> ValueOracle::materialize(const Value& v) const {
  if (v.is_constant()) return v.constant();
  if (!symbol_expandable()) return std::nullopt;
  const Field& F = R_->field();
  KElem eps = symbol_value();
  KElem out(0);
  for (auto& [k, c] : v.terms()) out = F.add(out, F.mul(c, F.pow(eps, k)));
  return out;
}

bool ValueOracle::in_ring(const Value& v) const {
  for (auto& [k, c] : v.terms())
    if (!is_s_integer(*R_, c)) return false;
  if (!v.is_constant() && !symbol_) throw Error("value mentions the unit symbol but none is bound");
  return true;
}

Truth ValueOracle::is_zero(const Value& v) const {
  if (v.is_zero_poly()) return Truth::yes;
  if (v.is_constant()) return Truth::no;
  if (!symbol_) throw Error("value mentions the unit symbol but none is bound");
  if (v.terms().size() == 1) return Truth::no;
  if (symbol_expandable()) return truth_of(materialize(v)->is_zero());
  // Cauchy: every root z of sum c_k X^k has |z| < 1 + max |c_k / c_top|, and
  // (1 + M)^2 <= 4 max(1, M^2). |X|^2 = N(base)^t >= 2^t.
  const Field& F = R_->field();
  Rational top = F.norm(v.terms().rbegin()->second);
  Rational m2 = 1;
  for (auto& [k, c] : v.terms()) {
    Rational r = F.norm(c) / top;
    if (r > m2) m2 = r;
  }
  Integer bound = 4 * m2.get_num() / m2.get_den() + 4;
  if (symbol_->exponent > Integer(static_cast<unsigned long>(mpz_sizeinbase(bound.get_mpz_t(), 2)))) return Truth::no;
  return Truth::unknown;
}

Truth ValueOracle::equal(const Value& a, const Value& b) const { return is_zero(a.sub(R_->field(), b)); }

ResidueRing::Elem ValueOracle::reduce(const Value& v, const ResidueRing& ring) const {
  const Field& F = R_->field();
  ResidueRing::Elem out{0, 0};
  if (v.is_zero_poly()) return out;
  ResidueRing::Elem eps{1, 0}, eps_inv{1, 0};
  if (!v.is_constant()) {
    if (!symbol_) throw Error("value mentions the unit symbol but none is bound");
    eps = ring.pow(ring.reduce(symbol_->base), symbol_->exponent);
    if (v.min_degree() < 0) {
      // x^-1 = conj(x) / N(x)
      KElem lifted = ring.lift(eps);
      Integer n = mod(F.norm_numerator(lifted), ring.modulus());
      eps_inv = ring.reduce(KElem(F.conj(lifted).x * invmod(n, ring.modulus()),
                                  F.conj(lifted).y * invmod(n, ring.modulus()), 1));
    }
  }
  for (auto& [k, c] : v.terms()) {
    ResidueRing::Elem term = ring.reduce(c);
    if (k > 0) term = ring.mul(term, ring.pow(eps, k));
    if (k < 0) term = ring.mul(term, ring.pow(eps_inv, -k));
    out = ring.add(out, term);
  }
  return out;
}

bool ValueOracle::valuation_at_least(const Value& v, const PrimeIdeal& P, long n) const {
  if (R_->contains(P)) throw PreconditionError("valuation_at_least: prime lies in S");
  if (n <= 0 || v.is_zero_poly()) return true;
  const Field& F = R_->field();
  if (v.is_constant()) return valuation(F, v.constant(), P) >= n;
  if (!symbol_) throw Error("value mentions the unit symbol but none is bound");
  // Clear denominators with an integer D and shift by a power of X (a unit at
  // P), then compare v_P(D X^m v) with n + v_P(D) modulo a power of p.
  Integer D = 1;
  for (auto& [k, c] : v.terms()) D = lcm(D, c.den);
  long target = n + (D == 1 ? 0 : valuation(D, P.p) * P.e);
  long prec = (target + P.e - 1) / P.e;
  ResidueRing ring(F, P.p, prec);
  ResidueRing::Elem eps = ring.pow(ring.reduce(symbol_->base), symbol_->exponent);
  ResidueRing::Elem acc{0, 0};
  long shift = -v.min_degree();
  for (auto& [k, c] : v.terms()) {
    KElem cd = F.scale(c, D);
    ResidueRing::Elem term = ring.mul(ring.reduce(cd), ring.pow(eps, k + shift));
    acc = ring.add(acc, term);
  }
  return ring.valuation_at_least(acc, P, target);
}

std::optional<Integer> ValueOracle::valuation_of(const Value& v, const PrimeIdeal& P) const {
  if (v.is_zero_poly()) return std::nullopt;
  const Field& F = R_->field();
  if (v.is_constant()) return Integer(valuation(F, v.constant(), P));
  if (!symbol_) throw Error("value mentions the unit symbol but none is bound");
  Integer vx = symbol_->exponent * valuation(F, symbol_->base, P);
  std::optional<Integer> best;
  int hits = 0;
  for (auto& [k, c] : v.terms()) {
    Integer t = valuation(F, c, P) + vx * k;
    if (!best || t < *best) {
      best = t;
      hits = 1;
    } else if (t == *best) {
      ++hits;
    }
  }
  if (hits == 1) return best;
  if (auto m = materialize(v)) {
    if (m->is_zero()) return std::nullopt;
    return Integer(valuation(F, *m, P));
  }
  return std::nullopt;
}

namespace {

// Exact division of polynomials with coefficients in K, both with a nonzero
// constant term once shifted. Returns nullopt on a nonzero remainder.
std::optional<std::map<long, KElem>> poly_divide(const Field& F, std::map<long, KElem> num,
                                                 const std::map<long, KElem>& den) {
  const long dtop = den.rbegin()->first;
  const KElem& lead = den.rbegin()->second;
  std::map<long, KElem> q;
  while (!num.empty() && num.rbegin()->first >= dtop) {
    long k = num.rbegin()->first - dtop;
    KElem c = F.div(num.rbegin()->second, lead);
    q[k] = c;
    for (auto& [j, d] : den) {
      auto it = num.find(j + k);
      KElem prod = F.mul(c, d);
      KElem nv = it == num.end() ? F.neg(prod) : F.sub(it->second, prod);
      if (nv.is_zero()) num.erase(j + k);
      else num[j + k] = nv;
    }
  }
  if (!num.empty()) return std::nullopt;
  return q;
}

std::map<long, KElem> shifted(const Value& v) {
  std::map<long, KElem> out;
  long m = v.min_degree();
  for (auto& [k, c] : v.terms()) out[k - m] = c;
  return out;
}

}  // namespace

Truth ValueOracle::divides(const Value& a, const Value& b) const {
  Truth zb = is_zero(b);
  if (zb != Truth::no) return zb;
  Truth za = is_zero(a);
  if (za == Truth::yes) return Truth::no;
  if (za == Truth::unknown) return Truth::unknown;
  const Field& F = R_->field();
  if (a.is_constant() && b.is_constant()) return truth_of(divq::divides(*R_, a.constant(), b.constant()));
  if (a.is_constant()) {
    for (auto& [P, k] : factor_element(F, a.constant())) {
      if (k <= 0 || R_->contains(P)) continue;
      if (!valuation_at_least(b, P, k)) return Truth::no;
    }
    return Truth::yes;
  }
  if (auto q = poly_divide(F, shifted(b), shifted(a))) {
    bool integral = true;
    for (auto& [k, c] : *q) integral = integral && is_s_integer(*R_, c);
    if (integral) return Truth::yes;
  }
  auto ma = materialize(a), mb = materialize(b);
  if (ma && mb) return truth_of(divq::divides(*R_, *ma, *mb));
  return Truth::unknown;
}

}  // namespace divq
