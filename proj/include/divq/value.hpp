#ifndef DIVQ_VALUE_HPP
#define DIVQ_VALUE_HPP

#include "divq/residue.hpp"
#include "divq/sring.hpp"

#include <map>
#include <optional>
#include <string>

namespace divq {

/// The formal symbol X that certificate values may mention, standing for the
/// S-unit base^exponent. base must be integral. The exponent is typically far
/// too large to ever form the power.
struct UnitSymbol {
  KElem base;
  Integer exponent;
};

/// A Laurent polynomial sum c_k X^k with coefficients in K. Constants are
/// ordinary field elements.
class Value {
public:
  Value() = default;
  Value(const KElem& c);  // NOLINT(google-explicit-constructor)
  Value(long c) : Value(KElem(c)) {}  // NOLINT(google-explicit-constructor)

  /// c * X^k
  static Value monomial(long k, const KElem& c = KElem(1));

  bool is_zero_poly() const { return terms_.empty(); }
  bool is_constant() const;
  KElem constant() const;  // throws unless is_constant()
  const std::map<long, KElem>& terms() const { return terms_; }
  long min_degree() const;
  long max_degree() const;

  Value add(const Field& F, const Value& o) const;
  Value sub(const Field& F, const Value& o) const;
  Value mul(const Field& F, const Value& o) const;
  Value scale(const Field& F, const Integer& c) const;

  friend bool operator==(const Value&, const Value&) = default;

private:
  std::map<long, KElem> terms_;
};

std::string format_value(const Value& v);

enum class Truth { no, yes, unknown };

inline Truth truth_of(bool b) { return b ? Truth::yes : Truth::no; }

/// Decides equalities and divisibilities between Values of one ring, given the
/// meaning of the symbol. Every "yes" and "no" is exact; "unknown" is returned
/// only when neither exact route applies and the symbol's power is too large
/// to expand.
class ValueOracle {
public:
  explicit ValueOracle(const SRing& R, std::optional<UnitSymbol> symbol = std::nullopt);

  const SRing& ring() const { return *R_; }
  const std::optional<UnitSymbol>& symbol() const { return symbol_; }

  /// Concrete value of v when the symbol is absent or small enough to expand.
  std::optional<KElem> materialize(const Value& v) const;

  /// Every coefficient is an S-integer (so the value is one too).
  bool in_ring(const Value& v) const;

  Truth is_zero(const Value& v) const;
  Truth equal(const Value& a, const Value& b) const;
  Truth divides(const Value& a, const Value& b) const;

  /// v_P(v(X)) >= n for a prime P outside S, decided modulo a power of p.
  bool valuation_at_least(const Value& v, const PrimeIdeal& P, long n) const;

  /// Exact v_P at any prime when one term strictly dominates or the value can
  /// be expanded; nullopt otherwise (and for zero).
  std::optional<Integer> valuation_of(const Value& v, const PrimeIdeal& P) const;

  /// Image of v in O_K / p^prec for a rational prime p not below S.
  ResidueRing::Elem reduce(const Value& v, const ResidueRing& ring) const;

private:
  bool symbol_expandable() const;
  KElem symbol_value() const;

  const SRing* R_;
  std::optional<UnitSymbol> symbol_;
};

}  // namespace divq

#endif
