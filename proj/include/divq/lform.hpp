#ifndef DIVQ_LFORM_HPP
#define DIVQ_LFORM_HPP

#include "divq/value.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace divq {

/// Syntax error in formula text; position() is a byte offset.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

/// sum c_i x_i + c_0 with integer coefficients; zero coefficients are never stored.
struct Term {
  std::map<std::string, Integer> coeffs;
  Integer constant = 0;

  Term() = default;
  Term(long c) : constant(c) {}  // NOLINT(google-explicit-constructor)
  Term(const Integer& c) : constant(c) {}  // NOLINT(google-explicit-constructor)
  static Term var(const std::string& name, const Integer& c = 1);

  Term& operator+=(const Term& o);
  Term& operator*=(const Integer& c);
  friend Term operator+(Term a, const Term& b) { return a += b; }
  friend Term operator-(Term a, const Term& b) {
    Term nb = b;
    nb *= -1;
    return a += nb;
  }
  friend Term operator*(const Integer& c, Term a) { return a *= c; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { eq, div, conj, disj, exists };

/// Positive-existential formula of the divisibility language. There is no
/// negation node. Builders keep every bound variable name unique across the
/// formula and distinct from the free ones.
struct Formula {
  FormulaKind kind = FormulaKind::conj;
  Term lhs, rhs;                  // eq, div
  std::vector<Formula> children;  // conj, disj; exists has exactly one
  std::vector<std::string> vars;  // exists

  static Formula eq(Term a, Term b);
  static Formula div(Term a, Term b);
  static Formula all(std::vector<Formula> parts);
  static Formula any(std::vector<Formula> parts);
  static Formula exists(std::vector<std::string> vars, Formula body);

  friend bool operator==(const Formula&, const Formula&) = default;
};

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

std::set<std::string> free_variables(const Formula& f);
/// Binder order (pre-order). Throws on a name bound twice or bound and free.
std::vector<std::string> bound_variables(const Formula& f);
std::size_t atom_count(const Formula& f);

using Assignment = std::map<std::string, KElem>;

/// Values for the existentially bound variables, possibly mentioning the
/// unit symbol.
struct Witness {
  std::map<std::string, Value> values;
  std::optional<UnitSymbol> symbol;
};

/// Truth of f with free variables from A and bound ones from W. Bound
/// variables may be left out of W when the rest of the formula decides it.
/// Throws when a free variable is missing, a value lies outside O_{K,S}, or
/// the result depends on a missing witness or an undecidable atom.
bool eval_closed(const SRing& R, const Formula& f, const Assignment& A, const Witness& W = {});

/// Three-valued evaluation; atoms with an unassigned variable are unknown.
Truth eval_partial(const ValueOracle& oracle, const Formula& f, const std::map<std::string, Value>& env);

Value eval_term(const Field& F, const Term& t, const std::map<std::string, Value>& env);

enum class VarHint { any, unit };

/// Candidates for one bounded variable, in enumeration order.
/// unit: zeta^j prod pi_i^{a_i}, j ascending, then a ascending lexicographically with |a_i| <= B.
/// any: (m + n w)/p^alpha, alpha ascending lexicographically in {0..B}^k, then m, then n
/// in [-B, B]; repeated values keep their first position.
std::vector<KElem> search_candidates(const SRing& R, VarHint hint, long bound);

/// First witness (lexicographic in binder order, each variable in candidate
/// order) that makes f true under A, or nullopt.
std::optional<Assignment> search_exists(const SRing& R, const Formula& f, const Assignment& A, long bound,
                                        const std::map<std::string, VarHint>& hints = {});

}  // namespace divq

#endif
