#include "divq/lform.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace divq {

Term Term::var(const std::string& name, const Integer& c) {
  Term t;
  if (c != 0) t.coeffs[name] = c;
  return t;
}

Term& Term::operator+=(const Term& o) {
  for (auto& [v, c] : o.coeffs) {
    Integer s = coeffs[v] + c;
    if (s == 0) coeffs.erase(v);
    else coeffs[v] = s;
  }
  constant += o.constant;
  return *this;
}

Term& Term::operator*=(const Integer& c) {
  if (c == 0) {
    coeffs.clear();
    constant = 0;
    return *this;
  }
  for (auto& [v, k] : coeffs) k *= c;
  constant *= c;
  return *this;
}

Formula Formula::eq(Term a, Term b) {
  Formula f;
  f.kind = FormulaKind::eq;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return f;
}

Formula Formula::div(Term a, Term b) {
  Formula f;
  f.kind = FormulaKind::div;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return f;
}

Formula Formula::all(std::vector<Formula> parts) {
  Formula f;
  f.kind = FormulaKind::conj;
  f.children = std::move(parts);
  return f;
}

Formula Formula::any(std::vector<Formula> parts) {
  Formula f;
  f.kind = FormulaKind::disj;
  f.children = std::move(parts);
  return f;
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  Formula f;
  f.kind = FormulaKind::exists;
  f.vars = std::move(vars);
  f.children.push_back(std::move(body));
  return f;
}

// ---------------------------------------------------------------- printing

std::string print_term(const Term& t) {
  std::vector<std::string> parts;
  for (auto& [v, c] : t.coeffs) parts.push_back(c == 1 ? v : "(* " + c.get_str() + " " + v + ")");
  if (t.constant != 0 || parts.empty()) parts.push_back(t.constant.get_str());
  if (parts.size() == 1) return parts[0];
  std::string out = "(+";
  for (auto& p : parts) out += " " + p;
  return out + ")";
}

namespace {

void print_into(const Formula& f, std::string& out) {
  switch (f.kind) {
    case FormulaKind::eq:
    case FormulaKind::div:
      out += f.kind == FormulaKind::eq ? "(eq " : "(div ";
      out += print_term(f.lhs);
      out += ' ';
      out += print_term(f.rhs);
      out += ')';
      return;
    case FormulaKind::conj:
    case FormulaKind::disj:
      out += f.kind == FormulaKind::conj ? "(and" : "(or";
      for (auto& c : f.children) {
        out += ' ';
        print_into(c, out);
      }
      out += ')';
      return;
    case FormulaKind::exists:
      out += "(exists (";
      for (std::size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out += ' ';
        out += f.vars[i];
      }
      out += ") ";
      print_into(f.children.at(0), out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

const std::set<std::string> kReserved = {"eq", "div", "and", "or", "exists"};
const std::set<std::string> kRejected = {"not", "forall", "implies", "iff", "=>", "neq"};

struct Parser {
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, i); }

  void ws() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') ++i;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    ws();
    return i >= s.size();
  }
  void expect(char c) {
    ws();
    if (i >= s.size() || s[i] != c) fail(std::string("expected '") + c + "'");
    ++i;
  }
  bool peek(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  std::string token() {
    ws();
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')') ++i;
    if (start == i) fail("expected a token");
    return std::string(s.substr(start, i - start));
  }
  static bool is_integer(const std::string& t) {
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k == t.size()) return false;
    for (; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  }
  static bool is_variable(const std::string& t) {
    if (t.empty() || !(t[0] >= 'a' && t[0] <= 'z')) return false;
    for (char c : t)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return !kReserved.count(t);
  }
  std::string variable() {
    ws();
    std::size_t at = i;
    std::string t = token();
    if (!is_variable(t)) fail("expected a variable, got '" + t + "'", at);
    return t;
  }
  Integer integer() {
    ws();
    std::size_t at = i;
    std::string t = token();
    if (!is_integer(t)) fail("expected an integer literal, got '" + t + "'", at);
    return Integer(t[0] == '+' ? t.substr(1) : t);
  }

  Term term() {
    ws();
    std::size_t at = i;
    if (!peek('(')) {
      std::string t = token();
      if (is_integer(t)) return Term(Integer(t[0] == '+' ? t.substr(1) : t));
      if (is_variable(t)) return Term::var(t);
      fail("expected a term, got '" + t + "'", at);
    }
    expect('(');
    std::size_t op_at = i;
    std::string op = token();
    Term out;
    if (op == "+") {
      out = term();
      while (!peek(')')) out += term();
    } else if (op == "*") {
      Integer c = integer();
      out = term();
      out *= c;
    } else {
      fail("unknown term operator '" + op + "'", op_at);
    }
    expect(')');
    return out;
  }

  Formula formula() {
    ws();
    if (!peek('(')) fail("expected '('");
    expect('(');
    ws();
    std::size_t op_at = i;
    std::string op = token();
    Formula f;
    if (op == "eq" || op == "div") {
      Term a = term();
      Term b = term();
      f = op == "eq" ? Formula::eq(std::move(a), std::move(b)) : Formula::div(std::move(a), std::move(b));
    } else if (op == "and" || op == "or") {
      std::vector<Formula> parts;
      while (!peek(')')) parts.push_back(formula());
      f = op == "and" ? Formula::all(std::move(parts)) : Formula::any(std::move(parts));
    } else if (op == "exists") {
      expect('(');
      std::vector<std::string> vars;
      while (!peek(')')) vars.push_back(variable());
      expect(')');
      f = Formula::exists(std::move(vars), formula());
    } else if (kRejected.count(op)) {
      fail("'" + op + "' is not part of the positive-existential language", op_at);
    } else {
      fail("unknown connective '" + op + "'", op_at);
    }
    expect(')');
    return f;
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p{text};
  Formula f = p.formula();
  if (!p.at_end()) p.fail("trailing input");
  return f;
}

// --------------------------------------------------------------- variables

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case FormulaKind::eq:
    case FormulaKind::div:
      for (const Term* t : {&f.lhs, &f.rhs})
        for (auto& [v, c] : t->coeffs)
          if (!bound.count(v)) out.insert(v);
      return;
    case FormulaKind::conj:
    case FormulaKind::disj:
      for (auto& c : f.children) collect_free(c, bound, out);
      return;
    case FormulaKind::exists: {
      std::set<std::string> inner = bound;
      inner.insert(f.vars.begin(), f.vars.end());
      collect_free(f.children.at(0), inner, out);
      return;
    }
  }
}

void collect_bound(const Formula& f, std::vector<std::string>& out) {
  if (f.kind == FormulaKind::exists) out.insert(out.end(), f.vars.begin(), f.vars.end());
  for (auto& c : f.children) collect_bound(c, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::vector<std::string> bound_variables(const Formula& f) {
  std::vector<std::string> out;
  collect_bound(f, out);
  std::set<std::string> seen;
  std::set<std::string> free = free_variables(f);
  for (auto& v : out) {
    if (!seen.insert(v).second) throw Error("variable '" + v + "' is bound twice");
    if (free.count(v)) throw Error("variable '" + v + "' is both bound and free");
  }
  return out;
}

std::size_t atom_count(const Formula& f) {
  if (f.kind == FormulaKind::eq || f.kind == FormulaKind::div) return 1;
  std::size_t n = 0;
  for (auto& c : f.children) n += atom_count(c);
  return n;
}

// -------------------------------------------------------------- evaluation

Value eval_term(const Field& F, const Term& t, const std::map<std::string, Value>& env) {
  Value out(KElem(t.constant));
  for (auto& [v, c] : t.coeffs) {
    auto it = env.find(v);
    if (it == env.end()) throw Error("unassigned variable '" + v + "'");
    out = out.add(F, it->second.scale(F, c));
  }
  return out;
}

namespace {

bool assigned(const Term& t, const std::map<std::string, Value>& env) {
  for (auto& [v, c] : t.coeffs)
    if (!env.count(v)) return false;
  return true;
}

Truth eval_atom(const ValueOracle& oracle, const Formula& f, const std::map<std::string, Value>& env) {
  const Field& F = oracle.ring().field();
  Value a = eval_term(F, f.lhs, env);
  Value b = eval_term(F, f.rhs, env);
  for (const Value* v : {&a, &b})
    if (!oracle.in_ring(*v)) throw Error("value " + format_value(*v) + " lies outside O_{K,S}");
  return f.kind == FormulaKind::eq ? oracle.equal(a, b) : oracle.divides(a, b);
}

}  // namespace

Truth eval_partial(const ValueOracle& oracle, const Formula& f, const std::map<std::string, Value>& env) {
  switch (f.kind) {
    case FormulaKind::eq:
    case FormulaKind::div:
      if (!assigned(f.lhs, env) || !assigned(f.rhs, env)) return Truth::unknown;
      return eval_atom(oracle, f, env);
    case FormulaKind::conj: {
      Truth acc = Truth::yes;
      for (auto& c : f.children) {
        Truth t = eval_partial(oracle, c, env);
        if (t == Truth::no) return Truth::no;
        if (t == Truth::unknown) acc = Truth::unknown;
      }
      return acc;
    }
    case FormulaKind::disj: {
      Truth acc = Truth::no;
      for (auto& c : f.children) {
        Truth t = eval_partial(oracle, c, env);
        if (t == Truth::yes) return Truth::yes;
        if (t == Truth::unknown) acc = Truth::unknown;
      }
      return acc;
    }
    case FormulaKind::exists:
      return eval_partial(oracle, f.children.at(0), env);
  }
  return Truth::unknown;
}

bool eval_closed(const SRing& R, const Formula& f, const Assignment& A, const Witness& W) {
  std::vector<std::string> bound = bound_variables(f);
  std::map<std::string, Value> env;
  for (const std::string& v : free_variables(f)) {
    auto it = A.find(v);
    if (it == A.end()) throw Error("no value for free variable '" + v + "'");
    if (!is_s_integer(R, it->second)) throw Error("value of '" + v + "' lies outside O_{K,S}");
    env[v] = Value(it->second);
  }
  // Bound variables without a witness stay open; that is fine as long as
  // another branch decides the formula.
  std::vector<std::string> open;
  for (const std::string& v : bound) {
    auto it = W.values.find(v);
    if (it == W.values.end()) open.push_back(v);
    else env[v] = it->second;
  }
  ValueOracle oracle(R, W.symbol);
  Truth t = eval_partial(oracle, f, env);
  if (t == Truth::unknown) {
    if (!open.empty()) throw Error("no witness for bound variable '" + open.front() + "'");
    throw Error("formula could not be decided exactly");
  }
  return t == Truth::yes;
}

// ------------------------------------------------------------------ search

std::vector<KElem> search_candidates(const SRing& R, VarHint hint, long bound) {
  if (bound < 0) throw PreconditionError("search bound must be nonnegative");
  std::vector<KElem> out;
  const std::size_t k = hint == VarHint::unit ? R.rank() : R.rational_primes().size();
  const long lo = hint == VarHint::unit ? -bound : 0;
  std::vector<long> idx(k, lo);
  auto next = [&]() {
    for (std::size_t i = k; i-- > 0;) {
      if (idx[i] < bound) {
        ++idx[i];
        return true;
      }
      idx[i] = lo;
    }
    return false;
  };
  if (hint == VarHint::unit) {
    for (int j = 0; j < R.unit_count(); ++j) {
      std::fill(idx.begin(), idx.end(), lo);
      do {
        out.push_back(unit_from_exponents(R, UnitExponents{j, idx}));
      } while (next());
    }
    return out;
  }
  auto less = [](const KElem& a, const KElem& b) { return coord_less(a, b); };
  std::set<KElem, decltype(less)> seen(less);
  do {
    Integer den = 1;
    for (std::size_t i = 0; i < k; ++i) den *= ipow(R.rational_primes()[i], static_cast<unsigned long>(idx[i]));
    for (long m = -bound; m <= bound; ++m)
      for (long n = -bound; n <= bound; ++n) {
        KElem c(m, n, den);
        if (seen.insert(c).second) out.push_back(c);
      }
  } while (next());
  return out;
}

namespace {

void spine_equations(const Formula& f, std::vector<const Formula*>& out) {
  if (f.kind == FormulaKind::eq) out.push_back(&f);
  if (f.kind == FormulaKind::conj || f.kind == FormulaKind::exists)
    for (auto& c : f.children) spine_equations(c, out);
}

struct Search {
  const SRing& R;
  const Formula& f;
  const ValueOracle oracle;
  std::vector<std::string> vars;
  std::vector<const std::vector<KElem>*> candidates;
  std::vector<std::set<KElem, bool (*)(const KElem&, const KElem&)>> members;
  std::vector<const Formula*> equations;
  std::map<std::string, Value> env;

  // If some spine equation pins vars[i] given the current assignment, its value.
  std::optional<std::optional<KElem>> forced(std::size_t i) {
    const Field& F = R.field();
    const std::string& v = vars[i];
    for (const Formula* eq : equations) {
      Term diff = eq->lhs - eq->rhs;
      auto it = diff.coeffs.find(v);
      if (it == diff.coeffs.end()) continue;
      Integer c = it->second;
      diff.coeffs.erase(it);
      if (!assigned(diff, env)) continue;
      Value rest = eval_term(F, diff, env);
      if (!rest.is_constant()) continue;
      KElem val = F.div(F.neg(rest.constant()), KElem(c));
      if (members[i].count(val)) return std::optional<KElem>(val);
      return std::optional<KElem>();
    }
    return std::nullopt;
  }

  bool run(std::size_t i) {
    Truth t = eval_partial(oracle, f, env);
    if (t == Truth::no) return false;
    if (i == vars.size()) return t == Truth::yes;
    if (t == Truth::yes) {
      for (std::size_t j = i; j < vars.size(); ++j) env[vars[j]] = Value(candidates[j]->front());
      return true;
    }
    auto pinned = forced(i);
    if (pinned) {
      if (!*pinned) return false;
      env[vars[i]] = Value(**pinned);
      if (run(i + 1)) return true;
      env.erase(vars[i]);
      return false;
    }
    for (const KElem& c : *candidates[i]) {
      env[vars[i]] = Value(c);
      if (run(i + 1)) return true;
    }
    env.erase(vars[i]);
    return false;
  }
};

}  // namespace

std::optional<Assignment> search_exists(const SRing& R, const Formula& f, const Assignment& A, long bound,
                                        const std::map<std::string, VarHint>& hints) {
  if (bound < 0) throw PreconditionError("search bound must be nonnegative");
  std::vector<KElem> any = search_candidates(R, VarHint::any, bound);
  std::vector<KElem> unit = search_candidates(R, VarHint::unit, bound);
  Search s{R, f, ValueOracle(R), bound_variables(f), {}, {}, {}, {}};
  for (const std::string& v : free_variables(f)) {
    auto it = A.find(v);
    if (it == A.end()) throw Error("no value for free variable '" + v + "'");
    s.env[v] = Value(it->second);
  }
  for (const std::string& v : s.vars) {
    auto h = hints.find(v);
    const std::vector<KElem>* c = (h != hints.end() && h->second == VarHint::unit) ? &unit : &any;
    s.candidates.push_back(c);
    s.members.emplace_back(c->begin(), c->end(), &coord_less);
  }
  spine_equations(f, s.equations);
  if (!s.run(0)) return std::nullopt;
  Assignment out;
  for (const std::string& v : s.vars) out[v] = s.env.at(v).constant();
  // The search answers through the same oracle, but re-check on the closed form.
  Witness w;
  for (auto& [v, val] : out) w.values[v] = Value(val);
  if (!eval_closed(R, f, A, w)) throw Error("search_exists: internal witness check failed");
  return out;
}

}  // namespace divq
