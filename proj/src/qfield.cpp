#include "divq/qfield.hpp"

#include <cctype>
#include <sstream>
#include <tuple>

namespace divq {

KElem::KElem(Integer x_, Integer y_, Integer den_) : x(std::move(x_)), y(std::move(y_)), den(std::move(den_)) {
  if (den == 0) throw PreconditionError("KElem with zero denominator");
  if (den < 0) {
    x = -x;
    y = -y;
    den = -den;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den.get_mpz_t());
  if (g != 1) {
    x /= g;
    y /= g;
    den /= g;
  }
}

bool coord_less(const KElem& a, const KElem& b) {
  return std::tie(a.den, a.y, a.x) < std::tie(b.den, b.y, b.x);
}

bool is_squarefree(long n) {
  unsigned long m = n < 0 ? -static_cast<unsigned long>(n) : n;
  if (m == 0) return false;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    if (m % p == 0) m /= p;
  }
  return true;
}

Field::Field(long d) : d_(d) {
  if (d >= 0) throw PreconditionError("make_field: d must be negative, got " + std::to_string(d));
  if (!is_squarefree(d)) throw PreconditionError("make_field: d must be squarefree, got " + std::to_string(d));
  long r = ((d % 4) + 4) % 4;
  if (r == 1) {
    trace_ = 1;
    nconst_ = (d - 1) / 4;
    disc_ = d;
  } else {
    trace_ = 0;
    nconst_ = d;
    disc_ = 4 * d;
  }
  // Roots of unity are exactly the integral elements of norm 1.
  torsion_ = elements_of_norm(1);
  // Largest (y, x) first: Q(i) and Q(sqrt -3) both get zeta = w.
  for (auto it = torsion_.rbegin(); it != torsion_.rend(); ++it) {
    const KElem& u = *it;
    int order = 0;
    KElem p = u;
    for (int k = 1; k <= static_cast<int>(torsion_.size()); ++k) {
      if (p == KElem(1)) {
        order = k;
        break;
      }
      p = mul(p, u);
    }
    if (order == static_cast<int>(torsion_.size())) {
      zeta_ = u;
      break;
    }
  }
  // Reorder as zeta^0, zeta^1, ...
  std::vector<KElem> powers;
  KElem p(1);
  for (std::size_t k = 0; k < torsion_.size(); ++k) {
    powers.push_back(p);
    p = mul(p, zeta_);
  }
  torsion_ = std::move(powers);
}

KElem Field::add(const KElem& a, const KElem& b) const {
  return KElem(a.x * b.den + b.x * a.den, a.y * b.den + b.y * a.den, a.den * b.den);
}

KElem Field::sub(const KElem& a, const KElem& b) const {
  return KElem(a.x * b.den - b.x * a.den, a.y * b.den - b.y * a.den, a.den * b.den);
}

KElem Field::neg(const KElem& a) const { return KElem(-a.x, -a.y, a.den); }

KElem Field::mul(const KElem& a, const KElem& b) const {
  Integer yy = a.y * b.y;
  return KElem(a.x * b.x + nconst_ * yy, a.x * b.y + a.y * b.x + trace_ * yy, a.den * b.den);
}

KElem Field::conj(const KElem& a) const { return KElem(a.x + trace_ * a.y, -a.y, a.den); }

KElem Field::scale(const KElem& a, const Integer& c) const { return KElem(a.x * c, a.y * c, a.den); }

Integer Field::integral_norm(const Integer& x, const Integer& y) const {
  return x * x + trace_ * x * y - nconst_ * y * y;
}

Integer Field::norm_numerator(const KElem& a) const { return integral_norm(a.x, a.y); }

Rational Field::norm(const KElem& a) const {
  Rational r(norm_numerator(a), a.den * a.den);
  r.canonicalize();
  return r;
}

KElem Field::div(const KElem& a, const KElem& b) const {
  if (b.is_zero()) throw PreconditionError("division by zero");
  // a / b = a * den_b * conj(num_b) / N(num_b)
  KElem num_conj = conj(KElem(b.x, b.y, 1));
  KElem t = mul(a, num_conj);
  return KElem(t.x * b.den, t.y * b.den, t.den * norm_numerator(b));
}

KElem Field::pow(const KElem& a, long e) const {
  if (e < 0) return pow(div(KElem(1), a), -e);
  KElem result(1), base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<KElem> Field::elements_of_norm(const Integer& n) const {
  // 4N = (2x + t*y)^2 - D*y^2 with D < 0.
  std::vector<KElem> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back(0);
    return out;
  }
  Integer four_n = 4 * n;
  Integer absd = -disc_;
  Integer ymax = isqrt(four_n / absd);
  for (Integer y = -ymax; y <= ymax; ++y) {
    Integer rest = four_n + disc_ * y * y;
    Integer s;
    if (!is_square(rest, &s)) continue;
    std::vector<Integer> xs;
    for (Integer sv : {Integer(-s), s}) {
      Integer twox = sv - trace_ * y;
      if (mpz_even_p(twox.get_mpz_t())) xs.push_back(twox / 2);
    }
    if (xs.size() == 2 && xs[0] == xs[1]) xs.pop_back();
    for (auto& x : xs) out.emplace_back(x, y, 1);
  }
  return out;
}

bool Field::is_torsion(const KElem& a) const { return torsion_index(a) >= 0; }

int Field::torsion_index(const KElem& a) const {
  for (std::size_t j = 0; j < torsion_.size(); ++j)
    if (torsion_[j] == a) return static_cast<int>(j);
  return -1;
}

std::string format_kelem(const KElem& a) {
  std::ostringstream os;
  auto body = [&]() {
    std::ostringstream b;
    if (a.y == 0) {
      b << a.x;
      return b.str();
    }
    auto wterm = [](const Integer& c) {
      Integer m = abs(c);
      return m == 1 ? std::string("w") : m.get_str() + "*w";
    };
    if (a.x == 0) {
      b << (a.y < 0 ? "-" : "") << wterm(a.y);
    } else {
      b << a.x << (a.y < 0 ? " - " : " + ") << wterm(a.y);
    }
    return b.str();
  };
  if (a.den == 1) return body();
  os << "(" << body() << ")/" << a.den;
  return os.str();
}

namespace {

struct KParser {
  std::string_view s;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw PreconditionError("parse_kelem: " + msg + " at position " + std::to_string(i) + " in '" +
                            std::string(s) + "'");
  }
  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  Integer number() {
    ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected integer");
    return Integer(std::string(s.substr(start, i - start)));
  }
  // sum := term { (+|-) term }, term := int [* w] | w
  void sum(Integer& x, Integer& y) {
    int sign = 1;
    if (eat('-')) sign = -1;
    else eat('+');
    for (;;) {
      term(sign, x, y);
      if (eat('+')) sign = 1;
      else if (eat('-')) sign = -1;
      else break;
    }
  }
  void term(int sign, Integer& x, Integer& y) {
    if (eat('w')) {
      y += sign;
      return;
    }
    Integer c = number() * sign;
    if (eat('*')) {
      if (!eat('w')) fail("expected 'w' after '*'");
      y += c;
    } else {
      x += c;
    }
  }
};

}  // namespace

KElem parse_kelem(std::string_view text) {
  KParser p{text};
  Integer x = 0, y = 0, den = 1;
  if (p.eat('(')) {
    p.sum(x, y);
    if (!p.eat(')')) p.fail("expected ')'");
  } else {
    p.sum(x, y);
  }
  if (p.eat('/')) den = p.number();
  p.ws();
  if (p.i != text.size()) p.fail("trailing input");
  if (den == 0) p.fail("zero denominator");
  return KElem(x, y, den);
}

}  // namespace divq
