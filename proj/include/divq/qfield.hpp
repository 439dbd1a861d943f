#ifndef DIVQ_QFIELD_HPP
#define DIVQ_QFIELD_HPP

#include "divq/integer.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace divq {

/// An element (x + y*w)/den of an imaginary quadratic field, always kept in
/// lowest terms: den > 0 and gcd(x, y, den) = 1. The meaning of w depends on
/// the field the element belongs to, so arithmetic goes through Field.
struct KElem {
  Integer x = 0;
  Integer y = 0;
  Integer den = 1;

  KElem() = default;
  KElem(long v) : x(v) {}  // NOLINT(google-explicit-constructor)
  KElem(const Integer& v) : x(v) {}  // NOLINT(google-explicit-constructor)
  KElem(Integer x_, Integer y_, Integer den_ = 1);

  bool is_zero() const { return x == 0 && y == 0; }
  bool is_integral() const { return den == 1; }
  bool is_rational() const { return y == 0; }

  friend bool operator==(const KElem&, const KElem&) = default;
};

/// Total order on coordinates; only used to make containers and output stable.
bool coord_less(const KElem& a, const KElem& b);

/// K = Q(sqrt d), d < 0 squarefree, with integral basis {1, w}:
/// w = (1 + sqrt d)/2 when d = 1 mod 4, otherwise w = sqrt d.
/// Multiplication uses w^2 = trace*w + constant.
class Field {
public:
  explicit Field(long d);

  long d() const { return d_; }
  long disc() const { return disc_; }
  bool half_omega() const { return trace_ == 1; }
  long trace() const { return trace_; }          // w + conj(w)
  long omega_sq_const() const { return nconst_; }  // w^2 = trace*w + nconst
  int torsion_order() const { return static_cast<int>(torsion_.size()); }
  const std::vector<KElem>& torsion_units() const { return torsion_; }
  /// A primitive root of unity of order torsion_order().
  const KElem& torsion_generator() const { return zeta_; }

  KElem omega() const { return KElem(0, 1, 1); }

  KElem add(const KElem& a, const KElem& b) const;
  KElem sub(const KElem& a, const KElem& b) const;
  KElem neg(const KElem& a) const;
  KElem mul(const KElem& a, const KElem& b) const;
  KElem div(const KElem& a, const KElem& b) const;
  KElem conj(const KElem& a) const;
  KElem pow(const KElem& a, long e) const;
  KElem scale(const KElem& a, const Integer& c) const;

  /// a * conj(a); equals |a|^2 under either complex embedding.
  Rational norm(const KElem& a) const;
  /// Norm of the integral numerator x + y*w.
  Integer norm_numerator(const KElem& a) const;
  Integer integral_norm(const Integer& x, const Integer& y) const;

  /// Elements x + y*w of O_K with norm exactly n, in a fixed order
  /// (y ascending, then x ascending).
  std::vector<KElem> elements_of_norm(const Integer& n) const;

  bool is_torsion(const KElem& a) const;
  /// j with zeta^j == a, or -1 when a is not a root of unity.
  int torsion_index(const KElem& a) const;

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

private:
  long d_;
  long disc_;
  long trace_;
  long nconst_;
  std::vector<KElem> torsion_;
  KElem zeta_;
};

bool is_squarefree(long n);

/// "(x + y*w)/den" with the usual simplifications: "3", "1 + w", "-w",
/// "(1 - w)/2".
std::string format_kelem(const KElem& a);

/// Accepts what format_kelem writes plus anything of the shape
/// [(] sum of [sign] int | [sign] [int*]w [)] [/ int].
KElem parse_kelem(std::string_view text);

}  // namespace divq

#endif
