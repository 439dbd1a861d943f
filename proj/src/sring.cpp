#include "divq/sring.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace divq {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

PrimeIdeal resolve(const Field& field, const PrimeSpec& spec) {
  auto ps = split_prime(field, spec.p);
  const PrimeIdeal& first = ps.front();
  auto mismatch = [&](const char* kind) {
    return PreconditionError("S spec " + spec.p.get_str() + spec.tag + ": " + spec.p.get_str() + " is " + kind +
                             " in Q(sqrt " + std::to_string(field.d()) + ")");
  };
  const char* kind = first.kind == Splitting::split ? "split" : first.kind == Splitting::inert ? "inert" : "ramified";
  if (spec.tag == "r") {
    if (first.kind != Splitting::ramified) throw mismatch(kind);
    return first;
  }
  if (spec.tag == "i") {
    if (first.kind != Splitting::inert) throw mismatch(kind);
    return first;
  }
  if (spec.tag == "s1" || spec.tag == "s2") {
    if (first.kind != Splitting::split) throw mismatch(kind);
    return ps[spec.tag == "s1" ? 0 : 1];
  }
  throw PreconditionError("S spec: unknown prime tag '" + spec.tag + "'");
}

}  // namespace

std::vector<PrimeSpec> parse_prime_list(std::string_view text) {
  std::vector<PrimeSpec> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t i = 0;
    while (i < item.size() && std::isdigit(static_cast<unsigned char>(item[i]))) ++i;
    if (i == 0 || i == item.size()) throw PreconditionError("S spec: malformed entry '" + item + "'");
    out.push_back({Integer(item.substr(0, i)), item.substr(i)});
  }
  if (out.empty()) throw PreconditionError("S spec: S must be nonempty");
  return out;
}

RingSpec parse_ring_spec(std::string_view text) {
  RingSpec spec;
  bool have_d = false, have_s = false;
  std::string s(text);
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw PreconditionError("ring spec: expected key=value, got '" + part + "'");
    std::string key = trim(part.substr(0, eq)), value = trim(part.substr(eq + 1));
    if (key == "d") {
      try {
        std::size_t used = 0;
        spec.d = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw PreconditionError("ring spec: bad d '" + value + "'");
      }
      have_d = true;
    } else if (key == "S") {
      spec.primes = parse_prime_list(value);
      have_s = true;
    } else {
      throw PreconditionError("ring spec: unknown key '" + key + "'");
    }
  }
  if (!have_d || !have_s) throw PreconditionError("ring spec: need both d= and S=");
  return spec;
}

std::string format_ring_spec(const RingSpec& spec) {
  std::string out = "d=" + std::to_string(spec.d) + ";S=";
  for (std::size_t i = 0; i < spec.primes.size(); ++i) {
    if (i) out += ",";
    out += spec.primes[i].p.get_str() + spec.primes[i].tag;
  }
  return out;
}

SRing::SRing(Field field, std::vector<PrimeIdeal> primes) : field_(std::move(field)), primes_(std::move(primes)) {
  if (primes_.empty()) throw PreconditionError("make_sring: S must be nonempty");
  for (std::size_t i = 0; i < primes_.size(); ++i)
    for (std::size_t j = i + 1; j < primes_.size(); ++j)
      if (primes_[i] == primes_[j]) throw PreconditionError("make_sring: duplicate prime " + primes_[i].label());
  class_number_ = divq::class_number(field_);
  std::set<Integer> below;
  spec_.d = field_.d();
  for (const PrimeIdeal& P : primes_) {
    long h = class_order(field_, P, class_number_);
    class_orders_.push_back(h);
    generators_.push_back(*is_principal(field_, P, h));
    below.insert(P.p);
    std::string tag;
    if (P.kind == Splitting::ramified) tag = "r";
    else if (P.kind == Splitting::inert) tag = "i";
    else tag = split_prime(field_, P.p)[0] == P ? "s1" : "s2";
    spec_.primes.push_back({P.p, tag});
  }
  rational_primes_.assign(below.begin(), below.end());
}

SRing SRing::from_spec(const RingSpec& spec) {
  Field field(spec.d);
  std::vector<PrimeIdeal> ps;
  for (const PrimeSpec& s : spec.primes) ps.push_back(resolve(field, s));
  return SRing(std::move(field), std::move(ps));
}

std::optional<std::size_t> SRing::index_of(const PrimeIdeal& P) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i] == P) return i;
  return std::nullopt;
}

bool is_s_integer(const SRing& R, const KElem& x) {
  if (x.is_zero() || x.den == 1) return true;
  // Poles can only sit above primes dividing the denominator.
  for (const Integer& p : prime_factors(x.den))
    for (const PrimeIdeal& P : split_prime(R.field(), p))
      if (!R.contains(P) && valuation(R.field(), x, P) < 0) return false;
  return true;
}

bool divides(const SRing& R, const KElem& x, const KElem& y) {
  if (!is_s_integer(R, x) || !is_s_integer(R, y))
    throw PreconditionError("divides: arguments must lie in O_{K,S}");
  if (x.is_zero()) return y.is_zero();
  return is_s_integer(R, R.field().div(y, x));
}

bool is_s_unit(const SRing& R, const KElem& x) {
  if (x.is_zero()) return false;
  return is_s_integer(R, x) && is_s_integer(R, R.field().div(KElem(1), x));
}

UnitExponents unit_decompose(const SRing& R, const KElem& x) {
  if (!is_s_unit(R, x)) throw PreconditionError("unit_decompose: " + format_kelem(x) + " is not an S-unit");
  const Field& F = R.field();
  UnitExponents u;
  KElem rest = x;
  for (std::size_t i = 0; i < R.rank(); ++i) {
    long v = valuation(F, x, R.primes()[i]);
    long h = R.class_orders()[i];
    if (v % h != 0)
      throw NotInLatticeError("unit_decompose: v_" + R.primes()[i].label() + " = " + std::to_string(v) +
                              " is not a multiple of the class order " + std::to_string(h));
    u.exponents.push_back(v / h);
    rest = F.div(rest, F.pow(R.generators()[i], v / h));
  }
  u.torsion = F.torsion_index(rest);
  if (u.torsion < 0)
    throw NotInLatticeError("unit_decompose: remainder " + format_kelem(rest) + " is not a root of unity");
  return u;
}

KElem unit_from_exponents(const SRing& R, const UnitExponents& u) {
  const Field& F = R.field();
  int w = F.torsion_order();
  KElem out = F.torsion_units()[((u.torsion % w) + w) % w];
  for (std::size_t i = 0; i < u.exponents.size(); ++i)
    if (u.exponents[i] != 0) out = F.mul(out, F.pow(R.generators()[i], u.exponents[i]));
  return out;
}

Integer reduce_mod(const SRing& R, const PrimeIdeal& P, const KElem& x) {
  if (P.f != 1 || P.kind == Splitting::inert) throw PreconditionError("reduce_mod: prime must have degree one");
  if (R.contains(P)) throw PreconditionError("reduce_mod: prime " + P.label() + " lies in S");
  if (x.is_zero() || mod(x.den, P.p) == 0)
    throw PreconditionError("reduce_mod: " + format_kelem(x) + " is not a unit at " + P.label());
  Integer num = mod(x.x + x.y * P.r, P.p);
  if (num == 0) throw PreconditionError("reduce_mod: " + format_kelem(x) + " lies in " + P.label());
  return mod(num * invmod(x.den, P.p), P.p);
}

std::vector<Integer> unit_image_generators(const SRing& R, const PrimeIdeal& P) {
  std::vector<Integer> out;
  out.push_back(reduce_mod(R, P, R.torsion_generator()));
  for (const KElem& g : R.generators()) out.push_back(reduce_mod(R, P, g));
  return out;
}

Integer unit_image_index(const SRing& R, const PrimeIdeal& P) {
  // F_p^x is cyclic: the subgroup generated by elements of orders o_j has order lcm(o_j).
  Integer order = 1;
  for (const Integer& g : unit_image_generators(R, P)) order = lcm(order, order_mod_prime(g, P.p));
  return (P.p - 1) / order;
}

ABDecomp ab_decompose(const SRing& R, const KElem& x) {
  if (x.is_zero()) throw PreconditionError("ab_decompose: zero");
  if (!is_s_integer(R, x)) throw PreconditionError("ab_decompose: " + format_kelem(x) + " is not an S-integer");
  const Field& F = R.field();
  ABDecomp out;
  out.b = KElem(1);
  for (std::size_t i = 0; i < R.rank(); ++i) {
    long v = valuation(F, x, R.primes()[i]);
    long beta = 0;
    if (v < 0) {
      long h = R.class_orders()[i];
      beta = h * ((-v) / h);
      if (beta > 0) out.b = F.mul(out.b, F.pow(R.generators()[i], beta / h));
    }
    out.beta.push_back(beta);
  }
  out.a = F.mul(out.b, x);
  return out;
}

}  // namespace divq
