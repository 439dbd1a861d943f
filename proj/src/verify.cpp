#include "divq/verify.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace divq {

namespace {

using nlohmann::json;

class Recorder {
public:
  explicit Recorder(SuiteResult& res) : res_(res) {}

  void record(const std::string& name, bool ok, const json& input = {}) {
    CheckCount& c = res_.checks[name];
    if (ok) {
      ++c.passed;
      return;
    }
    ++c.failed;
    res_.passed = false;
    if (!res_.counterexample) res_.counterexample = json{{"check", name}, {"input", input}};
  }

  void fail(const std::string& what, const json& input) { record("no internal error", false, json{{"input", input}, {"error", what}}); }

  void count(const std::string& name, long by = 1) { res_.counters[name] += by; }

private:
  SuiteResult& res_;
};

json kjson(const KElem& x) { return format_kelem(x); }

std::uint32_t stable_hash(const std::string& s) {
  std::uint32_t h = 2166136261u;  // FNV-1a
  for (unsigned char c : s) h = (h ^ c) * 16777619u;
  return h;
}

std::mt19937_64 make_rng(std::uint64_t seed, const std::string& suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stable_hash(suite)};
  return std::mt19937_64(seq);
}

long samples_or(const VerifyConfig& cfg, long fallback) { return cfg.samples > 0 ? cfg.samples : fallback; }

KElem nonzero_element(const SRing& R, std::mt19937_64& rng, long height, long den_box) {
  while (true) {
    KElem x = random_element(R, rng, height, den_box);
    if (!x.is_zero()) return x;
  }
}

std::vector<KElem> unit_box(const SRing& R, long box) {
  std::vector<KElem> out;
  for (int j = 0; j < R.unit_count(); ++j)
    for (const auto& idx : multi_indices(R.rank(), 2 * box)) {
      UnitExponents u;
      u.torsion = j;
      for (long a : idx) u.exponents.push_back(a - box);
      out.push_back(unit_from_exponents(R, u));
    }
  return out;
}

std::map<std::string, VarHint> sq_hints(const Formula& f) {
  std::map<std::string, VarHint> hints;
  for (const std::string& v : bound_variables(f))
    if (v == "eps" || v == "inf_m" || (v.size() > 1 && v[0] == 'e' && std::isdigit(static_cast<unsigned char>(v[1]))))
      hints[v] = VarHint::unit;
  return hints;
}

void record_lemma_report(Recorder& rec, const LemmaReport& rep, const json& input) {
  for (const NamedCheck& c : rep.hypotheses) rec.record("hypothesis " + c.name, c.passed, input);
  for (const NamedCheck& c : rep.conclusions) rec.record(c.name, c.passed, input);
}

void run_produnits(const SRing& R, const Constants& C, const VerifyConfig&, Recorder& rec) {
  const Field& F = R.field();
  Formula f = build_produnits(R, C);
  std::size_t box = multi_indices(R.rational_primes().size(), C.small_box).size();
  rec.record("atom count = 5^k (u_K + 1) 2 + 3", atom_count(f) == box * C.q_list.size() * 2 + 3);

  auto units = unit_box(R, 2);
  rec.count("units in box", static_cast<long>(units.size()));
  for (const KElem& x : units)
    for (const KElem& y : units) {
      KElem xy = F.mul(x, y);
      for (const KElem& z : units) {
        json input{{"x", kjson(x)}, {"y", kjson(y)}, {"z", kjson(z)}};
        bool truth = eval_closed(R, f, {{"x", x}, {"y", y}, {"z", z}});
        bool expect = z == xy;
        rec.record("Prod_u(x, y, z) iff z = xy", truth == expect, input);
        rec.count("triples");
        if (truth) rec.count("true triples");

        std::vector<long> beta = select_beta(R, x, y, z);
        Integer pb = p_power(R, beta);
        bool ok = true;
        for (const PrimeIdeal& P : R.primes()) {
          long vx = valuation(F, F.scale(x, pb), P), vz = valuation(F, F.scale(z, pb), P);
          ok = ok && vx != 0 && vz != valuation(F, y, P);
        }
        rec.record("select_beta: v_P(p^b x) != 0 and v_P(p^b z) != v_P(y)", ok, input);
      }
    }
}

void run_neq(const SRing& R, const Constants& C, const VerifyConfig& cfg, Recorder& rec) {
  const Field& F = R.field();
  auto rng = make_rng(cfg.seed, "neq");
  Formula f = build_neq(R, C);
  long n = samples_or(cfg, 200);
  for (long i = 0; i < n; ++i) {
    KElem y = nonzero_element(R, rng, 20, 3);
    json input{{"y", kjson(y)}};
    try {
      NeqWitness w = witness_neq(R, C, Value(y));
      rec.record("A + B = 1", w.a.add(F, w.b) == Value(1), input);
      Witness W;
      add_neq_witness(w, "", W);
      rec.record("psi_neq(y) certificate for y != 0", eval_closed(R, f, {{"y", y}}, W), input);
    } catch (const Error& e) {
      rec.fail(e.what(), input);
    }
  }
  auto found = search_exists(R, f, {{"y", KElem(0)}}, cfg.bound);
  rec.record("no psi_neq(0) witness within the bound", !found, json{{"y", "0"}, {"bound", cfg.bound}});

  const Integer& p = C.lenstra.p;
  for (long i = 0; i < 50; ++i) {
    KElem x = random_element(R, rng, 20, 3);
    KElem v = F.add(F.scale(x, p), KElem(C.lenstra.b));
    rec.record("p x + b is not an S-unit", !is_s_unit(R, v), json{{"x", kjson(x)}});
  }
}

void run_sq(const SRing& R, const Constants& C, const VerifyConfig& cfg, Recorder& rec) {
  const Field& F = R.field();
  auto rng = make_rng(cfg.seed, "sq");
  Formula f = build_sq(R, C);
  long n = samples_or(cfg, 100);
  std::vector<KElem> roots{KElem(1), KElem(-1)};
  if (R.unit_count() == 4) roots = R.field().torsion_units();
  for (const auto& alpha : multi_indices(R.rational_primes().size(), C.large_box))
    for (const KElem& r : roots) {
      KElem x = F.div(r, KElem(p_power(R, alpha)));
      rec.record("phi_sq(x, x^2) without witness where p^2a x^2 = +-1", eval_closed(R, f, {{"x", x}, {"y", F.mul(x, x)}}),
                 json{{"x", kjson(x)}});
    }
  rec.record("phi_sq(0, 0)", eval_closed(R, f, {{"x", KElem(0)}, {"y", KElem(0)}}));
  for (long i = 0; i < n;) {
    KElem x = nonzero_element(R, rng, 6, 2);
    if (is_cleared_power(R, C, x)) continue;
    ++i;
    KElem y = F.mul(x, x);
    json input{{"x", kjson(x)}};
    try {
      SqWitness w = witness_sq(R, C, x);
      input["t_bits"] = mpz_sizeinbase(w.eps.exponent.get_mpz_t(), 2);
      rec.record("phi_sq(x, x^2) certificate", eval_closed(R, f, {{"x", x}, {"y", y}}, w.witness), input);
      record_lemma_report(rec, lemma_checks(R, C, x, w.eps), input);
    } catch (const Error& e) {
      rec.fail(e.what(), input);
    }
  }
  auto hints = sq_hints(f);
  for (long i = 0; i < n;) {
    KElem x = nonzero_element(R, rng, 6, 2);
    KElem y = random_element(R, rng, 6, 2);
    if (y == F.mul(x, x)) continue;
    ++i;
    json input{{"x", kjson(x)}, {"y", kjson(y)}, {"bound", cfg.bound}};
    try {
      auto found = search_exists(R, f, {{"x", x}, {"y", y}}, cfg.bound, hints);
      rec.record("no phi_sq(x, y) witness for y != x^2 within the bound", !found, input);
    } catch (const Error& e) {
      rec.fail(e.what(), input);
    }
  }
}

void run_lemmas(const SRing& R, const Constants& C, const VerifyConfig& cfg, Recorder& rec) {
  const Field& F = R.field();
  const long h = R.class_number();
  auto rng = make_rng(cfg.seed, "lemmas");
  long n = samples_or(cfg, 500);
  for (long i = 0; i < n; ++i) {
    KElem a = nonzero_element(R, rng, 50, 4);
    json input{{"x", kjson(a)}};
    Rational prod = 1;
    for (auto& [P, k] : factor_element(F, a)) {
      prod *= k >= 0 ? Rational(ipow(P.q, k)) : Rational(Integer(1), ipow(P.q, -k));
    }
    rec.record("product formula", prod == F.norm(a), input);

    ABDecomp ab = ab_decompose(R, a);
    rec.record("a/b: x = a/b", F.mul(a, ab.b) == ab.a, input);
    rec.record("a/b: b in O_K", ab.b.is_integral(), input);
    bool poles = true, zeros = true, regular = true;
    for (const PrimeIdeal& P : R.primes()) {
      long va = valuation(F, ab.a, P), vb = valuation(F, ab.b, P);
      poles = poles && va > -h;
      zeros = zeros && (va <= 0 || vb == 0);
      regular = regular && (valuation(F, a, P) < 0 || vb == 0);
    }
    rec.record("a/b: v_P(a) > -h_K", poles, input);
    rec.record("a/b: v_P(a) > 0 implies v_P(b) = 0", zeros, input);
    rec.record("a/b: v_P(x) >= 0 implies v_P(b) = 0", regular, input);
    rec.record("a/b: |a| > C", F.norm(ab.a) > C.c_sq, input);
  }

  // Height and pole bounds on pairs with y != x^2, where they are not vacuous.
  long m = std::max(1L, n / 50);
  for (long i = 0; i < m;) {
    KElem x = nonzero_element(R, rng, 6, 2);
    KElem y = nonzero_element(R, rng, 6, 2);
    if (y == F.mul(x, x)) continue;
    ++i;
    json input{{"x", kjson(x)}, {"y", kjson(y)}};
    try {
      UnitSymbol eps = witness_inf_unit(R, sq_moduli(R, C, x, y));
      record_lemma_report(rec, lemma_checks(R, C, x, eps, y), input);
    } catch (const Error& e) {
      rec.fail(e.what(), input);
    }
  }

  KElem x = nonzero_element(R, rng, 6, 2);
  LemmaReport tors = lemma_checks(R, C, x, UnitSymbol{R.torsion_generator(), 5});
  rec.record("torsion eps violates the hypotheses", !tors.hypotheses_hold, json{{"x", kjson(x)}});
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"produnits", "neq", "sq", "lemmas"};
  return names;
}

VerifyReport run_verify(const VerifyConfig& config, const std::string& suite) {
  std::vector<std::string> todo;
  if (suite == "all") todo = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) todo = {suite};
  else throw PreconditionError("unknown suite '" + suite + "'");
  if (config.bound < 0 || config.samples < 0 || config.scan_bound < 2)
    throw PreconditionError("bounds must be positive");

  SRing R = SRing::from_spec(config.ring);
  VerifyReport rep;
  rep.config = config;
  rep.ring_spec = format_ring_spec(R.spec());
  rep.constants = compute_constants(R, config.scan_bound);
  if (config.q_override) rep.constants.q = *config.q_override;
  rep.constant_checks = check_constants(R, rep.constants);
  for (const NamedCheck& c : rep.constant_checks) rep.passed = rep.passed && c.passed;

  for (const std::string& name : todo) {
    SuiteResult res;
    res.name = name;
    Recorder rec(res);
    if (name == "produnits") run_produnits(R, rep.constants, config, rec);
    if (name == "neq") run_neq(R, rep.constants, config, rec);
    if (name == "sq") run_sq(R, rep.constants, config, rec);
    if (name == "lemmas") run_lemmas(R, rep.constants, config, rec);
    rep.passed = rep.passed && res.passed;
    rep.suites.push_back(std::move(res));
  }
  return rep;
}

nlohmann::json constants_json(const SRing& R, const Constants& C) {
  json qs = json::array();
  for (const Integer& q : C.q_list) qs.push_back(q.get_str());
  json gens = json::array();
  for (const KElem& g : R.generators()) gens.push_back(format_kelem(g));
  return json{{"ring", format_ring_spec(R.spec())},
              {"class_number", R.class_number()},
              {"class_orders", R.class_orders()},
              {"s_unit_generators", gens},
              {"torsion_generator", format_kelem(R.torsion_generator())},
              {"u_K", R.unit_count()},
              {"lenstra_p", C.lenstra.p.get_str()},
              {"lenstra_b", C.lenstra.b.get_str()},
              {"lenstra_prime", C.lenstra.prime.label()},
              {"lenstra_index", C.lenstra.index.get_str()},
              {"C_sq", to_string(C.c_sq)},
              {"q", C.q.get_str()},
              {"q_list", qs},
              {"I", "{0.." + std::to_string(C.small_box) + "}^" + std::to_string(R.rational_primes().size())},
              {"J", "{0.." + std::to_string(C.large_box) + "}^" + std::to_string(R.rational_primes().size())},
              {"exponent_17", C.exponent_17},
              {"exponent_34", C.exponent_34}};
}

nlohmann::json to_json(const VerifyReport& rep) {
  json cfg{{"ring", rep.ring_spec},
           {"scan_bound", rep.config.scan_bound},
           {"bound", rep.config.bound},
           {"samples", rep.config.samples},
           {"seed", rep.config.seed}};
  if (rep.config.q_override) cfg["q_override"] = rep.config.q_override->get_str();
  json constants{{"lenstra_p", rep.constants.lenstra.p.get_str()},
                 {"lenstra_b", rep.constants.lenstra.b.get_str()},
                 {"lenstra_prime", rep.constants.lenstra.prime.label()},
                 {"C_sq", to_string(rep.constants.c_sq)},
                 {"q", rep.constants.q.get_str()}};
  json invariants = json::array();
  for (const NamedCheck& c : rep.constant_checks)
    invariants.push_back(json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json suites = json::array();
  for (const SuiteResult& s : rep.suites) {
    json checks = json::array();
    for (auto& [name, c] : s.checks)
      checks.push_back(json{{"name", name}, {"passed", c.passed}, {"failed", c.failed}});
    json js{{"name", s.name}, {"passed", s.passed}, {"checks", checks}, {"counters", s.counters}};
    js["counterexample"] = s.counterexample ? *s.counterexample : json(nullptr);
    suites.push_back(js);
  }
  json out{{"schema", 1},   {"config", cfg}, {"constants", constants}, {"invariants", invariants},
           {"suites", suites}, {"passed", rep.passed}};
  for (const NamedCheck& c : rep.constant_checks)
    if (!c.passed) {
      out["violated_invariant"] = c.name;
      break;
    }
  return out;
}

std::string to_text(const VerifyReport& rep) {
  std::ostringstream os;
  os << "ring " << rep.ring_spec << "  seed " << rep.config.seed << "\n";
  for (const NamedCheck& c : rep.constant_checks)
    os << (c.passed ? "  ok    " : "  FAIL  ") << "constants: " << c.name << "\n";
  for (const NamedCheck& c : rep.constant_checks)
    if (!c.passed) {
      os << "violated invariant: " << c.name << "\n";
      break;
    }
  for (const SuiteResult& s : rep.suites) {
    os << "suite " << s.name << ": " << (s.passed ? "pass" : "FAIL") << "\n";
    for (auto& [name, c] : s.checks)
      os << (c.failed ? "  FAIL  " : "  ok    ") << name << "  (" << c.passed << " passed, " << c.failed
         << " failed)\n";
    if (s.counterexample) os << "  first counterexample: " << s.counterexample->dump() << "\n";
  }
  os << (rep.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace divq
