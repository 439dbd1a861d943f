// divq: command-line front end for the S-integer divisibility toolkit.

#include "divq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace divq;
using nlohmann::json;

namespace {

struct Common {
  long d = -1;
  std::string S = "2r";
  long scan_bound = 2000;
  bool as_json = false;
  std::string out;

  std::string ring() const { return "d=" + std::to_string(d) + ";S=" + S; }
};

void add_common(CLI::App* cmd, Common& c, bool with_s = true) {
  cmd->add_option("-d", c.d, "squarefree d < 0, K = Q(sqrt d)")->capture_default_str();
  if (with_s) cmd->add_option("-S", c.S, "primes of S, e.g. 2r or 5s1,5s2")->capture_default_str();
  cmd->add_flag("--json", c.as_json, "JSON output");
  cmd->add_option("--out", c.out, "write output to this file");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot open " + c.out);
  f << text;
}

void emit(const Common& c, const json& j, const std::string& text) { emit(c, c.as_json ? j.dump(2) + "\n" : text); }

std::string labels(const std::vector<PrimeIdeal>& ps) {
  std::string s;
  for (const PrimeIdeal& P : ps) s += (s.empty() ? "" : " ") + P.label();
  return s;
}

void cmd_field(const Common& c) {
  Field F(c.d);
  json units = json::array();
  for (const KElem& u : F.torsion_units()) units.push_back(format_kelem(u));
  json j{{"d", F.d()},
         {"disc", F.disc()},
         {"omega_sq", "w^2 = " + std::to_string(F.trace()) + "*w + " + std::to_string(F.omega_sq_const())},
         {"w", F.torsion_order()},
         {"torsion_units", units},
         {"class_number", class_number(F)}};
  std::ostringstream os;
  os << "K = Q(sqrt " << F.d() << ")\n"
     << "D = " << F.disc() << "\n"
     << "w^2 = " << F.trace() << "*w + " << F.omega_sq_const() << "\n"
     << "units w = " << F.torsion_order() << ":";
  for (const KElem& u : F.torsion_units()) os << " " << format_kelem(u);
  os << "\nh = " << class_number(F) << "\n";
  emit(c, j, os.str());
}

void cmd_factor(const Common& c, bool have_s, const std::string& text) {
  Field F(c.d);
  KElem a = parse_kelem(text);
  if (a.is_zero()) throw PreconditionError("factor: zero has no factorization");
  Factorization fac = factor_element(F, a);
  json j{{"element", format_kelem(a)}, {"norm", to_string(F.norm(a))}, {"ideal", format_factorization(fac)}};
  std::ostringstream os;
  os << "element  " << format_kelem(a) << "\nnorm     " << to_string(F.norm(a)) << "\nideal    "
     << (fac.empty() ? "(1)" : format_factorization(fac)) << "\n";
  if (have_s) {
    SRing R = SRing::from_spec(c.ring());
    j["s_unit"] = is_s_unit(R, a);
    if (is_s_unit(R, a)) {
      try {
        UnitExponents u = unit_decompose(R, a);
        std::string s = "zeta^" + std::to_string(u.torsion);
        for (std::size_t i = 0; i < u.exponents.size(); ++i)
          s += " * (" + format_kelem(R.generators()[i]) + ")^" + std::to_string(u.exponents[i]);
        j["unit"] = s;
        os << "s-unit   " << s << "   (zeta = " << format_kelem(R.torsion_generator()) << ")\n";
      } catch (const NotInLatticeError& e) {
        j["unit"] = nullptr;
        os << "s-unit   outside the generator lattice: " << e.what() << "\n";
      }
    }
  }
  emit(c, j, os.str());
}

void cmd_sunits(const Common& c) {
  SRing R = SRing::from_spec(c.ring());
  json gens = json::array();
  std::ostringstream os;
  os << "S = " << labels(R.primes()) << "\nh = " << R.class_number() << "\nzeta = "
     << format_kelem(R.torsion_generator()) << " (order " << R.unit_count() << ")\n";
  for (std::size_t i = 0; i < R.rank(); ++i) {
    gens.push_back(json{{"prime", R.primes()[i].label()},
                        {"class_order", R.class_orders()[i]},
                        {"generator", format_kelem(R.generators()[i])}});
    os << "pi_" << i + 1 << " = " << format_kelem(R.generators()[i]) << "   generates " << R.primes()[i].label()
       << "^" << R.class_orders()[i] << "\n";
  }
  json j{{"ring", format_ring_spec(R.spec())},
         {"class_number", R.class_number()},
         {"torsion_generator", format_kelem(R.torsion_generator())},
         {"u_K", R.unit_count()},
         {"generators", gens}};
  emit(c, j, os.str());
}

void cmd_lenstra(const Common& c) {
  SRing R = SRing::from_spec(c.ring());
  LenstraPair L = find_lenstra_pair(R, c.scan_bound);
  json j{{"p", L.p.get_str()}, {"b", L.b.get_str()}, {"prime", L.prime.label()}, {"index", L.index.get_str()}};
  emit(c, j,
       "p = " + L.p.get_str() + "  b = " + L.b.get_str() + "  prime " + L.prime.label() + "  index " +
           L.index.get_str() + "\n");
}

void cmd_constants(const Common& c) {
  SRing R = SRing::from_spec(c.ring());
  Constants C = compute_constants(R, c.scan_bound);
  json j = constants_json(R, C);
  std::ostringstream os;
  for (auto& [k, v] : j.items()) os << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  emit(c, j, os.str());
}

void cmd_build(const Common& c, const std::string& which) {
  SRing R = SRing::from_spec(c.ring());
  Constants C = compute_constants(R, c.scan_bound);
  Formula f;
  if (which == "neq") f = build_neq(R, C);
  else if (which == "produnits") f = build_produnits(R, C);
  else if (which == "phi-inf") f = build_phi_inf(R, C);
  else if (which == "sq") f = build_sq(R, C);
  else throw PreconditionError("build: unknown formula '" + which + "'");
  std::string text = print_formula(f) + "\n";
  auto fv = free_variables(f);
  std::vector<std::string> free(fv.begin(), fv.end());
  json j{{"formula", which}, {"ring", format_ring_spec(R.spec())}, {"free", free}, {"atoms", atom_count(f)},
         {"text", print_formula(f)}};
  emit(c, j, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive-existential divisibility formulas over rings of S-integers"};
  app.require_subcommand(1);

  Common c;
  auto* field = app.add_subcommand("field", "field data for Q(sqrt d)");
  add_common(field, c, false);

  std::string element;
  auto* factor = app.add_subcommand("factor", "ideal factorization of an element");
  add_common(factor, c);
  factor->add_option("element", element, "e.g. 2, 1 + w, (1 - w)/2")->required();

  auto* sunits = app.add_subcommand("sunits", "S-unit generators");
  add_common(sunits, c);

  auto* lenstra = app.add_subcommand("lenstra", "find (p, b) with p x + b never an S-unit");
  add_common(lenstra, c);
  lenstra->add_option("--scan-bound", c.scan_bound)->capture_default_str();

  auto* constants = app.add_subcommand("constants", "all constants of the formulas");
  add_common(constants, c);
  constants->add_option("--scan-bound", c.scan_bound)->capture_default_str();

  std::string which;
  auto* build = app.add_subcommand("build", "emit a formula as an S-expression");
  add_common(build, c);
  build->add_option("formula", which, "neq, produnits, phi-inf or sq")
      ->required()
      ->check(CLI::IsMember({"neq", "produnits", "phi-inf", "sq"}));
  build->add_option("--scan-bound", c.scan_bound)->capture_default_str();

  VerifyConfig vc;
  std::string suite = "all";
  std::string override_q;
  auto* verify = app.add_subcommand("verify", "run property suites");
  add_common(verify, c);
  verify->add_option("suite", suite, "produnits, neq, sq, lemmas or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"produnits", "neq", "sq", "lemmas", "all"}));
  verify->add_option("--scan-bound", c.scan_bound)->capture_default_str();
  verify->add_option("--bound", vc.bound, "search height bound B")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_option("--samples", vc.samples, "samples per suite (0: suite defaults)")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", vc.seed)->capture_default_str();
  verify->add_option("--override-q", override_q, "replace the computed q (fault injection)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*field) cmd_field(c);
    if (*factor) cmd_factor(c, factor->count("-S") > 0, element);
    if (*sunits) cmd_sunits(c);
    if (*lenstra) cmd_lenstra(c);
    if (*constants) cmd_constants(c);
    if (*build) cmd_build(c, which);
    if (*verify) {
      vc.ring = c.ring();
      vc.scan_bound = c.scan_bound;
      if (!override_q.empty()) vc.q_override = Integer(override_q);
      VerifyReport rep = run_verify(vc, suite);
      emit(c, to_json(rep), to_text(rep));
      return rep.passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
