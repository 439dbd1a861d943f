#include "divq/verify.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace divq;
using nlohmann::json;

namespace {
json read_golden(const std::string& name) {
  std::ifstream f(std::string(DIVQ_TEST_DATA) + "/" + name);
  REQUIRE(f.good());
  return json::parse(f);
}

VerifyConfig small(const std::string& ring) {
  VerifyConfig c;
  c.ring = ring;
  c.samples = 6;
  c.bound = 2;
  return c;
}
}  // namespace

TEST_CASE("constants match the golden files") {
  for (auto [ring, file] : {std::pair{"d=-1;S=2r", "constants_d-1_2r.json"}, std::pair{"d=-5;S=2r", "constants_d-5_2r.json"}}) {
    SRing R = SRing::from_spec(ring);
    CHECK(constants_json(R, compute_constants(R)) == read_golden(file));
  }
}

TEST_CASE("suites pass on small samples") {
  for (const char* ring : {"d=-1;S=2r", "d=-5;S=2r"}) {
    for (const std::string& s : suite_names()) {
      VerifyReport rep = run_verify(small(ring), s);
      REQUIRE(rep.suites.size() == 1);
      CHECK_MESSAGE(rep.passed, ring << " " << s << "\n" << to_text(rep));
      for (const auto& [name, count] : rep.suites[0].checks) {
        CHECK_MESSAGE(count.failed == 0, name);
        CHECK(count.passed > 0);
      }
    }
  }
  CHECK_THROWS(run_verify(small("d=-1;S=2r"), "nope"));
}

TEST_CASE("reports are deterministic and seed dependent") {
  VerifyConfig c = small("d=-1;S=2r");
  std::string a = to_json(run_verify(c, "all")).dump();
  std::string b = to_json(run_verify(c, "all")).dump();
  CHECK(a == b);
  c.seed = 8;
  CHECK(to_json(run_verify(c, "lemmas")).dump() != to_json(run_verify(small("d=-1;S=2r"), "lemmas")).dump());
  json j = json::parse(a);
  CHECK(j["schema"] == 1);
  CHECK(j["passed"] == true);
}

TEST_CASE("a tampered q is caught") {
  VerifyConfig c = small("d=-1;S=2r");
  c.q_override = Integer(3);
  VerifyReport rep = run_verify(c, "neq");
  CHECK_FALSE(rep.passed);
  json j = to_json(rep);
  CHECK(j["violated_invariant"] == "q > 4/C^2");
  CHECK(to_text(rep).find("violated invariant: q > 4/C^2") != std::string::npos);
}
