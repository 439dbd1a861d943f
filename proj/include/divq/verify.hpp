#ifndef DIVQ_VERIFY_HPP
#define DIVQ_VERIFY_HPP

#include "divq/construct.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace divq {

struct VerifyConfig {
  std::string ring = "d=-1;S=2r";
  long scan_bound = 2000;
  long bound = 6;
  long samples = 0;  // 0 picks each suite's default
  std::uint64_t seed = 7;
  std::optional<Integer> q_override;  // fault injection
};

struct CheckCount {
  long passed = 0;
  long failed = 0;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::map<std::string, CheckCount> checks;
  std::map<std::string, long> counters;
  std::optional<nlohmann::json> counterexample;  // first failure only
};

struct VerifyReport {
  VerifyConfig config;
  std::string ring_spec;
  Constants constants;
  std::vector<NamedCheck> constant_checks;
  std::vector<SuiteResult> suites;
  bool passed = true;
};

/// produnits, neq, sq, lemmas
const std::vector<std::string>& suite_names();

/// suite is one of suite_names() or "all".
VerifyReport run_verify(const VerifyConfig& config, const std::string& suite);

nlohmann::json constants_json(const SRing& R, const Constants& C);
nlohmann::json to_json(const VerifyReport& report);
std::string to_text(const VerifyReport& report);

}  // namespace divq

#endif
