#include "doctest.h"

#include <cmath>

#include "bellsim/budget.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/report.hpp"
#include "bellsim/sampler.hpp"

using namespace bellsim;

namespace {

const ChshSettings kSettings{Direction(1, 0, 0), Direction(0, 0, 1),
                             Direction(-1, 0, 1), Direction(1, 0, 1)};

Json exact_report() {
  const ChshResult r = chsh_value(singlet(), kSettings.left_first,
                                  kSettings.left_second, kSettings.right_first,
                                  kSettings.right_second);
  const JointOutcomeTable t = joint_outcome_table(
      singlet(),
      build_epr_povm(kSettings.left_first, kSettings.left_second),
      build_epr_povm(kSettings.right_first, kSettings.right_second), "singlet");
  return chsh_exact_report(r, t, {std::nullopt, "fnv1a:0011223344556677"});
}

}  // namespace

TEST_CASE("exact report carries the headline value") {
  const Json j = exact_report();
  CHECK(j["schema"] == "bellsim-report/1");
  CHECK(j["kind"] == "chsh-exact");
  CHECK(std::abs(j["value"].get<double>() - 2.8284271247461903) < 1e-12);
  CHECK(j["correlators"].size() == 4);
  CHECK(std::abs(j["block_probabilities"]["AB"].get<double>() - 0.25) < 1e-12);
  CHECK(j["settings"]["A"][0] == 1.0);
  CHECK(j["provenance"]["config_hash"] == "fnv1a:0011223344556677");
  CHECK(j["table"].size() == 4);
  CHECK(validate_report(j).empty());
}

TEST_CASE("sample report round trips the estimate") {
  std::vector<TrialRecord> trials;
  for (int b = 0; b < 4; ++b) {
    const Setting ls = b / 2 == 0 ? Setting::First : Setting::Second;
    const Setting rs = b % 2 == 0 ? Setting::First : Setting::Second;
    trials.push_back(TrialRecord{static_cast<std::uint64_t>(2 * b),
                                 {ls, +1}, {rs, +1}, true, true});
    trials.push_back(TrialRecord{static_cast<std::uint64_t>(2 * b + 1),
                                 {ls, -1}, {rs, +1}, true, true});
  }
  const ChshEstimate est = estimate_chsh(trials, 12);
  const Json j = chsh_sample_report(est, "quantum", 1.0, 0.75, {12, "fnv1a:aa"});

  CHECK(j["kind"] == "chsh-sample");
  CHECK(j["source"] == "quantum");
  CHECK(j["value"] == est.estimate);
  CHECK(j["stderr"] == est.estimate_stderr);
  CHECK(j["correlators"]["AB"]["count"] == 2);
  CHECK(j["trials"]["total"] == 8);
  CHECK(j["trials"]["coincidences"] == 8);
  CHECK(j["detection"]["eta_right"] == 0.75);
  CHECK(j["provenance"]["seed"] == 12);
  CHECK(validate_report(j).empty());

  // serialized form re-parses to the same document
  CHECK(Json::parse(j.dump(2)) == j);
}

TEST_CASE("lhv report tabulates all strategies at the bound") {
  const Json j = lhv_max_report({});
  CHECK(j["kind"] == "lhv-max");
  CHECK(j["bound"] == 2.0);
  REQUIRE(j["strategies"].size() == 16);
  for (const auto& s : j["strategies"]) {
    CHECK(s["chsh"] == 2.0);
    CHECK(std::abs(s["chsh_signed"].get<double>()) == 2.0);
  }
  CHECK_FALSE(j.contains("provenance"));
  CHECK(validate_report(j).empty());
}

TEST_CASE("povm validation report") {
  const PovmValidation left = validate_povm(
      build_epr_povm(kSettings.left_first, kSettings.left_second));
  const PovmValidation right = validate_povm(
      build_epr_povm(kSettings.right_first, kSettings.right_second));
  const Json j = povm_validation_report(left, right, kSettings, {});
  CHECK(j["kind"] == "validate-povm");
  CHECK(j["pass"] == true);
  CHECK(j["sides"]["left"]["elements"].size() == 4);
  CHECK(j["sides"]["right"]["completeness_ok"] == true);
  CHECK(validate_report(j).empty());
}

TEST_CASE("dilation report") {
  const Json j = dilation_report(kSettings, {});
  CHECK(j["kind"] == "dilate");
  CHECK(j["pass"] == true);
  CHECK(j["tolerance"] == 1e-9);
  for (const char* side : {"left", "right"}) {
    CHECK(j["sides"][side]["equivalence_residual"].get<double>() < 1e-12);
    REQUIRE(j["sides"][side]["branches"].size() == 4);
    // 4x4 projector, entries as [re, im]
    const auto& proj = j["sides"][side]["branches"][0]["projector"];
    REQUIRE(proj.size() == 4);
    REQUIRE(proj[0].size() == 4);
    CHECK(proj[0][0].size() == 2);
  }
  CHECK(validate_report(j).empty());
}

TEST_CASE("budget report") {
  const Json j = budget_report(4e-7, 9e-7, {std::nullopt, "fnv1a:bb"});
  CHECK(j["kind"] == "budget");
  CHECK(j["saving"] == kSpeedOfLight * 4e-7);
  CHECK(j["detection_threshold"] == 0.828);
  CHECK(std::abs(j["standard_min_separation"].get<double>() - 389.7301954) < 1e-6);
  CHECK(validate_report(j).empty());
}

TEST_CASE("validator rejects malformed reports") {
  CHECK_FALSE(validate_report(Json::array()).empty());
  CHECK_FALSE(validate_report(Json{{"kind", "budget"}}).empty());

  Json j = exact_report();
  SUBCASE("wrong schema tag") {
    j["schema"] = "bellsim-report/2";
    CHECK(validate_report(j).find("schema") != std::string::npos);
  }
  SUBCASE("unknown kind") {
    j["kind"] = "chsh-fancy";
    CHECK(validate_report(j).find("kind") != std::string::npos);
  }
  SUBCASE("missing required field") {
    j.erase("value");
    CHECK(validate_report(j).find("value") != std::string::npos);
  }
  SUBCASE("missing block key") {
    j["correlators"].erase("aB");
    CHECK(validate_report(j).find("aB") != std::string::npos);
  }
  SUBCASE("bad provenance") {
    j["provenance"]["seed"] = -4;
    CHECK(validate_report(j).find("seed") != std::string::npos);
  }
}

TEST_CASE("serialization is byte-stable") {
  CHECK(exact_report().dump(2) == exact_report().dump(2));
  CHECK(lhv_max_report({}).dump() == lhv_max_report({}).dump());
}
