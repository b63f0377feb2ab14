// JSON reports, one shape per subcommand, all carrying the versioned
// envelope {schema: "bellsim-report/1", kind, provenance}. nlohmann::json
// keeps keys sorted and prints shortest round-trip numbers, so serialized
// reports are byte-stable for equal inputs.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "bellsim/experiment.hpp"
#include "bellsim/povm.hpp"
#include "bellsim/sampler.hpp"

namespace bellsim {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "bellsim-report/1";

struct ReportProvenance {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config_hash;
};

Json direction_json(const Direction& d);           // [x, y, z]
Json settings_json(const ChshSettings& settings);  // {A, a, B, b}
Json matrix_json(const Matrix& m);                 // rows of [re, im] pairs

// Exact pipeline: combined value, per-block correlators and probabilities,
// and the full 16-entry joint table.
Json chsh_exact_report(const ChshResult& result, const JointOutcomeTable& table,
                       const ReportProvenance& prov);

// Sampled pipeline; `source` names the stream that produced the trials
// ("quantum" or "lhv").
Json chsh_sample_report(const ChshEstimate& est, const std::string& source,
                        double eta_left, double eta_right,
                        const ReportProvenance& prov);

// The classical bound plus the per-strategy table behind it.
Json lhv_max_report(const ReportProvenance& prov);

Json povm_validation_report(const PovmValidation& left,
                            const PovmValidation& right,
                            const ChshSettings& settings,
                            const ReportProvenance& prov);

// Builds both per-side dilations and reports branches, tags and the
// equivalence residual over the standard probe states.
Json dilation_report(const ChshSettings& settings, const ReportProvenance& prov);

Json budget_report(double selection_time, double measurement_time,
                   const ReportProvenance& prov);

// Structural check of the envelope and the kind-specific required fields.
// Returns an empty string when the report is well formed, else a message
// naming the first offending field.
std::string validate_report(const Json& report);

}  // namespace bellsim
