// Experiment configuration: a diff-friendly key/value text format with
// dotted keys (section headers like [directions] are also accepted and
// simply prefix the keys that follow). All numbers are decimal.
//
//   directions.A = [1, 0, 0]
//   directions.a = [0, 0, 1]
//   directions.B = [-1, 0, 1]
//   directions.b = [1, 0, 1]
//   sampling.n = 1000000
//   sampling.seed = 42
//   detection.eta_left = 1.0
//   detection.eta_right = 1.0
//   mode = sample            # exact | sample | lhv
//   lhv.weights = [...]      # optional, 16 entries, default uniform
//   budget.t_s = 9e-7        # optional, seconds
//   budget.t_m = 4e-7        # optional, seconds

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bellsim/direction.hpp"

namespace bellsim {

// Malformed or schema-violating configuration; the message carries the
// offending field path. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class RunMode { Exact, Sample, Lhv };

const char* to_string(RunMode m);

struct ExperimentConfig {
  // measurement axes: left POVM from (A, a), right POVM from (B, b)
  Direction left_first{1, 0, 0};
  Direction left_second{0, 0, 1};
  Direction right_first{1, 0, 0};
  Direction right_second{0, 0, 1};

  std::uint64_t n = 0;  // must be >= 1 before sampling
  std::uint64_t seed = 0;
  double eta_left = 1.0;
  double eta_right = 1.0;
  RunMode mode = RunMode::Exact;

  std::optional<std::array<double, 16>> lhv_weights;
  std::optional<double> budget_selection_time;    // seconds
  std::optional<double> budget_measurement_time;  // seconds
};

// Throws ConfigError naming the field path on any schema violation
// (unknown key, wrong arity/type, unnormalizable direction, missing
// required direction).
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::string& source_name = "<config>");

ExperimentConfig load_config_file(const std::string& path);

// Normalized rendering of the effective configuration: fixed key order,
// shortest round-trip number formatting. Two configs with equal canonical
// text behave identically.
std::string canonical_text(const ExperimentConfig& cfg);

// FNV-1a 64 over canonical_text, rendered as "fnv1a:<16 hex digits>".
// Provenance fingerprint, not a cryptographic hash.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace bellsim
