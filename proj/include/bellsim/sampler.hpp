// Seeded Monte Carlo generation of coincidence trials from the exact joint
// distribution, detection-efficiency thinning, and the plug-in CHSH
// estimator with binomial standard errors.
//
// Every trial draws from its own counter-based stream keyed by
// (seed, trial index), so a run is reproducible bit-for-bit and identical
// for any worker count; estimators are commutative folds over records.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bellsim/experiment.hpp"
#include "bellsim/povm.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

// One simulated coincidence event.
struct TrialRecord {
  std::uint64_t index = 0;
  OutcomeLabel left{Setting::First, +1};
  OutcomeLabel right{Setting::First, +1};
  bool left_detected = true;
  bool right_detected = true;

  bool coincident() const { return left_detected && right_detected; }
};

// Each trial is drawn independently from the 16-entry joint distribution
// by inverse CDF in row-major element order. workers >= 1 splits the index
// range across threads; the output does not depend on the split.
std::vector<TrialRecord> sample_trials(const PureState& state, const Povm& left,
                                       const Povm& right, std::uint64_t n,
                                       std::uint64_t seed, int workers = 1);

// As above but drawing from an already-built table (the sampling path used
// internally; exposed for callers that reuse one table). first_index shifts
// the trial indices, so successive batches under one seed draw from
// disjoint streams.
std::vector<TrialRecord> sample_trials(const JointOutcomeTable& table,
                                       std::uint64_t n, std::uint64_t seed,
                                       int workers = 1,
                                       std::uint64_t first_index = 0);

// Independent per-side Bernoulli detection with the given efficiencies.
// Outcome-independent by construction (fair sampling).
std::vector<TrialRecord> apply_detection(std::vector<TrialRecord> trials,
                                         double eta_left, double eta_right,
                                         std::uint64_t seed);

struct ChshEstimate {
  double estimate = 0.0;
  double estimate_stderr = 0.0;  // root-sum-square of the four block errors
  // Block order: (first,first), (first,second), (second,first), (second,second)
  std::array<double, 4> correlators{};
  std::array<double, 4> stderrs{};
  std::array<std::uint64_t, 4> block_counts{};
  std::uint64_t total_trials = 0;
  std::uint64_t coincidences = 0;
  std::uint64_t seed = 0;
};

// Per-block correlator (N++ - N+- - N-+ + N--)/N over coincident trials,
// combined as |c_11 - c_12 - c_21 - c_22|; per-block standard error
// sqrt((1 - c^2)/N). Throws ValidationError if any block is empty.
ChshEstimate estimate_chsh(std::span<const TrialRecord> trials,
                           std::uint64_t seed_for_provenance = 0);

// Exact-weight variant of the same fold: feeds the 16 table probabilities
// in place of sampled counts. Reproduces chsh_value on the same table.
struct WeightedChsh {
  double value = 0.0;
  std::array<double, 4> correlators{};
  std::array<double, 4> block_weights{};
};

WeightedChsh chsh_from_weights(const JointOutcomeTable& table);

// CSV trial stream:
//   header comments with seed/config provenance, then
//   trial,left_setting,left_value,right_setting,right_value,left_det,right_det
struct CsvProvenance {
  std::uint64_t seed = 0;
  std::string config_hash;  // e.g. "fnv1a:0123456789abcdef"; may be empty
};

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials,
                      const CsvProvenance& provenance);

}  // namespace bellsim
