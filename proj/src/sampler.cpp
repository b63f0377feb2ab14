#include "bellsim/sampler.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "bellsim/errors.hpp"
#include "bellsim/parallel.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

namespace {

int block_index(Setting l, Setting r) {
  return (l == Setting::First ? 0 : 2) + (r == Setting::First ? 0 : 1);
}

}  // namespace

std::vector<TrialRecord> sample_trials(const JointOutcomeTable& table,
                                       std::uint64_t n, std::uint64_t seed,
                                       int workers, std::uint64_t first_index) {
  if (n < 1) {
    throw std::invalid_argument("sample_trials: trial count must be >= 1");
  }

  // inverse-CDF bins in row-major element order
  std::array<double, 16> cdf{};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      acc += table.probability(i, j);
      cdf[i * 4 + j] = acc;
    }

  std::vector<TrialRecord> trials(n);
  run_partitioned(n, workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::uint64_t index = first_index + t;
      TrialRng rng(seed, StreamPurpose::Outcome, index);
      const double u = rng.next_unit();
      int cell = 15;
      for (int k = 0; k < 16; ++k) {
        if (u < cdf[k]) {
          cell = k;
          break;
        }
      }
      trials[t] = TrialRecord{index, table.left().elements()[cell / 4].label,
                              table.right().elements()[cell % 4].label, true,
                              true};
    }
  });
  return trials;
}

std::vector<TrialRecord> sample_trials(const PureState& state, const Povm& left,
                                       const Povm& right, std::uint64_t n,
                                       std::uint64_t seed, int workers) {
  return sample_trials(joint_outcome_table(state, left, right), n, seed,
                       workers);
}

std::vector<TrialRecord> apply_detection(std::vector<TrialRecord> trials,
                                         double eta_left, double eta_right,
                                         std::uint64_t seed) {
  if (!(eta_left >= 0.0 && eta_left <= 1.0) ||
      !(eta_right >= 0.0 && eta_right <= 1.0)) {
    throw std::invalid_argument("apply_detection: efficiencies must be in [0,1]");
  }
  for (auto& trial : trials) {
    TrialRng rng(seed, StreamPurpose::Detection, trial.index);
    trial.left_detected = rng.next_unit() < eta_left;
    trial.right_detected = rng.next_unit() < eta_right;
  }
  return trials;
}

namespace {

struct BlockFold {
  std::array<double, 4> signed_sum{};
  std::array<double, 4> weight{};

  void add(const OutcomeLabel& l, const OutcomeLabel& r, double w) {
    const int b = block_index(l.setting, r.setting);
    signed_sum[b] += l.value * r.value * w;
    weight[b] += w;
  }
};

}  // namespace

ChshEstimate estimate_chsh(std::span<const TrialRecord> trials,
                           std::uint64_t seed_for_provenance) {
  BlockFold fold;
  ChshEstimate est;
  est.total_trials = trials.size();
  est.seed = seed_for_provenance;
  for (const auto& trial : trials) {
    if (!trial.coincident()) continue;
    ++est.coincidences;
    fold.add(trial.left, trial.right, 1.0);
  }

  double var_sum = 0.0;
  for (int b = 0; b < 4; ++b) {
    est.block_counts[b] = static_cast<std::uint64_t>(fold.weight[b]);
    if (fold.weight[b] < 1.0) {
      throw ValidationError(
          "estimate_chsh: no coincident trials in setting-block " +
          std::to_string(b) + " (insufficient data)");
    }
    const double c = fold.signed_sum[b] / fold.weight[b];
    est.correlators[b] = c;
    const double var = std::max(0.0, 1.0 - c * c) / fold.weight[b];
    est.stderrs[b] = std::sqrt(var);
    var_sum += var;
  }
  est.estimate = std::abs(est.correlators[0] - est.correlators[1] -
                          est.correlators[2] - est.correlators[3]);
  est.estimate_stderr = std::sqrt(var_sum);
  return est;
}

WeightedChsh chsh_from_weights(const JointOutcomeTable& table) {
  BlockFold fold;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      fold.add(table.left().elements()[i].label,
               table.right().elements()[j].label, table.probability(i, j));

  WeightedChsh out;
  for (int b = 0; b < 4; ++b) {
    if (fold.weight[b] <= 1e-12) {
      throw ValidationError("chsh_from_weights: vanishing block weight");
    }
    out.correlators[b] = fold.signed_sum[b] / fold.weight[b];
    out.block_weights[b] = fold.weight[b];
  }
  out.value = std::abs(out.correlators[0] - out.correlators[1] -
                       out.correlators[2] - out.correlators[3]);
  return out;
}

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials,
                      const CsvProvenance& provenance) {
  os << "# bellsim-trials/1 seed=" << provenance.seed;
  if (!provenance.config_hash.empty()) os << " config=" << provenance.config_hash;
  os << "\n";
  os << "trial,left_setting,left_value,right_setting,right_value,left_det,"
        "right_det\n";
  for (const auto& t : trials) {
    os << t.index << ',' << to_string(t.left.setting) << ',' << t.left.value
       << ',' << to_string(t.right.setting) << ',' << t.right.value << ','
       << (t.left_detected ? 1 : 0) << ',' << (t.right_detected ? 1 : 0)
       << '\n';
  }
}

}  // namespace bellsim
