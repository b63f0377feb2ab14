#include "bellsim/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bellsim/parallel.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

std::array<Strategy, 16> enumerate_strategies() {
  std::array<Strategy, 16> out;
  for (int k = 0; k < 16; ++k) {
    // bit 0 of the sign index means +1; MSB-first over the four coordinates
    auto sign = [k](int bit) { return (k >> bit) & 1 ? -1 : +1; };
    out[k] = Strategy{sign(3), sign(2), sign(1), sign(0)};
  }
  return out;
}

double strategy_chsh_signed(const Strategy& s) {
  return static_cast<double>(s.left_first * s.right_first -
                             s.left_first * s.right_second -
                             s.left_second * s.right_first -
                             s.left_second * s.right_second);
}

double strategy_chsh(const Strategy& s) { return std::abs(strategy_chsh_signed(s)); }

double lhv_chsh_max() {
  double best = 0.0;
  for (const Strategy& s : enumerate_strategies()) {
    best = std::max(best, strategy_chsh(s));
  }
  return best;
}

namespace {

void check_weights(std::span<const double> weights) {
  if (weights.size() != 16) {
    throw std::invalid_argument("mixture must have 16 weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("mixture weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1, got " +
                                std::to_string(total));
  }
}

}  // namespace

double mixture_chsh(std::span<const double> weights) {
  check_weights(weights);
  const auto strategies = enumerate_strategies();
  double s = 0.0;
  for (int k = 0; k < 16; ++k) s += weights[k] * strategy_chsh_signed(strategies[k]);
  return std::abs(s);
}

std::vector<TrialRecord> lhv_sample(std::span<const double> weights,
                                    std::uint64_t n, std::uint64_t seed,
                                    int workers) {
  check_weights(weights);
  if (n < 1) {
    throw std::invalid_argument("lhv_sample: trial count must be >= 1");
  }

  std::array<double, 16> cdf{};
  double acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    acc += weights[k];
    cdf[k] = acc;
  }
  const auto strategies = enumerate_strategies();

  std::vector<TrialRecord> trials(n);
  run_partitioned(n, workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(seed, StreamPurpose::HiddenVariable, t);
      // draw order: strategy, left setting, right setting
      const double u = rng.next_unit();
      int pick = 15;
      for (int k = 0; k < 16; ++k) {
        if (u < cdf[k]) {
          pick = k;
          break;
        }
      }
      const Strategy& s = strategies[pick];
      const Setting ls = rng.next_unit() < 0.5 ? Setting::First : Setting::Second;
      const Setting rs = rng.next_unit() < 0.5 ? Setting::First : Setting::Second;
      trials[t] = TrialRecord{
          t,
          {ls, ls == Setting::First ? s.left_first : s.left_second},
          {rs, rs == Setting::First ? s.right_first : s.right_second},
          true,
          true};
    }
  });
  return trials;
}

}  // namespace bellsim
