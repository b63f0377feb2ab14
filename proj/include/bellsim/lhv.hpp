// Classical oracle for the CHSH bound: exhaustive enumeration of the 16
// deterministic local strategies (a predefined +/-1 answer for each of the
// four local observables) and a sampler producing the trial stream any
// such model, or mixture of them, would generate.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bellsim/sampler.hpp"

namespace bellsim {

// Predefined outcomes for both settings on both sides.
struct Strategy {
  int left_first, left_second;    // +1 or -1
  int right_first, right_second;  // +1 or -1

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

// All 2^4 sign assignments in lexicographic order with +1 before -1,
// coordinates ordered (left_first, left_second, right_first, right_second).
// Index 0 is (+1,+1,+1,+1).
std::array<Strategy, 16> enumerate_strategies();

// Signed CHSH combination AB - Ab - aB - ab for the fixed values;
// always +/-2 for a deterministic strategy.
double strategy_chsh_signed(const Strategy& s);

// |AB - Ab - aB - ab|; exactly 2 for every deterministic strategy.
double strategy_chsh(const Strategy& s);

// Maximum of strategy_chsh over the full enumeration. Equals 2; mixtures
// cannot exceed it since the combination is affine in the mixing weights.
double lhv_chsh_max();

// |sum_s w_s * (AB - Ab - aB - ab)_s| for a probability vector w over the
// 16 strategies.
double mixture_chsh(std::span<const double> weights);

// Each trial picks a strategy from the mixture and an independent uniform
// setting pair, then reports the strategy's predetermined values.
// Weights must be nonnegative and sum to 1 within 1e-9.
std::vector<TrialRecord> lhv_sample(std::span<const double> weights,
                                    std::uint64_t n, std::uint64_t seed,
                                    int workers = 1);

inline std::vector<double> uniform_mixture() {
  return std::vector<double>(16, 1.0 / 16.0);
}

}  // namespace bellsim
