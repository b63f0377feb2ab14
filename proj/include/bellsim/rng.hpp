// Counter-based pseudo-random streams, fixed in this repo so every result
// is bit-reproducible and independent of how trials are scheduled.
//
// Scheme: one stream per (seed, purpose, trial index). The stream's
// initial state is a SplitMix64-finalizer hash of those three words;
// successive draws are plain SplitMix64 steps (state += golden gamma,
// output = finalizer(state)). With at most a handful of draws per trial,
// stream collisions are negligible (< 2^-40 for 10^6 trials).

#pragma once

#include <cstdint>

namespace bellsim {

// SplitMix64 finalizer (Stafford mix13); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Distinct salts keep outcome sampling, detection thinning and the
// hidden-variable sampler on unrelated streams even under equal seeds.
enum class StreamPurpose : std::uint64_t {
  Outcome = 0x243F6A8885A308D3ULL,
  Detection = 0x13198A2E03707344ULL,
  HiddenVariable = 0xA4093822299F31D0ULL,
};

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t trial_index)
      : state_(mix64(mix64(seed ^ static_cast<std::uint64_t>(purpose)) +
                     mix64(trial_index + 0x9E3779B97F4A7C15ULL))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace bellsim
