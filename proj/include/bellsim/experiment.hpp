// Exact quantum predictions for a bipartite state measured with one
// 4-outcome POVM per side: the 16-entry joint outcome distribution, the
// conditioned correlators over setting-blocks, and the CHSH quantity.

#pragma once

#include <array>
#include <string>

#include "bellsim/direction.hpp"
#include "bellsim/povm.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

// 4x4 probability table over paired outcome labels, row = left element
// index, column = right element index (both in POVM element order).
class JointOutcomeTable {
 public:
  JointOutcomeTable(Povm left, Povm right, std::array<double, 16> probabilities,
                    std::string state_descriptor);

  double probability(int left_index, int right_index) const {
    return p_[left_index * 4 + right_index];
  }
  double probability(const OutcomeLabel& l, const OutcomeLabel& r) const;

  const Povm& left() const { return left_; }
  const Povm& right() const { return right_; }
  const std::string& state_descriptor() const { return state_descriptor_; }

  // Probability that the left outcome carries ls and the right rs.
  double block_probability(Setting ls, Setting rs) const;

  double total() const;

 private:
  Povm left_, right_;
  std::array<double, 16> p_;
  std::string state_descriptor_;
};

// entry(i, j) = <psi| E_i (x) F_j |psi>. Both POVMs must pass validation
// and carry the four standard labels. Tiny negative rounding residues are
// clamped to zero; the total must be 1 within tolerance.
JointOutcomeTable joint_outcome_table(const PureState& state, const Povm& left,
                                      const Povm& right,
                                      std::string state_descriptor = "pure");

// Density-matrix variant: entry(i, j) = Tr(rho (E_i (x) F_j)).
JointOutcomeTable joint_outcome_table(const DensityMatrix& state,
                                      const Povm& left, const Povm& right,
                                      std::string state_descriptor = "mixed");

// Signed-over-total ratio on the designated setting-block:
// (P++ - P+- - P-+ + P--) / (P++ + P+- + P-+ + P--).
// Throws when the block probability vanishes.
double conditional_correlator(const JointOutcomeTable& t, Setting left_setting,
                              Setting right_setting);

struct ChshSettings {
  Direction left_first, left_second, right_first, right_second;
};

// Correlators and block probabilities are stored in block order
// (first,first), (first,second), (second,first), (second,second).
struct ChshResult {
  double value;
  std::array<double, 4> correlators;
  std::array<double, 4> block_probabilities;
  ChshSettings settings;
};

// Builds one POVM per side from the four axes, takes the four conditioned
// correlators c_xy of the joint table, and returns
// |c_11 - c_12 - c_21 - c_22| (that exact sign pattern, no canonicalization).
ChshResult chsh_value(const PureState& state, const Direction& left_first,
                      const Direction& left_second, const Direction& right_first,
                      const Direction& right_second);

}  // namespace bellsim
