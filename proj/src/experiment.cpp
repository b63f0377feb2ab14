#include "bellsim/experiment.hpp"

#include <cmath>
#include <stdexcept>

#include "bellsim/errors.hpp"

namespace bellsim {

namespace {

constexpr std::array<OutcomeLabel, 4> kStandardLabels = {
    OutcomeLabel{Setting::First, +1}, OutcomeLabel{Setting::First, -1},
    OutcomeLabel{Setting::Second, +1}, OutcomeLabel{Setting::Second, -1}};

void require_standard_povm(const Povm& p, const char* side) {
  const PovmValidation v = validate_povm(p);
  if (!v.pass) {
    std::string what = std::string("joint_outcome_table: ") + side +
                       " POVM fails validation:";
    for (const auto& f : v.failures) what += " " + f + ";";
    throw ValidationError(what);
  }
  if (p.size() != 4) {
    throw ValidationError(std::string("joint_outcome_table: ") + side +
                          " POVM must have 4 elements");
  }
  for (const auto& label : kStandardLabels) {
    if (p.index_of(label) < 0) {
      throw ValidationError(std::string("joint_outcome_table: ") + side +
                            " POVM lacks label " + to_string(label));
    }
  }
}

template <typename State>
JointOutcomeTable build_table(const State& state, const Povm& left,
                              const Povm& right, std::string descriptor) {
  require_standard_povm(left, "left");
  require_standard_povm(right, "right");

  std::array<double, 16> p{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double v = expectation(
          state, tensor(left.elements()[i].op, right.elements()[j].op));
      if (v < 0.0) {
        if (v < -1e-12) {
          throw std::runtime_error(
              "joint_outcome_table: negative probability " + std::to_string(v));
        }
        v = 0.0;
      }
      p[i * 4 + j] = v;
      total += v;
    }
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw std::runtime_error("joint_outcome_table: probabilities sum to " +
                             std::to_string(total));
  }
  return JointOutcomeTable(left, right, p, std::move(descriptor));
}

}  // namespace

JointOutcomeTable::JointOutcomeTable(Povm left, Povm right,
                                     std::array<double, 16> probabilities,
                                     std::string state_descriptor)
    : left_(std::move(left)),
      right_(std::move(right)),
      p_(probabilities),
      state_descriptor_(std::move(state_descriptor)) {}

double JointOutcomeTable::probability(const OutcomeLabel& l,
                                      const OutcomeLabel& r) const {
  const int i = left_.index_of(l);
  const int j = right_.index_of(r);
  if (i < 0 || j < 0) {
    throw std::invalid_argument("JointOutcomeTable: unknown outcome label");
  }
  return probability(i, j);
}

double JointOutcomeTable::block_probability(Setting ls, Setting rs) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (left_.elements()[i].label.setting != ls) continue;
    for (int j = 0; j < 4; ++j) {
      if (right_.elements()[j].label.setting != rs) continue;
      s += probability(i, j);
    }
  }
  return s;
}

double JointOutcomeTable::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

JointOutcomeTable joint_outcome_table(const PureState& state, const Povm& left,
                                      const Povm& right,
                                      std::string state_descriptor) {
  if (state.dim() != 4) {
    throw std::invalid_argument("joint_outcome_table: state must be two-qubit");
  }
  return build_table(state, left, right, std::move(state_descriptor));
}

JointOutcomeTable joint_outcome_table(const DensityMatrix& state,
                                      const Povm& left, const Povm& right,
                                      std::string state_descriptor) {
  if (state.dim() != 4) {
    throw std::invalid_argument("joint_outcome_table: state must be two-qubit");
  }
  return build_table(state, left, right, std::move(state_descriptor));
}

double conditional_correlator(const JointOutcomeTable& t, Setting left_setting,
                              Setting right_setting) {
  double signed_sum = 0.0;
  double block = 0.0;
  for (int i = 0; i < 4; ++i) {
    const OutcomeLabel& li = t.left().elements()[i].label;
    if (li.setting != left_setting) continue;
    for (int j = 0; j < 4; ++j) {
      const OutcomeLabel& rj = t.right().elements()[j].label;
      if (rj.setting != right_setting) continue;
      const double p = t.probability(i, j);
      signed_sum += li.value * rj.value * p;
      block += p;
    }
  }
  if (block <= 1e-12) {
    throw std::runtime_error("conditional_correlator: vanishing block probability");
  }
  return signed_sum / block;
}

ChshResult chsh_value(const PureState& state, const Direction& left_first,
                      const Direction& left_second, const Direction& right_first,
                      const Direction& right_second) {
  const Povm left = build_epr_povm(left_first, left_second);
  const Povm right = build_epr_povm(right_first, right_second);
  const JointOutcomeTable t = joint_outcome_table(state, left, right);

  ChshResult result{0.0,
                    {},
                    {},
                    {left_first, left_second, right_first, right_second}};
  const std::array<std::pair<Setting, Setting>, 4> blocks = {
      std::pair{Setting::First, Setting::First},
      std::pair{Setting::First, Setting::Second},
      std::pair{Setting::Second, Setting::First},
      std::pair{Setting::Second, Setting::Second}};
  for (std::size_t b = 0; b < 4; ++b) {
    result.correlators[b] =
        conditional_correlator(t, blocks[b].first, blocks[b].second);
    result.block_probabilities[b] =
        t.block_probability(blocks[b].first, blocks[b].second);
  }
  result.value = std::abs(result.correlators[0] - result.correlators[1] -
                          result.correlators[2] - result.correlators[3]);
  return result;
}

}  // namespace bellsim
