#include "bellsim/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

TimingModel::TimingModel(double selection_time, double measurement_time,
                         TimingMode mode)
    : selection_time_(selection_time),
      measurement_time_(measurement_time),
      mode_(mode) {
  if (!(selection_time >= 0.0) || !std::isfinite(selection_time) ||
      !(measurement_time >= 0.0) || !std::isfinite(measurement_time)) {
    throw std::invalid_argument("TimingModel: times must be finite and >= 0");
  }
}

double min_separation(const TimingModel& m) {
  const double t = m.mode() == TimingMode::Standard
                       ? m.selection_time() + m.measurement_time()
                       : m.measurement_time();
  return kSpeedOfLight * t;
}

double detection_threshold() { return 0.828; }

bool detection_feasible(double efficiency) {
  return efficiency >= detection_threshold();
}

ModeComparison compare_modes(double selection_time, double measurement_time) {
  ModeComparison out;
  out.standard_separation = min_separation(
      TimingModel(selection_time, measurement_time, TimingMode::Standard));
  out.povm_separation = min_separation(
      TimingModel(selection_time, measurement_time, TimingMode::Povm));
  out.saving = kSpeedOfLight * selection_time;
  return out;
}

}  // namespace bellsim
