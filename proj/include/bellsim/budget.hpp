// Loophole feasibility arithmetic: minimum station separation under the
// two timing models, and the detection-efficiency threshold.
//
// Timing models: a selection-then-measurement sequence needs the stations
// space-like separated over t_s + t_m; a single fixed generalized
// measurement needs only t_m, since there is no selection step.

#pragma once

namespace bellsim {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact

enum class TimingMode { Standard, Povm };

class TimingModel {
 public:
  // times in seconds; both must be nonnegative
  TimingModel(double selection_time, double measurement_time, TimingMode mode);

  double selection_time() const { return selection_time_; }
  double measurement_time() const { return measurement_time_; }
  TimingMode mode() const { return mode_; }

 private:
  double selection_time_;
  double measurement_time_;
  TimingMode mode_;
};

// c*(t_s + t_m) in standard mode, c*t_m in povm mode (selection time does
// not count: there is nothing to select).
double min_separation(const TimingModel& m);

// Detection efficiency above which the fair-sampling assumption can be
// dropped, as commonly quoted: 0.828 (the exact value is 2*(sqrt(2)-1)).
double detection_threshold();

bool detection_feasible(double efficiency);

struct ModeComparison {
  double standard_separation = 0.0;  // meters
  double povm_separation = 0.0;
  double saving = 0.0;  // = c * t_s, the selection leg of the standard path
};

ModeComparison compare_modes(double selection_time, double measurement_time);

}  // namespace bellsim
