// bellsim: Bell-test toolkit built around one fixed four-outcome
// measurement per station.
//
//   chsh-exact     exact CHSH value for the configured settings
//   chsh-sample    sample trials, estimate CHSH (CSV + JSON); --sweep theta
//   lhv-max        classical strategy enumeration and bound
//   validate-povm  POVM axiom report for the configured axes
//   dilate         projective dilation branches and equivalence residual
//   budget         timing separation and detection threshold report
//
// Exit codes: 0 success, 1 usage or config error, 2 validation failure.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bellsim/budget.hpp"
#include "bellsim/config.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/experiment.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/report.hpp"
#include "bellsim/sampler.hpp"

namespace {

using namespace bellsim;

struct SampleFlags {
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> eta_left;
  std::optional<double> eta_right;
  int workers = 1;
};

ExperimentConfig apply_overrides(ExperimentConfig cfg, const SampleFlags& f) {
  if (f.n) cfg.n = *f.n;
  if (f.seed) cfg.seed = *f.seed;
  if (f.eta_left) cfg.eta_left = *f.eta_left;
  if (f.eta_right) cfg.eta_right = *f.eta_right;
  return cfg;
}

ChshSettings settings_of(const ExperimentConfig& cfg) {
  return ChshSettings{cfg.left_first, cfg.left_second, cfg.right_first,
                      cfg.right_second};
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": cannot open for writing");
  f << text;
}

// JSON to --out when given, else stdout.
void emit_report(const Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

int run_chsh_exact(const ExperimentConfig& cfg, const std::string& out_path) {
  const PureState psi = singlet();
  const ChshResult result = chsh_value(psi, cfg.left_first, cfg.left_second,
                                       cfg.right_first, cfg.right_second);
  const JointOutcomeTable table = joint_outcome_table(
      psi, build_epr_povm(cfg.left_first, cfg.left_second),
      build_epr_povm(cfg.right_first, cfg.right_second), "singlet");
  emit_report(chsh_exact_report(result, table,
                                {std::nullopt, config_hash(cfg)}),
              out_path);
  return 0;
}

std::vector<TrialRecord> draw_trials(const ExperimentConfig& cfg, int workers,
                                     std::string& source) {
  if (cfg.n < 1) {
    throw ConfigError("sampling.n: must be >= 1 in sampling modes");
  }
  std::vector<TrialRecord> trials;
  if (cfg.mode == RunMode::Lhv) {
    const std::vector<double> weights =
        cfg.lhv_weights
            ? std::vector<double>(cfg.lhv_weights->begin(), cfg.lhv_weights->end())
            : uniform_mixture();
    trials = lhv_sample(weights, cfg.n, cfg.seed, workers);
    source = "lhv";
  } else {
    const JointOutcomeTable table = joint_outcome_table(
        singlet(), build_epr_povm(cfg.left_first, cfg.left_second),
        build_epr_povm(cfg.right_first, cfg.right_second), "singlet");
    trials = sample_trials(table, cfg.n, cfg.seed, workers);
    source = "quantum";
  }
  return apply_detection(std::move(trials), cfg.eta_left, cfg.eta_right,
                         cfg.seed);
}

int run_chsh_sample(const ExperimentConfig& cfg, int workers,
                    const std::string& out_prefix) {
  std::string source;
  const std::vector<TrialRecord> trials = draw_trials(cfg, workers, source);
  const ChshEstimate est = estimate_chsh(trials, cfg.seed);
  const std::string hash = config_hash(cfg);
  const Json report =
      chsh_sample_report(est, source, cfg.eta_left, cfg.eta_right,
                         {cfg.seed, hash});

  if (out_prefix.empty()) {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  std::ostringstream csv;
  write_trials_csv(csv, trials, {cfg.seed, hash});
  write_text(out_prefix + ".trials.csv", csv.str());
  write_text(out_prefix + ".estimate.json", report.dump(2) + "\n");
  return 0;
}

// Correlator vs angle between the two first-setting axes: the left first
// axis stays fixed, the right first axis rotates from it through [0, pi]
// in a fixed plane. One sampled point per step, disjoint trial streams.
int run_sweep(const ExperimentConfig& cfg, int workers, int steps,
              const std::string& out_path) {
  if (cfg.n < 1) {
    throw ConfigError("sampling.n: must be >= 1 in sampling modes");
  }
  const Direction& axis = cfg.left_first;
  // companion axis orthogonal to the fixed one, spanning the sweep plane
  const bool use_z = std::abs(axis.z()) < 0.9;
  const double rx = use_z ? 0.0 : 1.0, ry = 0.0, rz = use_z ? 1.0 : 0.0;
  const double proj = rx * axis.x() + ry * axis.y() + rz * axis.z();
  const Direction companion(rx - proj * axis.x(), ry - proj * axis.y(),
                            rz - proj * axis.z());

  const Povm left = build_epr_povm(cfg.left_first, cfg.left_second);
  const std::string hash = config_hash(cfg);

  std::ostringstream csv;
  csv << "# bellsim-sweep/1 seed=" << cfg.seed << " config=" << hash << "\n";
  csv << "theta,correlator,stderr,count,exact\n";

  const double pi = std::acos(-1.0);
  for (int k = 0; k < steps; ++k) {
    const double theta = pi * k / (steps - 1);
    const Direction rotated(
        std::cos(theta) * axis.x() + std::sin(theta) * companion.x(),
        std::cos(theta) * axis.y() + std::sin(theta) * companion.y(),
        std::cos(theta) * axis.z() + std::sin(theta) * companion.z());
    const JointOutcomeTable table = joint_outcome_table(
        singlet(), left, build_epr_povm(rotated, cfg.right_second), "singlet");
    auto trials = sample_trials(table, cfg.n, cfg.seed, workers,
                                static_cast<std::uint64_t>(k) * cfg.n);
    trials = apply_detection(std::move(trials), cfg.eta_left, cfg.eta_right,
                             cfg.seed);

    double signed_sum = 0.0;
    std::uint64_t count = 0;
    for (const auto& t : trials) {
      if (!t.coincident()) continue;
      if (t.left.setting != Setting::First || t.right.setting != Setting::First)
        continue;
      signed_sum += t.left.value * t.right.value;
      ++count;
    }
    if (count == 0) {
      throw ValidationError("sweep: no coincidences in the first-first block");
    }
    const double c = signed_sum / static_cast<double>(count);
    const double se =
        std::sqrt(std::max(0.0, 1.0 - c * c) / static_cast<double>(count));
    csv << fmt(theta) << ',' << fmt(c) << ',' << fmt(se) << ',' << count << ','
        << fmt(-axis.dot(rotated)) << '\n';
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_text(out_path, csv.str());
  }
  return 0;
}

int run_validate_povm(const ExperimentConfig& cfg, const std::string& out_path) {
  const PovmValidation left =
      validate_povm(build_epr_povm(cfg.left_first, cfg.left_second));
  const PovmValidation right =
      validate_povm(build_epr_povm(cfg.right_first, cfg.right_second));
  const Json report = povm_validation_report(left, right, settings_of(cfg),
                                             {std::nullopt, config_hash(cfg)});
  emit_report(report, out_path);
  return (left.pass && right.pass) ? 0 : 2;
}

int run_dilate(const ExperimentConfig& cfg, const std::string& out_path) {
  const Json report =
      dilation_report(settings_of(cfg), {std::nullopt, config_hash(cfg)});
  emit_report(report, out_path);
  return report.at("pass").get<bool>() ? 0 : 2;
}

int run_budget(const ExperimentConfig& cfg, const std::string& out_path) {
  if (!cfg.budget_selection_time) {
    throw ConfigError("budget.t_s: required by the budget subcommand");
  }
  if (!cfg.budget_measurement_time) {
    throw ConfigError("budget.t_m: required by the budget subcommand");
  }
  emit_report(budget_report(*cfg.budget_selection_time,
                            *cfg.budget_measurement_time,
                            {std::nullopt, config_hash(cfg)}),
              out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test toolkit: one fixed four-outcome measurement per station"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string sweep_var;
  int steps = 0;
  SampleFlags flags;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_out = [&](CLI::App* cmd, const char* help) {
    cmd->add_option("--out", out_path, help);
  };

  CLI::App* exact = app.add_subcommand(
      "chsh-exact", "exact CHSH value for the configured settings");
  add_config(exact);
  add_out(exact, "write the JSON report here instead of stdout");

  CLI::App* sample = app.add_subcommand(
      "chsh-sample", "sample trials and estimate CHSH");
  add_config(sample);
  sample->add_option("--n", flags.n, "trial count (overrides sampling.n)");
  sample->add_option("--seed", flags.seed, "master seed (overrides sampling.seed)");
  sample->add_option("--eta-left", flags.eta_left, "left detection efficiency")
      ->check(CLI::Range(0.0, 1.0));
  sample->add_option("--eta-right", flags.eta_right, "right detection efficiency")
      ->check(CLI::Range(0.0, 1.0));
  sample->add_option("--workers", flags.workers, "worker threads")
      ->check(CLI::Range(1, 4096));
  add_out(sample,
          "output prefix: writes PREFIX.trials.csv and PREFIX.estimate.json "
          "(sweep mode: the sweep CSV path)");
  CLI::Option* sweep_opt =
      sample->add_option("--sweep", sweep_var, "sweep variable (only: theta)")
          ->check(CLI::IsMember({"theta"}));
  CLI::Option* steps_opt =
      sample->add_option("--steps", steps, "sweep point count")
          ->check(CLI::Range(2, 1000000));
  sweep_opt->needs(steps_opt);
  steps_opt->needs(sweep_opt);

  CLI::App* lhv = app.add_subcommand(
      "lhv-max", "classical strategy enumeration and bound");
  add_out(lhv, "write the JSON report here instead of stdout");

  CLI::App* vpovm = app.add_subcommand(
      "validate-povm", "check POVM axioms for the configured axes");
  add_config(vpovm);
  add_out(vpovm, "write the JSON report here instead of stdout");

  CLI::App* dilate = app.add_subcommand(
      "dilate", "projective dilation and equivalence residual");
  add_config(dilate);
  add_out(dilate, "write the JSON report here instead of stdout");

  CLI::App* budget = app.add_subcommand(
      "budget", "timing separation and detection threshold report");
  add_config(budget);
  add_out(budget, "write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (exact->parsed()) {
      return run_chsh_exact(load_config_file(config_path), out_path);
    }
    if (sample->parsed()) {
      const ExperimentConfig cfg =
          apply_overrides(load_config_file(config_path), flags);
      if (sweep_opt->count() > 0) {
        return run_sweep(cfg, flags.workers, steps, out_path);
      }
      return run_chsh_sample(cfg, flags.workers, out_path);
    }
    if (lhv->parsed()) {
      emit_report(lhv_max_report({}), out_path);
      return 0;
    }
    if (vpovm->parsed()) {
      return run_validate_povm(load_config_file(config_path), out_path);
    }
    if (dilate->parsed()) {
      return run_dilate(load_config_file(config_path), out_path);
    }
    if (budget->parsed()) {
      return run_budget(load_config_file(config_path), out_path);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
