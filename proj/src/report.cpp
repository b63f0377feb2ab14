#include "bellsim/report.hpp"

#include <cmath>

#include "bellsim/budget.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

namespace {

// Block keys in block order (first,first), (first,second), (second,first),
// (second,second), named after the conventional axis letters. Capitals sort
// before lowercase in nlohmann's key order, so serialized output keeps this
// order too.
constexpr const char* kBlockKeys[4] = {"AB", "Ab", "aB", "ab"};

Json envelope(const std::string& kind, const ReportProvenance& prov) {
  Json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  Json p = Json::object();
  if (prov.seed) p["seed"] = *prov.seed;
  if (prov.config_hash) p["config_hash"] = *prov.config_hash;
  if (!p.empty()) j["provenance"] = p;
  return j;
}

Json povm_validation_json(const PovmValidation& v) {
  Json j;
  j["pass"] = v.pass;
  j["completeness_residual"] = v.completeness_residual;
  j["completeness_ok"] = v.completeness_ok;
  Json elems = Json::array();
  for (const auto& e : v.elements) {
    Json ej;
    ej["label"] = to_string(e.label);
    ej["min_eigenvalue"] = e.min_eigenvalue;
    ej["hermiticity_defect"] = e.hermiticity_defect;
    ej["psd_ok"] = e.psd_ok;
    elems.push_back(ej);
  }
  j["elements"] = elems;
  j["failures"] = v.failures;
  return j;
}

Json dilation_side_json(const Direction& first, const Direction& second) {
  const DilatedObservable dil = neumark_dilate(first, second);
  const Povm povm = build_epr_povm(first, second);
  const auto probes = dilation_probe_states();

  Json j;
  j["axes"] = Json{{"first", direction_json(first)}, {"second", direction_json(second)}};
  Json branches = Json::array();
  for (const auto& b : dil.branches()) {
    Json bj;
    bj["label"] = to_string(b.label);
    bj["result_tag"] = b.result_tag;
    bj["projector"] = matrix_json(b.projector);
    branches.push_back(bj);
  }
  j["branches"] = branches;
  j["equivalence_residual"] = dilation_equivalence_residual(povm, dil, probes);
  return j;
}

bool number_at(const Json& j, const char* key) {
  return j.contains(key) && j.at(key).is_number();
}

}  // namespace

Json direction_json(const Direction& d) {
  return Json::array({d.x(), d.y(), d.z()});
}

Json settings_json(const ChshSettings& settings) {
  Json j;
  j["A"] = direction_json(settings.left_first);
  j["a"] = direction_json(settings.left_second);
  j["B"] = direction_json(settings.right_first);
  j["b"] = direction_json(settings.right_second);
  return j;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

Json chsh_exact_report(const ChshResult& result, const JointOutcomeTable& table,
                       const ReportProvenance& prov) {
  Json j = envelope("chsh-exact", prov);
  j["state"] = table.state_descriptor();
  j["settings"] = settings_json(result.settings);
  j["value"] = result.value;

  Json correlators, blocks;
  for (int k = 0; k < 4; ++k) {
    correlators[kBlockKeys[k]] = result.correlators[k];
    blocks[kBlockKeys[k]] = result.block_probabilities[k];
  }
  j["correlators"] = correlators;
  j["block_probabilities"] = blocks;

  Json labels_left = Json::array(), labels_right = Json::array();
  for (const auto& e : table.left().elements()) labels_left.push_back(to_string(e.label));
  for (const auto& e : table.right().elements()) labels_right.push_back(to_string(e.label));
  j["outcome_labels"] = Json{{"left", labels_left}, {"right", labels_right}};

  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(table.probability(r, c));
    rows.push_back(row);
  }
  j["table"] = rows;
  return j;
}

Json chsh_sample_report(const ChshEstimate& est, const std::string& source,
                        double eta_left, double eta_right,
                        const ReportProvenance& prov) {
  Json j = envelope("chsh-sample", prov);
  j["source"] = source;
  j["value"] = est.estimate;
  j["stderr"] = est.estimate_stderr;

  Json correlators;
  for (int k = 0; k < 4; ++k) {
    correlators[kBlockKeys[k]] = Json{{"correlator", est.correlators[k]},
                                      {"stderr", est.stderrs[k]},
                                      {"count", est.block_counts[k]}};
  }
  j["correlators"] = correlators;
  j["trials"] = Json{{"total", est.total_trials}, {"coincidences", est.coincidences}};
  j["detection"] = Json{{"eta_left", eta_left}, {"eta_right", eta_right}};
  return j;
}

Json lhv_max_report(const ReportProvenance& prov) {
  Json j = envelope("lhv-max", prov);
  j["bound"] = lhv_chsh_max();

  Json strategies = Json::array();
  const auto all = enumerate_strategies();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Strategy& s = all[i];
    Json sj;
    sj["index"] = i;
    sj["left_first"] = s.left_first;
    sj["left_second"] = s.left_second;
    sj["right_first"] = s.right_first;
    sj["right_second"] = s.right_second;
    sj["chsh_signed"] = strategy_chsh_signed(s);
    sj["chsh"] = strategy_chsh(s);
    strategies.push_back(sj);
  }
  j["strategies"] = strategies;
  return j;
}

Json povm_validation_report(const PovmValidation& left,
                            const PovmValidation& right,
                            const ChshSettings& settings,
                            const ReportProvenance& prov) {
  Json j = envelope("validate-povm", prov);
  j["settings"] = settings_json(settings);
  j["pass"] = left.pass && right.pass;
  j["sides"] = Json{{"left", povm_validation_json(left)},
                    {"right", povm_validation_json(right)}};
  return j;
}

Json dilation_report(const ChshSettings& settings, const ReportProvenance& prov) {
  Json j = envelope("dilate", prov);
  j["settings"] = settings_json(settings);
  Json left = dilation_side_json(settings.left_first, settings.left_second);
  Json right = dilation_side_json(settings.right_first, settings.right_second);
  const double worst = std::max(left["equivalence_residual"].get<double>(),
                                right["equivalence_residual"].get<double>());
  j["sides"] = Json{{"left", left}, {"right", right}};
  j["tolerance"] = kStructuralTol;
  j["pass"] = worst <= kStructuralTol;
  return j;
}

Json budget_report(double selection_time, double measurement_time,
                   const ReportProvenance& prov) {
  const ModeComparison cmp = compare_modes(selection_time, measurement_time);
  Json j = envelope("budget", prov);
  j["selection_time"] = selection_time;
  j["measurement_time"] = measurement_time;
  j["speed_of_light"] = kSpeedOfLight;
  j["standard_min_separation"] = cmp.standard_separation;
  j["povm_min_separation"] = cmp.povm_separation;
  j["saving"] = cmp.saving;
  j["detection_threshold"] = detection_threshold();
  return j;
}

std::string validate_report(const Json& report) {
  if (!report.is_object()) return "report: not a JSON object";
  if (!report.contains("schema") || report.at("schema") != kReportSchema) {
    return std::string("schema: missing or not \"") + kReportSchema + "\"";
  }
  if (!report.contains("kind") || !report.at("kind").is_string()) {
    return "kind: missing or not a string";
  }
  if (report.contains("provenance")) {
    const Json& p = report.at("provenance");
    if (!p.is_object()) return "provenance: not an object";
    if (p.contains("seed") && !p.at("seed").is_number_unsigned()) {
      return "provenance.seed: not an unsigned integer";
    }
    if (p.contains("config_hash") && !p.at("config_hash").is_string()) {
      return "provenance.config_hash: not a string";
    }
  }

  auto require_blocks = [](const Json& j, const char* field) -> std::string {
    if (!j.contains(field) || !j.at(field).is_object()) {
      return std::string(field) + ": missing object";
    }
    for (const char* key : kBlockKeys) {
      if (!j.at(field).contains(key)) {
        return std::string(field) + "." + key + ": missing";
      }
    }
    return "";
  };

  const std::string kind = report.at("kind").get<std::string>();
  if (kind == "chsh-exact") {
    if (!number_at(report, "value")) return "value: missing number";
    for (const char* f : {"correlators", "block_probabilities"}) {
      if (auto err = require_blocks(report, f); !err.empty()) return err;
    }
    if (!report.contains("settings")) return "settings: missing";
    if (!report.contains("table") || !report.at("table").is_array() ||
        report.at("table").size() != 4) {
      return "table: missing 4x4 array";
    }
  } else if (kind == "chsh-sample") {
    if (!number_at(report, "value")) return "value: missing number";
    if (!number_at(report, "stderr")) return "stderr: missing number";
    if (auto err = require_blocks(report, "correlators"); !err.empty()) return err;
    if (!report.contains("trials") || !report.at("trials").is_object()) {
      return "trials: missing object";
    }
    if (!report.contains("source") || !report.at("source").is_string()) {
      return "source: missing string";
    }
  } else if (kind == "lhv-max") {
    if (!number_at(report, "bound")) return "bound: missing number";
    if (!report.contains("strategies") || !report.at("strategies").is_array() ||
        report.at("strategies").size() != 16) {
      return "strategies: missing array of 16";
    }
  } else if (kind == "validate-povm") {
    if (!report.contains("pass") || !report.at("pass").is_boolean()) {
      return "pass: missing boolean";
    }
    if (!report.contains("sides") || !report.at("sides").is_object()) {
      return "sides: missing object";
    }
    for (const char* side : {"left", "right"}) {
      if (!report.at("sides").contains(side)) {
        return std::string("sides.") + side + ": missing";
      }
      const Json& s = report.at("sides").at(side);
      if (!number_at(s, "completeness_residual")) {
        return std::string("sides.") + side + ".completeness_residual: missing number";
      }
      if (!s.contains("elements") || !s.at("elements").is_array() ||
          s.at("elements").size() != 4) {
        return std::string("sides.") + side + ".elements: missing array of 4";
      }
    }
  } else if (kind == "dilate") {
    if (!report.contains("sides") || !report.at("sides").is_object()) {
      return "sides: missing object";
    }
    for (const char* side : {"left", "right"}) {
      if (!report.at("sides").contains(side)) {
        return std::string("sides.") + side + ": missing";
      }
      const Json& s = report.at("sides").at(side);
      if (!number_at(s, "equivalence_residual")) {
        return std::string("sides.") + side + ".equivalence_residual: missing number";
      }
      if (!s.contains("branches") || !s.at("branches").is_array() ||
          s.at("branches").size() != 4) {
        return std::string("sides.") + side + ".branches: missing array of 4";
      }
    }
  } else if (kind == "budget") {
    for (const char* f : {"selection_time", "measurement_time",
                          "standard_min_separation", "povm_min_separation",
                          "saving", "detection_threshold"}) {
      if (!number_at(report, f)) return std::string(f) + ": missing number";
    }
  } else {
    return "kind: unknown report kind \"" + kind + "\"";
  }
  return "";
}

}  // namespace bellsim
