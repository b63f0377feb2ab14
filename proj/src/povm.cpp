#include "bellsim/povm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bellsim {

const char* to_string(Setting s) {
  return s == Setting::First ? "first" : "second";
}

std::string to_string(const OutcomeLabel& label) {
  return std::string(to_string(label.setting)) +
         (label.value > 0 ? ":+1" : ":-1");
}

Povm::Povm(std::vector<PovmElement> elements, std::string description)
    : elements_(std::move(elements)), description_(std::move(description)) {
  if (elements_.empty()) {
    throw std::invalid_argument("Povm: no elements");
  }
  for (const auto& e : elements_) {
    if (e.op.dim() != 2) {
      throw std::invalid_argument("Povm: elements must be 2x2");
    }
    if (e.label.value != 1 && e.label.value != -1) {
      throw std::invalid_argument("Povm: outcome value must be +1 or -1");
    }
  }
}

int Povm::index_of(const OutcomeLabel& label) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

Povm build_epr_povm(const Direction& d1, const Direction& d2) {
  std::vector<PovmElement> elems;
  elems.reserve(4);
  for (int sign : {+1, -1}) {
    elems.push_back({{Setting::First, sign},
                     0.5 * projector_from_direction(d1, sign)});
  }
  for (int sign : {+1, -1}) {
    elems.push_back({{Setting::Second, sign},
                     0.5 * projector_from_direction(d2, sign)});
  }
  return Povm(std::move(elems), "epr-povm");
}

PovmValidation validate_povm(const Povm& p) {
  PovmValidation report;
  Matrix sum(2);
  bool all_psd = true;

  for (const auto& e : p.elements()) {
    PovmValidation::ElementReport er;
    er.label = e.label;
    er.hermiticity_defect = hermiticity_defect(e.op);
    if (er.hermiticity_defect > kStructuralTol) {
      er.psd_ok = false;
      er.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
      report.failures.push_back("element " + to_string(e.label) +
                                " violates positivity: not Hermitian (defect " +
                                std::to_string(er.hermiticity_defect) + ")");
    } else {
      er.min_eigenvalue = min_eigenvalue(e.op);
      er.psd_ok = er.min_eigenvalue >= -kStructuralTol;
      if (!er.psd_ok) {
        report.failures.push_back(
            "element " + to_string(e.label) +
            " violates positivity: min eigenvalue " +
            std::to_string(er.min_eigenvalue));
      }
    }
    all_psd = all_psd && er.psd_ok;
    sum += e.op;
    report.elements.push_back(er);
  }

  sum -= Matrix::identity(2);
  report.completeness_residual = sum.max_abs();
  report.completeness_ok = report.completeness_residual <= kStructuralTol;
  if (!report.completeness_ok) {
    report.failures.push_back("elements violate completeness: residual " +
                              std::to_string(report.completeness_residual));
  }

  report.pass = all_psd && report.completeness_ok;
  return report;
}

DilatedObservable::DilatedObservable(std::array<DilatedBranch, 4> branches)
    : branches_(std::move(branches)) {
  Matrix sum(4);
  for (const auto& b : branches_) {
    if (b.projector.dim() != 4) {
      throw std::invalid_argument("DilatedObservable: branches must be 4x4");
    }
    if (hermiticity_defect(b.projector) > kStructuralTol ||
        !approx_equal(b.projector * b.projector, b.projector, kStructuralTol)) {
      throw std::invalid_argument("DilatedObservable: branch " +
                                  to_string(b.label) + " is not a projector");
    }
    sum += b.projector;
  }
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      const Matrix prod = branches_[i].projector * branches_[j].projector;
      if (prod.max_abs() > kStructuralTol) {
        throw std::invalid_argument("DilatedObservable: branches " +
                                    to_string(branches_[i].label) + " and " +
                                    to_string(branches_[j].label) +
                                    " are not orthogonal");
      }
    }
  }
  if (!approx_equal(sum, Matrix::identity(4), kStructuralTol)) {
    throw std::invalid_argument("DilatedObservable: branches do not sum to I");
  }
}

DilatedObservable neumark_dilate(const Direction& d1, const Direction& d2) {
  const Direction z_axis(0.0, 0.0, 1.0);
  const Matrix ancilla_up = projector_from_direction(z_axis, +1);
  const Matrix ancilla_down = projector_from_direction(z_axis, -1);

  auto branch = [&](Setting setting, int sign) {
    const Direction& axis = (setting == Setting::First) ? d1 : d2;
    const Matrix& sector = (setting == Setting::First) ? ancilla_up : ancilla_down;
    const double tag = sign * (setting == Setting::First ? 1.0 : 2.0);
    return DilatedBranch{{setting, sign},
                         tensor(projector_from_direction(axis, sign), sector),
                         tag};
  };

  return DilatedObservable({branch(Setting::First, +1),
                            branch(Setting::First, -1),
                            branch(Setting::Second, +1),
                            branch(Setting::Second, -1)});
}

std::array<std::pair<OutcomeLabel, double>, 4> dilated_probabilities(
    const DensityMatrix& particle, const DilatedObservable& dil) {
  if (particle.dim() != 2) {
    throw std::invalid_argument("dilated_probabilities: particle must be a qubit");
  }
  // joint state: particle (x) I/2
  Matrix joint(4);
  {
    Matrix half_identity = Matrix::identity(2);
    half_identity *= 0.5;
    joint = kron(particle.matrix(), half_identity);
  }
  const DensityMatrix joint_state(joint);

  std::array<std::pair<OutcomeLabel, double>, 4> out;
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& b = dil.branches()[i];
    double p = expectation(joint_state, b.projector);
    if (p < 0.0 && p > -1e-12) p = 0.0;
    out[i] = {b.label, p};
    total += p;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw std::runtime_error("dilated_probabilities: probabilities sum to " +
                             std::to_string(total));
  }
  return out;
}

std::vector<DensityMatrix> dilation_probe_states() {
  std::vector<DensityMatrix> states;
  states.push_back(DensityMatrix::maximally_mixed(2));

  const Direction axes[] = {{1, 0, 0},  {0, 1, 0},        {0, 0, 1},
                            {1, 1, 1},  {-2, 1, 2},       {0.3, -0.4, 0.5}};
  for (const auto& axis : axes) {
    states.push_back(DensityMatrix(projector_from_direction(axis, +1)));
    states.push_back(DensityMatrix(projector_from_direction(axis, -1)));
  }

  // one partly mixed state off every symmetry axis
  const Matrix blend = 0.7 * projector_from_direction(Direction(1, 2, 3), +1) +
                       0.3 * projector_from_direction(Direction(-1, 0, 2), -1);
  states.push_back(DensityMatrix(blend));
  return states;
}

double dilation_equivalence_residual(const Povm& povm,
                                     const DilatedObservable& dil,
                                     std::span<const DensityMatrix> states) {
  double worst = 0.0;
  for (const auto& rho : states) {
    const auto dilated = dilated_probabilities(rho, dil);
    for (const auto& [label, p_dilated] : dilated) {
      const int idx = povm.index_of(label);
      if (idx < 0) {
        throw std::invalid_argument(
            "dilation_equivalence_residual: POVM lacks element " +
            to_string(label));
      }
      const double p_direct = expectation(rho, povm.elements()[idx].op);
      worst = std::max(worst, std::abs(p_direct - p_dilated));
    }
  }
  return worst;
}

}  // namespace bellsim
