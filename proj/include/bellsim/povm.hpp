// The 4-outcome generalized measurement used throughout: each element is
// half of a rank-1 spin projector, two elements per axis. Includes axiom
// validation and the ancilla dilation that realizes the POVM as a single
// projective measurement on particle (x) ancilla.

#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/direction.hpp"
#include "bellsim/linalg.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

enum class Setting { First, Second };

const char* to_string(Setting s);  // "first" / "second"

// One of the four outcome labels: which axis was revealed, and the sign.
struct OutcomeLabel {
  Setting setting;
  int value;  // +1 or -1

  friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
};

std::string to_string(const OutcomeLabel& label);  // e.g. "first:+1"

struct PovmElement {
  OutcomeLabel label;
  Matrix op;
};

// Ordered list of labeled positive operators. Construction does not
// validate the axioms; validate_povm does, and reports rather than throws.
class Povm {
 public:
  explicit Povm(std::vector<PovmElement> elements, std::string description = "");

  const std::vector<PovmElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const std::string& description() const { return description_; }

  // Index of the element with this label, or -1.
  int index_of(const OutcomeLabel& label) const;

 private:
  std::vector<PovmElement> elements_;
  std::string description_;
};

// Elements (in order): half-projectors along d1 with values +1/-1, then
// along d2 with values +1/-1, labeled (first,+1), (first,-1),
// (second,+1), (second,-1). d1 and d2 need not be distinct.
Povm build_epr_povm(const Direction& d1, const Direction& d2);

struct PovmValidation {
  struct ElementReport {
    OutcomeLabel label;
    double min_eigenvalue = 0.0;
    double hermiticity_defect = 0.0;
    bool psd_ok = false;
  };

  std::vector<ElementReport> elements;
  double completeness_residual = 0.0;  // max entry of |sum - I|
  bool completeness_ok = false;
  bool pass = false;
  std::vector<std::string> failures;  // axiom + offending element
};

PovmValidation validate_povm(const Povm& p);

// One branch of the dilated observable: a rank-1 projector on the
// 4-dimensional particle+ancilla space plus the real result tag read out
// when that branch fires. Tags are +1, -1 for the first axis and +2, -2
// for the second (sign = outcome, magnitude = axis).
struct DilatedBranch {
  OutcomeLabel label;
  Matrix projector;  // dim 4
  double result_tag;
};

// Four mutually orthogonal branches summing to the identity.
class DilatedObservable {
 public:
  explicit DilatedObservable(std::array<DilatedBranch, 4> branches);

  const std::array<DilatedBranch, 4>& branches() const { return branches_; }

 private:
  std::array<DilatedBranch, 4> branches_;
};

// Projective dilation of build_epr_povm(d1, d2): spin projectors along d1
// live in the ancilla z=+1 sector, those along d2 in the z=-1 sector.
DilatedObservable neumark_dilate(const Direction& d1, const Direction& d2);

// Branch probabilities for the joint state particle (x) maximally mixed
// ancilla. Matches the Born probabilities Tr(rho E_d) of the POVM itself.
std::array<std::pair<OutcomeLabel, double>, 4> dilated_probabilities(
    const DensityMatrix& particle, const DilatedObservable& dil);

// Fixed spread of qubit states (maximally mixed, axis eigenstates, a few
// skew pure and partly mixed ones) for probing POVM-vs-dilation agreement.
std::vector<DensityMatrix> dilation_probe_states();

// Largest |Tr(rho E) - dilated branch probability| over the given states,
// branches matched to POVM elements by label.
double dilation_equivalence_residual(const Povm& povm,
                                     const DilatedObservable& dil,
                                     std::span<const DensityMatrix> states);

}  // namespace bellsim
