// Pulls each detector's click projector back through the network unitary
// and expresses it on the logical input modes 0, 1, 2. Detectors are
// identical binary black boxes; a click is encoded as eigenvalue -1.

#ifndef MODESIM_OBSERVABLE_EXTRACTION_HPP
#define MODESIM_OBSERVABLE_EXTRACTION_HPP

#include "modesim/optical_elements.hpp"

#include <stdexcept>

namespace modesim {

/// Hermitian idempotent on the logical modes; trace is (numerically) integral.
class Projector {
 public:
  explicit Projector(Eigen::Matrix3cd matrix);

  const Eigen::Matrix3cd& matrix() const { return matrix_; }

 private:
  Eigen::Matrix3cd matrix_;
};

/// The ±1 observable A = I - 2P measured by a click/no-click detector.
/// Click maps to -1, so "no photon here" is the +1 outcome.
struct Observable {
  static constexpr int kClickValue = -1;
  static constexpr int kNoClickValue = +1;

  explicit Observable(Projector p);

  Projector projector;
  Eigen::Matrix3cd matrix;  // I - 2P
};

/// A named binary detector watching one output mode. Detectors carry no
/// further parameters: they are interchangeable by construction.
struct DetectorModel {
  std::string name;
  ModeLabel output_mode;
};

/// The network's detectors in deterministic (name) order.
std::vector<DetectorModel> detector_models(const NetworkSpec& net);

/// Raised when a detector's back-propagated projector mixes logical and
/// ancilla modes, so no qutrit observable exists on modes 0, 1, 2.
class LeakageError : public std::runtime_error {
 public:
  LeakageError(const std::string& detector, double leakage_norm);

  double leakage_norm() const { return leakage_norm_; }

 private:
  double leakage_norm_;
};

/// Conjugates the detector's output-mode projector by the network unitary
/// (P_full = U† |d><d| U) and restricts to the 3x3 block on logical_inputs.
/// Throws LeakageError if the block is not idempotent to kPhysicalTol.
Projector extract_projector(const NetworkSpec& net, const std::string& detector);

Observable to_observable(const Projector& p);

struct CommutationResult {
  bool commuting;
  double commutator_norm;  // max |AB - BA|
};

CommutationResult commutes(const Observable& a, const Observable& b,
                           double tol = kPhysicalTol);

/// Born rule <psi|P|psi> for a normalized state on the logical modes.
/// Results within kAlgebraicTol outside [0, 1] are clamped.
double detection_probability(const Eigen::Vector3cd& state, const Projector& p);

}  // namespace modesim

#endif  // MODESIM_OBSERVABLE_EXTRACTION_HPP
