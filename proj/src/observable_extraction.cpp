#include "modesim/observable_extraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace modesim {

Projector::Projector(Eigen::Matrix3cd matrix) : matrix_(std::move(matrix)) {
  const double hermitian_defect = max_abs(matrix_ - matrix_.adjoint());
  if (hermitian_defect > kAlgebraicTol) {
    std::ostringstream out;
    out << "projector is not Hermitian: max |P - P†| = " << hermitian_defect;
    throw std::invalid_argument(out.str());
  }
  const double idempotence_defect = max_abs(matrix_ * matrix_ - matrix_);
  if (idempotence_defect > kPhysicalTol) {
    std::ostringstream out;
    out << "projector is not idempotent: max |P² - P| = " << idempotence_defect;
    throw std::invalid_argument(out.str());
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - std::round(trace)) > kPhysicalTol) {
    std::ostringstream out;
    out << "projector trace " << trace << " is not integral";
    throw std::invalid_argument(out.str());
  }
}

Observable::Observable(Projector p)
    : projector(std::move(p)),
      matrix(Eigen::Matrix3cd::Identity() - 2.0 * projector.matrix()) {}

LeakageError::LeakageError(const std::string& detector, double leakage_norm)
    : std::runtime_error([&] {
        std::ostringstream out;
        out << "observable not supported on logical modes: detector '"
            << detector << "' mixes with ancilla inputs, leakage norm "
            << leakage_norm;
        return out.str();
      }()),
      leakage_norm_(leakage_norm) {}

std::vector<DetectorModel> detector_models(const NetworkSpec& net) {
  std::vector<DetectorModel> models;
  models.reserve(net.detectors.size());
  for (const auto& [name, mode] : net.detectors) {
    models.push_back({name, mode});
  }
  return models;
}

Projector extract_projector(const NetworkSpec& net, const std::string& detector) {
  const auto it = net.detectors.find(detector);
  if (it == net.detectors.end()) {
    throw std::invalid_argument("no detector named '" + detector +
                                "' in network");
  }
  const UnitaryMap u = network_unitary(net);
  const auto d = static_cast<Eigen::Index>(net.basis.index_of(it->second));

  // P_full = U† |d><d| U is rank one: the outer product of the conjugated
  // d-th row of U with itself.
  const Eigen::VectorXcd ray = u.matrix().row(d).adjoint();

  Eigen::Matrix3cd block;
  for (int a = 0; a < 3; ++a) {
    const auto ia = static_cast<Eigen::Index>(net.basis.index_of(net.logical_inputs[a]));
    for (int b = 0; b < 3; ++b) {
      const auto ib = static_cast<Eigen::Index>(net.basis.index_of(net.logical_inputs[b]));
      block(a, b) = ray(ia) * std::conj(ray(ib));
    }
  }

  const double leakage = max_abs(block * block - block);
  if (leakage > kPhysicalTol) {
    throw LeakageError(detector, leakage);
  }
  return Projector(block);
}

Observable to_observable(const Projector& p) { return Observable(p); }

CommutationResult commutes(const Observable& a, const Observable& b, double tol) {
  const double norm = max_abs(a.matrix * b.matrix - b.matrix * a.matrix);
  return CommutationResult{norm <= tol, norm};
}

double detection_probability(const Eigen::Vector3cd& state, const Projector& p) {
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kPhysicalTol) {
    std::ostringstream out;
    out << "state is not normalized: |psi| = " << norm;
    throw std::invalid_argument(out.str());
  }
  const double prob = (state.adjoint() * p.matrix() * state)(0).real();
  if (prob < -kAlgebraicTol || prob > 1.0 + kAlgebraicTol) {
    throw std::runtime_error("detection probability " + std::to_string(prob) +
                             " outside [0, 1]");
  }
  return std::clamp(prob, 0.0, 1.0);
}

}  // namespace modesim
