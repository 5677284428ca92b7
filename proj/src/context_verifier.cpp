#include "modesim/context_verifier.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace modesim {

ContextPair::ContextPair(NetworkSpec left, NetworkSpec right, std::string shared)
    : net_left(std::move(left)),
      net_right(std::move(right)),
      shared_detector(std::move(shared)) {
  if (!(net_left.basis == net_right.basis)) {
    throw std::invalid_argument("context pair: bases differ, " +
                                net_left.basis.str() + " vs " +
                                net_right.basis.str());
  }
  if (net_left.logical_inputs != net_right.logical_inputs) {
    throw std::invalid_argument("context pair: logical inputs differ");
  }
  for (const auto* net : {&net_left, &net_right}) {
    if (net->detectors.find(shared_detector) == net->detectors.end()) {
      throw std::invalid_argument("context pair: detector '" + shared_detector +
                                  "' missing from one network");
    }
  }
}

namespace {

Projector extract_with_side(const NetworkSpec& net, const std::string& detector,
                            const char* side) {
  try {
    return extract_projector(net, detector);
  } catch (const LeakageError& e) {
    throw LeakageError(detector + "' in " + side + " network'", e.leakage_norm());
  }
}

}  // namespace

VerificationReport verify_shared_observable(const ContextPair& pair, double tol) {
  const Projector left = extract_with_side(pair.net_left, pair.shared_detector, "left");
  const Projector right = extract_with_side(pair.net_right, pair.shared_detector, "right");
  const double deviation = max_abs(left.matrix() - right.matrix());
  return VerificationReport{deviation <= tol, deviation, tol,
                            {{pair.shared_detector, deviation}}};
}

VerificationReport verify_relabel_equivalence(
    const NetworkSpec& net, const std::map<ModeLabel, ModeLabel>& relabel,
    double tol) {
  const std::set<ModeLabel> logical(net.logical_inputs.begin(),
                                    net.logical_inputs.end());
  for (const auto& [from, to] : relabel) {
    if (logical.count(from) == 0 || logical.count(to) == 0) {
      throw std::invalid_argument("relabel entry '" + from.str() + "' -> '" +
                                  to.str() + "' leaves the logical inputs");
    }
  }
  permutation_map(net.basis, relabel);  // rejects non-bijective maps up front

  // Permutation of logical positions induced by the label bijection.
  std::array<int, 3> perm{};
  for (int a = 0; a < 3; ++a) {
    const auto it = relabel.find(net.logical_inputs[a]);
    const ModeLabel image = it == relabel.end() ? net.logical_inputs[a] : it->second;
    const auto pos = std::find(net.logical_inputs.begin(), net.logical_inputs.end(), image);
    perm[a] = static_cast<int>(pos - net.logical_inputs.begin());
  }
  Eigen::Matrix3cd sigma = Eigen::Matrix3cd::Zero();
  for (int a = 0; a < 3; ++a) {
    sigma(perm[a], a) = 1.0;
  }

  NetworkSpec relabeled = net;
  relabeled.elements.insert(relabeled.elements.begin(), RelabelElement{relabel});

  VerificationReport report{true, 0.0, tol, {}};
  for (const auto& [name, mode] : net.detectors) {
    const Projector original = extract_projector(net, name);
    const Projector swapped = extract_projector(relabeled, name);
    const double deviation =
        max_abs(sigma * swapped.matrix() * sigma.adjoint() - original.matrix());
    report.detail.push_back({name, deviation});
    report.deviation = std::max(report.deviation, deviation);
  }
  report.passed = report.deviation <= tol;
  return report;
}

VerificationReport linearity_check(const NetworkSpec& net, int trials, double tol,
                                   std::uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("linearity check needs at least one trial");
  }
  const UnitaryMap u = network_unitary(net);
  const auto n = static_cast<Eigen::Index>(net.basis.size());

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);

  const std::vector<DetectorModel> detectors = detector_models(net);
  const auto argmax_detector = [&](const AmplitudeVector& out) {
    std::string best;
    double best_intensity = -1.0;
    for (const auto& detector : detectors) {
      const double intensity = std::norm(out.amplitudes(
          static_cast<Eigen::Index>(net.basis.index_of(detector.output_mode))));
      if (intensity > best_intensity) {
        best_intensity = intensity;
        best = detector.name;
      }
    }
    return best;
  };

  double worst_scaling = 0.0;
  int argmax_mismatches = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      v(i) = Complex(gauss(rng), gauss(rng));
    }
    const Complex lambda(gauss(rng), gauss(rng));
    const AmplitudeVector base(net.basis, v);
    const AmplitudeVector out = apply(u, base);
    const AmplitudeVector out_scaled = apply(u, AmplitudeVector(net.basis, lambda * v));
    worst_scaling = std::max(
        worst_scaling,
        max_abs(out_scaled.amplitudes - lambda * out.amplitudes));

    if (!net.detectors.empty()) {
      const double mu = scale(rng);
      const AmplitudeVector out_mu = apply(u, AmplitudeVector(net.basis, mu * v));
      if (argmax_detector(out) != argmax_detector(out_mu)) {
        ++argmax_mismatches;
      }
    }
  }

  VerificationReport report{
      worst_scaling <= tol && argmax_mismatches == 0,
      worst_scaling,
      tol,
      {{"scaling-deviation", worst_scaling},
       {"intensity-argmax-mismatches", static_cast<double>(argmax_mismatches)}}};
  return report;
}

}  // namespace modesim
