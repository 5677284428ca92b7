#include "modesim/optical_elements.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace modesim {

Eigen::Matrix2cd hwp_matrix(double theta) {
  if (!std::isfinite(theta)) {
    throw std::invalid_argument("HWP angle must be finite");
  }
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  Eigen::Matrix2cd m;
  m << c, -s,
       s, c;
  return m;
}

Eigen::Matrix4cd pbs_matrix(const std::string& path_a, const std::string& path_b) {
  if (path_a == path_b) {
    throw std::invalid_argument("PBS needs two distinct paths, got '" + path_a +
                                "' twice");
  }
  // Mode order (A.H, A.V, B.H, B.V): H transmitted, V reflected across paths.
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(3, 1) = kPbsReflectionPhase;
  m(1, 3) = kPbsReflectionPhase;
  return m;
}

namespace {

std::size_t mode_index(const ModeBasis& basis, const std::string& path,
                       Polarization pol) {
  return basis.index_of(ModeLabel{path, pol});
}

UnitaryMap embed_hwp(const HwpElement& hwp, const ModeBasis& basis) {
  const auto h = static_cast<Eigen::Index>(mode_index(basis, hwp.path, Polarization::H));
  const auto v = static_cast<Eigen::Index>(mode_index(basis, hwp.path, Polarization::V));
  const Eigen::Matrix2cd local = hwp_matrix(hwp.theta);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  m(h, h) = local(0, 0);
  m(h, v) = local(0, 1);
  m(v, h) = local(1, 0);
  m(v, v) = local(1, 1);
  return UnitaryMap(basis, std::move(m));
}

UnitaryMap embed_pbs(const PbsElement& pbs, const ModeBasis& basis) {
  const Eigen::Matrix4cd local = pbs_matrix(pbs.path_a, pbs.path_b);
  const std::array<Eigen::Index, 4> idx = {
      static_cast<Eigen::Index>(mode_index(basis, pbs.path_a, Polarization::H)),
      static_cast<Eigen::Index>(mode_index(basis, pbs.path_a, Polarization::V)),
      static_cast<Eigen::Index>(mode_index(basis, pbs.path_b, Polarization::H)),
      static_cast<Eigen::Index>(mode_index(basis, pbs.path_b, Polarization::V))};
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m(idx[r], idx[c]) = local(r, c);
    }
  }
  return UnitaryMap(basis, std::move(m));
}

}  // namespace

UnitaryMap element_to_unitary(const ElementSpec& element, const ModeBasis& basis) {
  return std::visit(
      [&basis](const auto& e) -> UnitaryMap {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, HwpElement>) {
          return embed_hwp(e, basis);
        } else if constexpr (std::is_same_v<T, PbsElement>) {
          return embed_pbs(e, basis);
        } else {
          return permutation_map(basis, e.mapping);
        }
      },
      element);
}

NetworkSpec::NetworkSpec(ModeBasis basis_in, std::vector<ElementSpec> elements_in,
                         std::map<std::string, ModeLabel> detectors_in,
                         std::array<ModeLabel, 3> logical_inputs_in)
    : basis(std::move(basis_in)),
      elements(std::move(elements_in)),
      detectors(std::move(detectors_in)),
      logical_inputs(std::move(logical_inputs_in)) {
  for (const auto& element : elements) {
    element_to_unitary(element, basis);  // surfaces unknown labels up front
  }
  std::set<ModeLabel> detector_modes;
  for (const auto& [name, mode] : detectors) {
    basis.index_of(mode);
    if (!detector_modes.insert(mode).second) {
      throw std::invalid_argument("detector output mode '" + mode.str() +
                                  "' assigned twice");
    }
  }
  std::set<ModeLabel> logical_set;
  for (const auto& label : logical_inputs) {
    basis.index_of(label);
    if (!logical_set.insert(label).second) {
      throw std::invalid_argument("logical input '" + label.str() +
                                  "' listed twice");
    }
  }
}

UnitaryMap network_unitary(const NetworkSpec& net) {
  UnitaryMap u = UnitaryMap::identity(net.basis);
  for (const auto& element : net.elements) {
    u = compose(u, element_to_unitary(element, net.basis));
  }
  return u;
}

}  // namespace modesim
