// The primitive network elements — half-wave plates, polarizing beam
// splitters and mode relabelings — embedded as unitaries on a full mode
// basis, plus the composition of an element list into one mode transformer.

#ifndef MODESIM_OPTICAL_ELEMENTS_HPP
#define MODESIM_OPTICAL_ELEMENTS_HPP

#include "modesim/mode_calculus.hpp"

#include <array>
#include <variant>

namespace modesim {

// Reflection coefficient of the PBS. The device is defined only by
// "transmit H, reflect V"; the phase picked up on reflection is a
// convention and cancels in every projector comparison this library makes.
inline constexpr double kPbsReflectionPhase = 1.0;

/// Half-wave plate at angle theta (radians) acting on one path.
struct HwpElement {
  std::string path;
  double theta;

  bool operator==(const HwpElement&) const = default;
};

/// Polarizing beam splitter joining two distinct paths.
struct PbsElement {
  std::string path_a;
  std::string path_b;

  bool operator==(const PbsElement&) const = default;
};

/// Relabeling of modes; the mapping must extend to a bijection by identity.
struct RelabelElement {
  std::map<ModeLabel, ModeLabel> mapping;

  bool operator==(const RelabelElement&) const = default;
};

using ElementSpec = std::variant<HwpElement, PbsElement, RelabelElement>;

/// Rotation by 2*theta on (H, V):
///   H -> cos(2t) H + sin(2t) V,   V -> -sin(2t) H + cos(2t) V.
/// Columns are images of H and V respectively. Throws on non-finite theta.
Eigen::Matrix2cd hwp_matrix(double theta);

/// Permutation on (A.H, A.V, B.H, B.V): H components are transmitted on
/// their own path, V components are reflected onto the other path (times
/// kPbsReflectionPhase). Throws if the two paths coincide.
Eigen::Matrix4cd pbs_matrix(const std::string& path_a, const std::string& path_b);

/// Embeds one element into the full basis, identity on untouched modes.
UnitaryMap element_to_unitary(const ElementSpec& element, const ModeBasis& basis);

/// A full experimental configuration: the physical mode basis (including
/// vacuum-fed ancilla modes), the ordered element list, the detector
/// assignment, and which three modes carry the logical system 0, 1, 2.
struct NetworkSpec {
  NetworkSpec(ModeBasis basis, std::vector<ElementSpec> elements,
              std::map<std::string, ModeLabel> detectors,
              std::array<ModeLabel, 3> logical_inputs);

  ModeBasis basis;
  std::vector<ElementSpec> elements;
  std::map<std::string, ModeLabel> detectors;
  std::array<ModeLabel, 3> logical_inputs;

  bool operator==(const NetworkSpec&) const = default;
};

/// Left-to-right composition of the element list into one unitary.
UnitaryMap network_unitary(const NetworkSpec& net);

}  // namespace modesim

#endif  // MODESIM_OPTICAL_ELEMENTS_HPP
