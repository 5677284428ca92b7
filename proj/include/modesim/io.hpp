// JSON (de)serialization: network configurations, inequality datasets,
// input states, and the report documents the command line emits.
//
// Network schema
//   {
//     "paths": ["a", "b"],                     // basis = a.H, a.V, b.H, b.V
//     "logical_inputs": ["a.H", "a.V", "b.H"], // modes 0, 1, 2
//     "elements": [
//       {"type": "hwp", "path": "a", "angle_deg": 22.5},
//       {"type": "pbs", "path_a": "a", "path_b": "b"},
//       {"type": "relabel", "mapping": {"a.H": "b.H", "b.H": "a.H"}}
//     ],
//     "detectors": {"D0": "a.H", "D1": "a.V", "D2": "b.H"}
//   }
// Angles are degrees in files and radians in memory.
//
// Inequality schema
//   {
//     "name": "...", "provenance": "...",
//     "rays": [{"name": "z1", "vector": [1, 0, 0]}, ...],
//     "vertex_coefficient": "1",      // or "vertex_coefficients": [...]
//     "edge_coefficient": "-1/2"      // applied per orthogonality-graph edge
//   }
// Ray components are real numbers or [re, im] pairs; vectors are
// normalized on load. Coefficients are rationals: "p/q", integers, or
// exactly-representable decimals.
//
// State schema: {"amplitudes": [c0, c1, c2]} on logical modes 0, 1, 2.

#ifndef MODESIM_IO_HPP
#define MODESIM_IO_HPP

#include "modesim/context_verifier.hpp"
#include "modesim/contextuality_oracle.hpp"

#include <json.hpp>

#include <filesystem>

namespace modesim::io {

NetworkSpec parse_network_file(const std::filesystem::path& path);
NetworkSpec parse_network_json(const nlohmann::json& doc, const std::string& context);
nlohmann::ordered_json network_to_json(const NetworkSpec& net);

struct InequalityFile {
  std::string name;
  std::string provenance;
  RaySet rays;
  std::vector<Rational> vertex_coeffs;  // one per ray
  Rational edge_coeff;                  // one per orthogonality-graph edge
};

InequalityFile parse_inequality_file(const std::filesystem::path& path);

/// Applies the file's coefficients to a computed compatibility graph.
InequalityExpression build_expression(const InequalityFile& file,
                                      const CompatibilityGraph& graph);

Eigen::Vector3cd parse_state_file(const std::filesystem::path& path);

nlohmann::ordered_json verification_report_to_json(const VerificationReport& report);
nlohmann::ordered_json inequality_report_to_json(const InequalityReport& report,
                                                 const CompatibilityGraph& graph);

/// "state_index,value" rows; the final row is the maximally mixed state.
std::string scan_to_csv(const ScanResult& scan);
nlohmann::ordered_json scan_to_json(const ScanResult& scan);

}  // namespace modesim::io

#endif  // MODESIM_IO_HPP
