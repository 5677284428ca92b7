#include "modesim/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace modesim::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw std::invalid_argument(context + ": " + message);
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path.string() + "': " + e.what());
  }
}

const json& field(const json& doc, const char* key, const std::string& context) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    fail(context, std::string("missing field '") + key + "'");
  }
  return *it;
}

std::string string_field(const json& doc, const char* key,
                         const std::string& context) {
  const json& value = field(doc, key, context);
  if (!value.is_string()) {
    fail(context, std::string("'") + key + "' must be a string, got " + value.dump());
  }
  return value.get<std::string>();
}

ModeLabel parse_label(const json& value, const std::string& context,
                      const std::set<std::string>& paths) {
  if (!value.is_string()) {
    fail(context, "expected a \"path.H\"/\"path.V\" string, got " + value.dump());
  }
  ModeLabel label = ModeLabel::parse(value.get<std::string>());
  if (paths.count(label.path) == 0) {
    fail(context, "unknown path '" + label.path + "'");
  }
  return label;
}

Complex parse_component(const json& value, const std::string& context) {
  if (value.is_number()) {
    return Complex(value.get<double>(), 0.0);
  }
  if (value.is_array() && value.size() == 2 && value[0].is_number() &&
      value[1].is_number()) {
    return Complex(value[0].get<double>(), value[1].get<double>());
  }
  fail(context, "expected a real number or an [re, im] pair, got " + value.dump());
}

Rational parse_rational(const json& value, const std::string& context) {
  try {
    if (value.is_string()) {
      return Rational::parse(value.get<std::string>());
    }
    if (value.is_number_integer()) {
      return Rational(value.get<long long>());
    }
    if (value.is_number()) {
      return Rational::from_double(value.get<double>());
    }
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
  fail(context, "expected a rational coefficient, got " + value.dump());
}

}  // namespace

NetworkSpec parse_network_json(const json& doc, const std::string& context) {
  if (!doc.is_object()) {
    fail(context, "expected a JSON object");
  }

  std::set<std::string> path_set;
  std::vector<ModeLabel> labels;
  const json& paths = field(doc, "paths", context);
  if (!paths.is_array() || paths.empty()) {
    fail(context, "'paths' must be a non-empty array of path names");
  }
  for (const auto& p : paths) {
    if (!p.is_string()) {
      fail(context, "'paths' entries must be strings, got " + p.dump());
    }
    const auto name = p.get<std::string>();
    if (!path_set.insert(name).second) {
      fail(context, "duplicate path '" + name + "'");
    }
    labels.push_back({name, Polarization::H});
    labels.push_back({name, Polarization::V});
  }
  ModeBasis basis(std::move(labels));

  const json& logical = field(doc, "logical_inputs", context);
  if (!logical.is_array() || logical.size() != 3) {
    fail(context, "'logical_inputs' must list exactly 3 modes");
  }
  std::array<ModeLabel, 3> logical_inputs = {
      parse_label(logical[0], context + ", logical_inputs[0]", path_set),
      parse_label(logical[1], context + ", logical_inputs[1]", path_set),
      parse_label(logical[2], context + ", logical_inputs[2]", path_set)};

  std::vector<ElementSpec> elements;
  if (doc.contains("elements")) {
    const json& list = doc["elements"];
    if (!list.is_array()) {
      fail(context, "'elements' must be an array");
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = context + ", elements[" + std::to_string(k) + "]";
      const json& e = list[k];
      const std::string type = string_field(e, "type", where);
      if (type == "hwp") {
        const std::string path = string_field(e, "path", where);
        if (path_set.count(path) == 0) {
          fail(where, "unknown path '" + path + "'");
        }
        const json& angle = field(e, "angle_deg", where);
        if (!angle.is_number()) {
          fail(where, "'angle_deg' must be a number");
        }
        elements.push_back(HwpElement{path, angle.get<double>() * kDegToRad});
      } else if (type == "pbs") {
        const std::string a = string_field(e, "path_a", where);
        const std::string b = string_field(e, "path_b", where);
        for (const auto& p : {a, b}) {
          if (path_set.count(p) == 0) {
            fail(where, "unknown path '" + p + "'");
          }
        }
        elements.push_back(PbsElement{a, b});
      } else if (type == "relabel") {
        const json& mapping = field(e, "mapping", where);
        if (!mapping.is_object()) {
          fail(where, "'mapping' must be an object of label -> label");
        }
        RelabelElement relabel;
        for (const auto& [from, to] : mapping.items()) {
          relabel.mapping.emplace(parse_label(json(from), where, path_set),
                                  parse_label(to, where, path_set));
        }
        elements.push_back(std::move(relabel));
      } else {
        fail(where, "unknown element type '" + type + "'");
      }
    }
  }

  std::map<std::string, ModeLabel> detectors;
  const json& det = field(doc, "detectors", context);
  if (!det.is_object() || det.empty()) {
    fail(context, "'detectors' must be a non-empty object of name -> mode");
  }
  for (const auto& [name, mode] : det.items()) {
    detectors.emplace(name, parse_label(mode, context + ", detector '" + name + "'",
                                        path_set));
  }

  try {
    return NetworkSpec(std::move(basis), std::move(elements), std::move(detectors),
                       std::move(logical_inputs));
  } catch (const std::invalid_argument& e) {
    fail(context, e.what());
  }
}

NetworkSpec parse_network_file(const std::filesystem::path& path) {
  return parse_network_json(load_json(path), "network file '" + path.string() + "'");
}

ordered_json network_to_json(const NetworkSpec& net) {
  ordered_json doc;
  std::vector<std::string> paths;
  for (const auto& label : net.basis.labels()) {
    if (paths.empty() || paths.back() != label.path) {
      paths.push_back(label.path);
    }
  }
  doc["paths"] = paths;
  doc["logical_inputs"] = {net.logical_inputs[0].str(), net.logical_inputs[1].str(),
                           net.logical_inputs[2].str()};
  doc["elements"] = ordered_json::array();
  for (const auto& element : net.elements) {
    std::visit(
        [&doc](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          ordered_json entry;
          if constexpr (std::is_same_v<T, HwpElement>) {
            entry["type"] = "hwp";
            entry["path"] = e.path;
            entry["angle_deg"] = e.theta * kRadToDeg;
          } else if constexpr (std::is_same_v<T, PbsElement>) {
            entry["type"] = "pbs";
            entry["path_a"] = e.path_a;
            entry["path_b"] = e.path_b;
          } else {
            entry["type"] = "relabel";
            ordered_json mapping;
            for (const auto& [from, to] : e.mapping) {
              mapping[from.str()] = to.str();
            }
            entry["mapping"] = std::move(mapping);
          }
          doc["elements"].push_back(std::move(entry));
        },
        element);
  }
  ordered_json detectors;
  for (const auto& [name, mode] : net.detectors) {
    detectors[name] = mode.str();
  }
  doc["detectors"] = std::move(detectors);
  return doc;
}

InequalityFile parse_inequality_file(const std::filesystem::path& path) {
  const json doc = load_json(path);
  const std::string context = "inequality file '" + path.string() + "'";
  if (!doc.is_object()) {
    fail(context, "expected a JSON object");
  }

  const json& rays = field(doc, "rays", context);
  if (!rays.is_array() || rays.empty()) {
    fail(context, "'rays' must be a non-empty array");
  }
  std::vector<std::string> names;
  std::vector<Eigen::Vector3cd> vectors;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string where = context + ", rays[" + std::to_string(i) + "]";
    const json& entry = rays[i];
    names.push_back(string_field(entry, "name", where));
    const json& vec = field(entry, "vector", where);
    if (!vec.is_array() || vec.size() != 3) {
      fail(where, "'vector' must have exactly 3 components");
    }
    Eigen::Vector3cd v;
    for (int c = 0; c < 3; ++c) {
      v(c) = parse_component(vec[c], where);
    }
    vectors.push_back(v);
  }

  InequalityFile file{
      doc.value("name", ""),
      doc.value("provenance", ""),
      RaySet::normalized(std::move(names), std::move(vectors)),
      {},
      Rational(0),
  };

  if (doc.contains("vertex_coefficients")) {
    const json& list = doc["vertex_coefficients"];
    if (!list.is_array() || list.size() != file.rays.size()) {
      fail(context, "'vertex_coefficients' must list one coefficient per ray");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      file.vertex_coeffs.push_back(parse_rational(
          list[i], context + ", vertex_coefficients[" + std::to_string(i) + "]"));
    }
  } else {
    const Rational v = parse_rational(field(doc, "vertex_coefficient", context),
                                      context + ", vertex_coefficient");
    file.vertex_coeffs.assign(file.rays.size(), v);
  }

  file.edge_coeff = parse_rational(field(doc, "edge_coefficient", context),
                                   context + ", edge_coefficient");
  return file;
}

InequalityExpression build_expression(const InequalityFile& file,
                                      const CompatibilityGraph& graph) {
  InequalityExpression expr;
  expr.vertex_coeffs = file.vertex_coeffs;
  for (const auto& edge : graph.edges) {
    expr.edge_coeffs.emplace(edge, file.edge_coeff);
  }
  return expr;
}

Eigen::Vector3cd parse_state_file(const std::filesystem::path& path) {
  const json doc = load_json(path);
  const std::string context = "state file '" + path.string() + "'";
  const json& amp = field(doc, "amplitudes", context);
  if (!amp.is_array() || amp.size() != 3) {
    fail(context, "'amplitudes' must have exactly 3 components");
  }
  Eigen::Vector3cd state;
  for (int c = 0; c < 3; ++c) {
    state(c) = parse_component(amp[c], context);
  }
  return state;
}

ordered_json verification_report_to_json(const VerificationReport& report) {
  ordered_json doc;
  doc["passed"] = report.passed;
  doc["deviation"] = report.deviation;
  doc["tolerance"] = report.tolerance;
  doc["detail"] = ordered_json::array();
  for (const auto& entry : report.detail) {
    doc["detail"].push_back({{"name", entry.name}, {"deviation", entry.deviation}});
  }
  return doc;
}

ordered_json inequality_report_to_json(const InequalityReport& report,
                                       const CompatibilityGraph& graph) {
  ordered_json doc;
  doc["classical_bound"] = {{"numerator", report.classical_bound.num},
                            {"denominator", report.classical_bound.den},
                            {"value", report.classical_bound.value()}};
  doc["maximizing_assignment"] = report.maximizing_assignment;
  doc["quantum_value"] = report.quantum_value;
  doc["violation"] = report.violation;
  ordered_json edges = ordered_json::array();
  for (const auto& [i, j] : graph.edges) {
    edges.push_back({i, j});
  }
  doc["graph"] = {{"vertices", graph.vertex_count},
                  {"edge_count", graph.edges.size()},
                  {"edges", std::move(edges)}};
  return doc;
}

std::string scan_to_csv(const ScanResult& scan) {
  std::ostringstream out;
  out << "state_index,value\n";
  out.precision(17);
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    out << i << ',' << scan.values[i] << '\n';
  }
  return out.str();
}

ordered_json scan_to_json(const ScanResult& scan) {
  ordered_json doc;
  doc["values"] = scan.values;
  doc["min"] = scan.min_value;
  doc["max"] = scan.max_value;
  doc["spread"] = scan.spread;
  return doc;
}

}  // namespace modesim::io
