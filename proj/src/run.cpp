#include "modesim/run.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace modesim {

using nlohmann::ordered_json;

namespace {

const char* command_name(RunConfig::Command command) {
  switch (command) {
    case RunConfig::Command::simulate: return "simulate";
    case RunConfig::Command::verify_context: return "verify-context";
    case RunConfig::Command::verify_relabel: return "verify-relabel";
    case RunConfig::Command::bound: return "bound";
    case RunConfig::Command::scan: return "scan";
  }
  return "?";
}

void require_inputs(const RunConfig& config, std::size_t count) {
  if (config.inputs.size() != count) {
    std::ostringstream out;
    out << command_name(config.command) << " takes " << count << " input file"
        << (count == 1 ? "" : "s") << ", got " << config.inputs.size();
    throw std::invalid_argument(out.str());
  }
}

ordered_json matrix_to_json(const Eigen::Matrix3cd& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 3; ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::map<ModeLabel, ModeLabel> parse_relabel_map(const std::string& text,
                                                 const NetworkSpec& net) {
  std::map<int, int> index_map;
  std::stringstream stream(text);
  std::string entry;
  while (std::getline(stream, entry, ',')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("relabel entry '" + entry +
                                  "' is not of the form FROM:TO");
    }
    int from = 0;
    int to = 0;
    try {
      from = std::stoi(entry.substr(0, colon));
      to = std::stoi(entry.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("relabel entry '" + entry +
                                  "' is not a pair of logical mode indices");
    }
    for (const int index : {from, to}) {
      if (index < 0 || index > 2) {
        throw std::invalid_argument("logical mode index " + std::to_string(index) +
                                    " outside 0..2");
      }
    }
    if (!index_map.emplace(from, to).second) {
      throw std::invalid_argument("logical mode " + std::to_string(from) +
                                  " relabeled twice");
    }
  }
  if (index_map.empty()) {
    throw std::invalid_argument("empty relabel map; expected e.g. \"0:2,2:0\"");
  }
  std::map<ModeLabel, ModeLabel> relabel;
  for (const auto& [from, to] : index_map) {
    relabel.emplace(net.logical_inputs[static_cast<std::size_t>(from)],
                    net.logical_inputs[static_cast<std::size_t>(to)]);
  }
  return relabel;
}

void write_output(const RunConfig& config, std::ostream& fallback,
                  const std::string& text) {
  if (config.out.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) {
    throw std::invalid_argument("cannot write '" + config.out.string() + "'");
  }
  file << text;
}

std::string render(const ordered_json& doc) { return doc.dump(2) + "\n"; }

int run_simulate(const RunConfig& config, std::ostream& out_stream) {
  require_inputs(config, 1);
  const NetworkSpec net = io::parse_network_file(config.inputs[0]);
  if (config.state_path.empty()) {
    throw std::invalid_argument("simulate needs --state <file>");
  }
  const Eigen::Vector3cd state = io::parse_state_file(config.state_path);

  ordered_json doc;
  doc["command"] = "simulate";
  doc["network"] = config.inputs[0].filename().string();
  ordered_json detectors;
  for (const auto& detector : detector_models(net)) {
    const Projector p = extract_projector(net, detector.name);
    detectors[detector.name] = {{"output_mode", detector.output_mode.str()},
                                {"projector", matrix_to_json(p.matrix())},
                                {"probability", detection_probability(state, p)}};
  }
  doc["detectors"] = std::move(detectors);
  write_output(config, out_stream, render(doc));
  return 0;
}

int run_verify_context(const RunConfig& config, std::ostream& out_stream) {
  require_inputs(config, 2);
  if (config.detector.empty()) {
    throw std::invalid_argument("verify-context needs --detector <name>");
  }
  const ContextPair pair(io::parse_network_file(config.inputs[0]),
                         io::parse_network_file(config.inputs[1]),
                         config.detector);
  const VerificationReport report = verify_shared_observable(pair, config.tol);

  ordered_json doc;
  doc["command"] = "verify-context";
  doc["detector"] = config.detector;
  doc.update(io::verification_report_to_json(report));
  write_output(config, out_stream, render(doc));
  return report.passed ? 0 : 1;
}

int run_verify_relabel(const RunConfig& config, std::ostream& out_stream) {
  require_inputs(config, 1);
  const NetworkSpec net = io::parse_network_file(config.inputs[0]);
  if (config.relabel_map.empty()) {
    throw std::invalid_argument("verify-relabel needs --map \"FROM:TO,...\"");
  }
  const auto relabel = parse_relabel_map(config.relabel_map, net);
  const VerificationReport report = verify_relabel_equivalence(net, relabel, config.tol);

  ordered_json doc;
  doc["command"] = "verify-relabel";
  doc["map"] = config.relabel_map;
  doc.update(io::verification_report_to_json(report));
  write_output(config, out_stream, render(doc));
  return report.passed ? 0 : 1;
}

int run_bound(const RunConfig& config, std::ostream& out_stream) {
  require_inputs(config, 1);
  const io::InequalityFile file = io::parse_inequality_file(config.inputs[0]);
  const CompatibilityGraph graph = orthogonality_graph(file.rays, config.tol);
  const InequalityExpression expr = io::build_expression(file, graph);
  const InequalityReport report = evaluate_inequality(
      expr, graph, file.rays, Eigen::Matrix3cd::Identity() / 3.0);

  ordered_json doc;
  doc["command"] = "bound";
  doc["name"] = file.name;
  doc.update(io::inequality_report_to_json(report, graph));
  write_output(config, out_stream, render(doc));
  return 0;
}

int run_scan(const RunConfig& config, std::ostream& out_stream) {
  require_inputs(config, 1);
  const io::InequalityFile file = io::parse_inequality_file(config.inputs[0]);
  const CompatibilityGraph graph = orthogonality_graph(file.rays, config.tol);
  const InequalityExpression expr = io::build_expression(file, graph);
  const ScanResult scan =
      state_independence_scan(expr, file.rays, config.states, config.seed);

  if (config.format.value_or(RunConfig::Format::csv) == RunConfig::Format::csv) {
    write_output(config, out_stream, io::scan_to_csv(scan));
  } else {
    ordered_json doc;
    doc["command"] = "scan";
    doc["name"] = file.name;
    doc["states"] = config.states;
    doc["seed"] = config.seed;
    doc.update(io::scan_to_json(scan));
    write_output(config, out_stream, render(doc));
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out_stream, std::ostream& err_stream) {
  try {
    if (config.format == RunConfig::Format::csv &&
        config.command != RunConfig::Command::scan) {
      throw std::invalid_argument("csv output is only available for scan");
    }
    switch (config.command) {
      case RunConfig::Command::simulate:
        return run_simulate(config, out_stream);
      case RunConfig::Command::verify_context:
        return run_verify_context(config, out_stream);
      case RunConfig::Command::verify_relabel:
        return run_verify_relabel(config, out_stream);
      case RunConfig::Command::bound:
        return run_bound(config, out_stream);
      case RunConfig::Command::scan:
        return run_scan(config, out_stream);
    }
    return 2;
  } catch (const std::exception& e) {
    ordered_json error;
    error["command"] = command_name(config.command);
    error["error"] = e.what();
    err_stream << error.dump(2) << "\n";
    return 2;
  }
}

int run(const RunConfig& config) { return run(config, std::cout, std::cerr); }

}  // namespace modesim
