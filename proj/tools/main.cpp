// modesim command line: simulate linear-optical mode-transformer networks,
// verify context-independence and relabeling claims, and evaluate
// noncontextuality inequalities.

#include "modesim/run.hpp"

#include <CLI11.hpp>

#include <map>
#include <string>

int main(int argc, char** argv) {
  using modesim::RunConfig;

  CLI::App app{
      "Linear-optical mode-transformer simulator and contextuality "
      "verification toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format;

  const std::map<std::string, RunConfig::Format> format_names{
      {"json", RunConfig::Format::json}, {"csv", RunConfig::Format::csv}};

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", config.tol,
                    "comparison tolerance (default 1e-9; algebraic identities "
                    "are built to 1e-12)")
        ->capture_default_str();
    cmd->add_option("--out", config.out, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format: json or csv (scan only)")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* simulate =
      app.add_subcommand("simulate",
                         "extract detector projectors on the logical modes and "
                         "compute click probabilities for a state");
  simulate->add_option("network", config.inputs, "network JSON file")
      ->required()
      ->expected(1);
  simulate->add_option("--state", config.state_path, "state JSON file")->required();
  add_common(simulate);

  CLI::App* verify_context = app.add_subcommand(
      "verify-context",
      "check that a shared detector measures the same observable in two networks");
  verify_context->add_option("networks", config.inputs, "two network JSON files")
      ->required()
      ->expected(2);
  verify_context->add_option("--detector", config.detector, "shared detector name")
      ->required();
  add_common(verify_context);

  CLI::App* verify_relabel = app.add_subcommand(
      "verify-relabel",
      "check that relabeling logical modes only permutes the observables");
  verify_relabel->add_option("network", config.inputs, "network JSON file")
      ->required()
      ->expected(1);
  verify_relabel
      ->add_option("--map", config.relabel_map,
                   "logical mode relabeling, e.g. \"0:2,2:0\"")
      ->required();
  add_common(verify_relabel);

  CLI::App* bound = app.add_subcommand(
      "bound",
      "exhaustive noncontextual bound and quantum value of an inequality");
  bound->add_option("inequality", config.inputs, "inequality JSON file")
      ->required()
      ->expected(1);
  add_common(bound);

  CLI::App* scan = app.add_subcommand(
      "scan", "evaluate an inequality over random pure states plus the "
              "maximally mixed state");
  scan->add_option("inequality", config.inputs, "inequality JSON file")
      ->required()
      ->expected(1);
  scan->add_option("--states", config.states, "number of random states")
      ->capture_default_str();
  scan->add_option("--seed", config.seed, "random seed")->capture_default_str();
  add_common(scan);

  CLI11_PARSE(app, argc, argv);

  if (!format.empty()) {
    config.format = format_names.at(format);
  }
  if (simulate->parsed()) config.command = RunConfig::Command::simulate;
  if (verify_context->parsed()) config.command = RunConfig::Command::verify_context;
  if (verify_relabel->parsed()) config.command = RunConfig::Command::verify_relabel;
  if (bound->parsed()) config.command = RunConfig::Command::bound;
  if (scan->parsed()) config.command = RunConfig::Command::scan;

  return modesim::run(config);
}
