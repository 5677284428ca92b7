// Command dispatch shared by the CLI binary and the test suites: a parsed
// run configuration in, report documents and an exit status out.

#ifndef MODESIM_RUN_HPP
#define MODESIM_RUN_HPP

#include "modesim/io.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace modesim {

struct RunConfig {
  enum class Command { simulate, verify_context, verify_relabel, bound, scan };
  enum class Format { json, csv };

  Command command = Command::simulate;
  std::vector<std::filesystem::path> inputs;  // network or inequality files
  std::filesystem::path state_path;           // simulate
  std::string detector;                       // verify-context
  std::string relabel_map;                    // verify-relabel, e.g. "0:2,2:0"
  double tol = kPhysicalTol;
  std::uint64_t seed = kDefaultSeed;
  int states = 100;
  std::filesystem::path out;                  // empty = stdout
  std::optional<Format> format;               // default: json (csv for scan)
};

/// Runs one command. Returns 0 on success with all verifications passed,
/// 1 when a verification failed, 2 on any error (after writing a
/// structured JSON error document to the error stream).
int run(const RunConfig& config, std::ostream& out_stream, std::ostream& err_stream);

/// Convenience overload bound to std::cout / std::cerr.
int run(const RunConfig& config);

}  // namespace modesim

#endif  // MODESIM_RUN_HPP
