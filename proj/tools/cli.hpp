#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hretract/verify.hpp"

namespace hretract::cli {

enum class Command { retract, flow, merge_time, verify, scan, convergence };

/// Parsed command line. Every field that is not set keeps the library default.
struct RunSpec {
  Command command = Command::retract;
  std::string space;       // "euclidean:2", "hyperboloid:3", "tree" (needs space_file)
  std::string space_file;  // JSON space descriptor
  std::string input_file;  // JSON set or tuple
  std::string points;      // inline JSON points array (--set / --tuple)
  std::string out_file;
  std::string trace_csv;
  std::string format = "json";
  std::optional<std::size_t> n;
  std::optional<double> t;
  std::uint64_t seed = 1;
  int samples = 200;
  FlowConfig flow;
  double perturbation_scale = 0.1;
  int oracle_sweeps = 256;
};

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kVerificationFailed = 2 };

/// Parses argv-style arguments (without the program name). Throws
/// ValidationError on malformed flags.
RunSpec parse_args(const std::vector<std::string>& args);

/// Executes one command, writing the report to `out` (or spec.out_file) and
/// diagnostics to `err`.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse_args + run, mapping parse failures to exit code 1.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hretract::cli
