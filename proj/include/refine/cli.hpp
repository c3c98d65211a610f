#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace refine::cli {

// Exit codes shared with test harnesses.
enum ExitCode : int { kSuccess = 0, kUsage = 1, kInputError = 2, kNumericalError = 3 };

enum class OutputFormat { table, records };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::string reward;
  std::string link;
  int poly_order = 2;
  std::size_t bins = 0;  // 0: subcommand default
  std::size_t k = 0;     // 0: all features
  double tolerance = 1e-9;
  int max_depth = 20;
  std::optional<double> prior;
  std::string label_column = "label";
  std::string figure = "all";
  char delimiter = ',';
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::table;
};

// Parses `args` (args[0] is the program name), validates, dispatches, and
// writes the report to the configured output. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refine::cli
