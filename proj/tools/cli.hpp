#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace elocc::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string subcommand;
  std::string model;
  std::string parameter;
  int n_sites = 10;
  std::string cut;  ///< empty: half chain
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  double target_step = 1e-3;
  std::optional<double> split;
  double tolerance = 0.1;
  std::vector<int> sizes{4, 6, 8, 10};
  std::string points_path;
  std::string a_path;
  std::string b_path;
  double alpha_min = 0.1;
  double alpha_max = 50.0;
  int alpha_points = 500;
  double refine_tol = 1e-6;
  double trunc = 1e-10;
  bool excited = false;
  bool paper_rounding = false;
  std::string output;  ///< empty: stdout
  OutputFormat format = OutputFormat::Csv;
  bool banner = true;
  int workers = 1;
};

/// Parses and runs one command line (argv[0] is the program name).
/// Results go to --output or `out`; diagnostics to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace elocc::cli
