#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace gfc::cli {

enum ExitCode { kVerified = 0, kError = 1, kUnverified = 2 };

struct SolveOptions {
  std::filesystem::path file;
  std::filesystem::path out_dir = ".";
  bool crosscheck = false;
  bool json_errors = false;
  std::optional<std::string> mu_max;
  std::optional<double> tol;
};

/// Writes <stem>.solution.csv and <stem>.report.json into out_dir.
int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);

/// Prints the associate's leading terms and the Sonine residual.
int run_validate_kernel(const std::filesystem::path& file, bool json_errors,
                        std::ostream& out, std::ostream& err);

}  // namespace gfc::cli
