#include <iostream>

#include "CLI11.hpp"
#include "gfc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"General fractional calculus solver"};
  app.require_subcommand(1);

  gfc::cli::SolveOptions solve;
  std::string mu_max;
  double tol = 0.0;
  auto* cmd_solve = app.add_subcommand("solve", "Solve a Cauchy problem file");
  cmd_solve->add_option("file", solve.file, "Problem file (JSON)")->required();
  cmd_solve->add_flag("--crosscheck", solve.crosscheck, "Add numeric oracle comparisons");
  auto* opt_mu = cmd_solve->add_option("--mu-max", mu_max, "Exponent cap, e.g. 60 or 121/2");
  auto* opt_tol = cmd_solve->add_option("--tol", tol, "Convolution series tolerance");
  cmd_solve->add_flag("--json-errors", solve.json_errors, "Report errors as JSON");
  cmd_solve->add_option("--out-dir", solve.out_dir, "Output directory");

  std::filesystem::path kernel_file;
  bool kernel_json_errors = false;
  auto* cmd_kernel = app.add_subcommand("validate-kernel", "Check a Sonine pair");
  cmd_kernel->add_option("file", kernel_file, "Problem or kernel file (JSON)")->required();
  cmd_kernel->add_flag("--json-errors", kernel_json_errors, "Report errors as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gfc::cli::kError;
  }

  if (cmd_solve->parsed()) {
    if (opt_mu->count() > 0) solve.mu_max = mu_max;
    if (opt_tol->count() > 0) solve.tol = tol;
    return gfc::cli::run_solve(solve, std::cout, std::cerr);
  }
  return gfc::cli::run_validate_kernel(kernel_file, kernel_json_errors, std::cout,
                                       std::cerr);
}
