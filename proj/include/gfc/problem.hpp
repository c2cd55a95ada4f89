#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gfc/solver.hpp"
#include "json.hpp"

namespace gfc {

struct Grid {
  double t_min = 0.1;
  double t_max = 1.0;
  int points = 11;

  std::vector<double> nodes() const;
};

/// Command-line overrides applied on top of the file's truncation block.
struct Overrides {
  std::optional<Exponent> mu_max;
  std::optional<double> tol;
};

struct ProblemFile {
  std::string kernel_type;          // "power_law" or "explicit"
  Exponent alpha;                   // power_law only
  CauchyProblem problem;
  Grid grid;
  Truncation trunc;
  double horizon = kDefaultHorizon;
};

/// Schema-checked parse; every violation raises ErrorKind::Schema.
ProblemFile parse_problem(const nlohmann::ordered_json& j, const Overrides& o = {});
ProblemFile load_problem(const std::filesystem::path& path, const Overrides& o = {});

/// Builds the pair described by a "kernel" block.
SoninePair parse_kernel(const nlohmann::ordered_json& kernel, const Exponent& mu_max,
                        double horizon, std::string* type = nullptr,
                        Exponent* alpha = nullptr);

nlohmann::ordered_json read_json(const std::filesystem::path& path);

}  // namespace gfc
