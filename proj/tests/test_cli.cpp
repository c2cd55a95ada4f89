#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gfc/cli.hpp"
#include "gfc/oracle.hpp"
#include "gfc/problem.hpp"

using namespace gfc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gfc_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("solve the shipped Abel example") {
  const fs::path out = scratch("rl_half");
  cli::SolveOptions o;
  o.file = fs::path(GFC_PROBLEMS_DIR) / "rl_half.json";
  o.out_dir = out;
  o.crosscheck = true;
  std::ostringstream so, se;
  REQUIRE(cli::run_solve(o, so, se) == cli::kVerified);

  std::ifstream csv(out / "rl_half.solution.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,re_y,im_y");
  int rows = 0;
  while (std::getline(csv, line)) {
    double t = 0, re = 0, im = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) == 3);
    const double ref = std::real(oracle::mittag_leffler(0.5, 0.5, std::sqrt(t))) / std::sqrt(t);
    CHECK(std::abs(re - ref) <= 1e-9 * std::max(1.0, ref));
    CHECK(im == 0.0);
    ++rows;
  }
  CHECK(rows == 40);

  const auto report = read_json(out / "rl_half.report.json");
  CHECK(report.at("status") == "verified");
  CHECK(report.begin().key() == "status");
  CHECK(report.contains("crosscheck"));
  // The serialized series re-evaluates to the CSV values.
  const GenSeries y = series_from_json(report.at("solution"), Exponent::parse(
      report.at("truncation").at("solution_cap").get<std::string>()));
  std::ifstream again(out / "rl_half.solution.csv");
  std::getline(again, line);
  while (std::getline(again, line)) {
    double t = 0, re = 0, im = 0;
    std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im);
    CHECK(std::abs(evaluate(y, t) - cplx(re, im)) <= 1e-12 * std::max(1.0, std::abs(re)));
  }
}

TEST_CASE("zero problem gives a zero column") {
  const fs::path out = scratch("zero");
  cli::SolveOptions o;
  o.file = fs::path(GFC_PROBLEMS_DIR) / "zero.json";
  o.out_dir = out;
  std::ostringstream so, se;
  REQUIRE(cli::run_solve(o, so, se) == cli::kVerified);
  std::ifstream csv(out / "zero.solution.csv");
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) CHECK(line.substr(line.find(',')) == ",0,0");
}

TEST_CASE("schema errors exit 1") {
  const fs::path dir = scratch("bad");
  const fs::path f = write_file(dir, "bad.json", R"({
    "kernel": {"type": "power_law", "alpha": "1/0", "n": 1},
    "equation": {"lambda": 1}, "grid": {"t_min": 0.1, "t_max": 1, "points": 3}})");
  cli::SolveOptions o;
  o.file = f;
  o.out_dir = dir;
  o.json_errors = true;
  std::ostringstream so, se;
  CHECK(cli::run_solve(o, so, se) == cli::kError);
  const auto err = nlohmann::json::parse(se.str());
  CHECK(err.at("error") == "schema");
  CHECK(err.at("message").get<std::string>().find("1/0") != std::string::npos);

  const fs::path g = write_file(dir, "tmin.json", R"({
    "kernel": {"type": "power_law", "alpha": "1/2", "n": 1},
    "equation": {"lambda": 1}, "grid": {"t_min": 0, "t_max": 1, "points": 3}})");
  o.file = g;
  std::ostringstream so2, se2;
  CHECK(cli::run_solve(o, so2, se2) == cli::kError);

  const fs::path h = write_file(dir, "deg0.json", R"({
    "kernel": {"type": "power_law", "alpha": "1/2", "n": 1},
    "equation": {"coeffs": [[1, 0]]}, "grid": {"t_min": 0.1, "t_max": 1, "points": 3}})");
  o.file = h;
  std::ostringstream so3, se3;
  CHECK(cli::run_solve(o, so3, se3) == cli::kError);
  CHECK(se3.str().find("not_differential_equation") != std::string::npos);
}

TEST_CASE("unverified residuals exit 2") {
  const fs::path dir = scratch("unverified");
  // lambda^j overflows long before the cap.
  const fs::path f = write_file(dir, "big.json", R"({
    "kernel": {"type": "power_law", "alpha": "1/2", "n": 1},
    "equation": {"lambda": 1e10}, "rhs": {"named": "zero"},
    "initial": [[1e300]],
    "grid": {"t_min": 0.1, "t_max": 1, "points": 3}})");
  cli::SolveOptions o;
  o.file = f;
  o.out_dir = dir;
  std::ostringstream so, se;
  const int code = cli::run_solve(o, so, se);
  CHECK(code == cli::kUnverified);
  CHECK(so.str().find("unverified") != std::string::npos);
  const auto report = nlohmann::json::parse(std::ifstream(dir / "big.report.json"));
  CHECK(report.at("status") == "unverified");
}

TEST_CASE("validate-kernel") {
  const fs::path dir = scratch("kernel");
  std::ostringstream so, se;
  const fs::path a = write_file(dir, "a.json",
                                R"({"kernel": {"type": "power_law", "alpha": "3/4", "n": 1}})");
  CHECK(cli::run_validate_kernel(a, false, so, se) == cli::kVerified);
  CHECK(so.str().find("associate k: 1*h_1/4") != std::string::npos);
  CHECK(so.str().find("sonine residual: 0") != std::string::npos);

  std::ostringstream so2, se2;
  const fs::path b = write_file(dir, "b.json", R"({"kernel": {"type": "explicit", "n": 1,
      "terms": [{"mu": "1/2", "c": 1}, {"mu": 1, "c": 1}]}})");
  CHECK(cli::run_validate_kernel(b, false, so2, se2) == cli::kVerified);
  CHECK(so2.str().find("1*h_1/2 + -1*h_1 + 1*h_3/2") != std::string::npos);

  std::ostringstream so3, se3;
  const fs::path c = write_file(dir, "c.json",
                                R"({"kernel": {"type": "power_law", "alpha": "3/2", "n": 1}})");
  CHECK(cli::run_validate_kernel(c, false, so3, se3) == cli::kError);
  CHECK(se3.str().find("order out of range") != std::string::npos);

  std::ostringstream so4, se4;
  const fs::path d = write_file(dir, "d.json", R"({"kernel": {"type": "explicit", "n": 1,
      "terms": [{"mu": "1/2", "c": 1}], "associate": [{"mu": "1/3", "c": 1}]}})");
  CHECK(cli::run_validate_kernel(d, false, so4, se4) == cli::kError);
  CHECK(se4.str().find("not an L_1 pair") != std::string::npos);
}
