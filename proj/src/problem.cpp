#include "gfc/problem.hpp"

#include <cmath>
#include <fstream>

#include "gfc/error.hpp"

namespace gfc {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const ordered_json& require(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double as_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) schema(where + ": expected a number");
  return j.get<double>();
}

int as_int(const ordered_json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + ": expected an integer");
  return j.get<int>();
}

cplx as_complex(const ordered_json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  schema(where + ": expected a number or [re, im]");
}

Exponent as_exponent(const ordered_json& j, const std::string& where) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  if (j.is_number_integer()) return Exponent(j.get<std::int64_t>());
  schema(where + ": expected an exponent \"p/q\" or an integer");
}

std::vector<std::pair<Exponent, cplx>> as_terms(const ordered_json& j,
                                                const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of terms");
  std::vector<std::pair<Exponent, cplx>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const Exponent mu = as_exponent(require(j[i], "mu", at), at + ".mu");
    if (!mu.is_positive()) schema(at + ".mu: exponent must be positive");
    out.emplace_back(mu, as_complex(require(j[i], "c", at), at + ".c"));
  }
  return out;
}

}  // namespace

std::vector<double> Grid::nodes() const {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    t[static_cast<std::size_t>(k)] =
        points == 1 ? t_min : t_min + (t_max - t_min) * k / (points - 1);
  }
  return t;
}

ordered_json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema("cannot read " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    schema(path.string() + ": " + e.what());
  }
}

SoninePair parse_kernel(const ordered_json& kernel, const Exponent& mu_max, double horizon,
                        std::string* type, Exponent* alpha) {
  const std::string kind = [&] {
    const auto& t = require(kernel, "type", "kernel");
    if (!t.is_string()) schema("kernel.type: expected a string");
    return t.get<std::string>();
  }();
  const int n = as_int(require(kernel, "n", "kernel"), "kernel.n");
  if (type != nullptr) *type = kind;
  if (kind == "power_law") {
    const Exponent a = as_exponent(require(kernel, "alpha", "kernel"), "kernel.alpha");
    if (alpha != nullptr) *alpha = a;
    return make_power_law_pair(a, n, mu_max, horizon);
  }
  if (kind == "explicit") {
    const GenSeries kappa =
        make_series(as_terms(require(kernel, "terms", "kernel"), "kernel.terms"), mu_max,
                    horizon);
    if (n < 1) schema("kernel.n: must be >= 1");
    GenSeries k = kernel.contains("associate")
                      ? make_series(as_terms(kernel.at("associate"), "kernel.associate"),
                                    mu_max, horizon)
                      : sonine_associate(kappa, n);
    return validate_pair(kappa, k, n);
  }
  schema("kernel.type: unknown kernel \"" + kind + "\"");
}

ProblemFile parse_problem(const ordered_json& j, const Overrides& o) {
  if (!j.is_object()) schema("problem file must be a JSON object");
  ProblemFile out;

  const auto& grid = require(j, "grid", "problem");
  out.grid.t_min = as_number(require(grid, "t_min", "grid"), "grid.t_min");
  out.grid.t_max = as_number(require(grid, "t_max", "grid"), "grid.t_max");
  out.grid.points = as_int(require(grid, "points", "grid"), "grid.points");
  if (!(out.grid.t_min > 0.0)) schema("grid.t_min: must be > 0");
  if (!(out.grid.t_max >= out.grid.t_min) || !std::isfinite(out.grid.t_max)) {
    schema("grid.t_max: must be finite and >= t_min");
  }
  if (out.grid.points < 1) schema("grid.points: must be >= 1");

  out.horizon = std::max(kDefaultHorizon, out.grid.t_max);
  if (j.contains("truncation")) {
    const auto& tr = j.at("truncation");
    if (!tr.is_object()) schema("truncation: expected an object");
    if (tr.contains("mu_max")) out.trunc.mu_max = as_exponent(tr.at("mu_max"), "truncation.mu_max");
    if (tr.contains("tol")) out.trunc.tol = as_number(tr.at("tol"), "truncation.tol");
    if (tr.contains("T")) out.horizon = as_number(tr.at("T"), "truncation.T");
  }
  if (o.mu_max) out.trunc.mu_max = *o.mu_max;
  if (o.tol) out.trunc.tol = *o.tol;
  if (!out.trunc.mu_max.is_positive()) schema("truncation.mu_max: must be positive");
  if (!(out.trunc.tol >= 0.0)) schema("truncation.tol: must be >= 0");
  if (!(out.horizon >= out.grid.t_max)) schema("truncation.T: must cover grid.t_max");

  CauchyProblem& p = out.problem;
  p.pair = parse_kernel(require(j, "kernel", "problem"), out.trunc.mu_max, out.horizon,
                        &out.kernel_type, &out.alpha);

  const auto& eq = require(j, "equation", "problem");
  if (eq.contains("coeffs")) {
    const auto& cs = eq.at("coeffs");
    if (!cs.is_array()) schema("equation.coeffs: expected an array");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      c.push_back(as_complex(cs[i], "equation.coeffs[" + std::to_string(i) + "]"));
    }
    p.coeffs = Polynomial(std::move(c));
  } else if (eq.contains("lambda")) {
    p.coeffs = Polynomial{-as_complex(eq.at("lambda"), "equation.lambda"), 1.0};
  } else {
    schema("equation: needs \"coeffs\" or \"lambda\"");
  }
  const int m = p.coeffs.degree();

  p.rhs = GenSeries(out.trunc.mu_max, out.horizon);
  if (j.contains("rhs") && !j.at("rhs").is_null()) {
    const auto& rhs = j.at("rhs");
    if (rhs.contains("terms")) {
      p.rhs = make_series(as_terms(rhs.at("terms"), "rhs.terms"), out.trunc.mu_max,
                          out.horizon);
    } else if (rhs.contains("named")) {
      const auto& name = rhs.at("named");
      const cplx s = rhs.contains("scale") ? as_complex(rhs.at("scale"), "rhs.scale") : 1.0;
      if (!name.is_string()) schema("rhs.named: expected a string");
      const std::string nm = name.get<std::string>();
      if (nm == "one") {
        p.rhs = atom(Exponent(1), s, out.trunc.mu_max, out.horizon);
      } else if (nm == "kappa") {
        p.rhs = scale(p.pair.kappa, s);
      } else if (nm != "zero") {
        schema("rhs.named: unknown atom \"" + nm + "\"");
      }
    } else {
      schema("rhs: needs \"terms\" or \"named\"");
    }
  }

  const int rows = std::max(m, 0);
  p.initial.assign(static_cast<std::size_t>(rows),
                   NullElement{std::vector<cplx>(static_cast<std::size_t>(p.pair.n), 0.0)});
  if (j.contains("initial") && !j.at("initial").is_null()) {
    const auto& ini = j.at("initial");
    if (!ini.is_array() || ini.size() != static_cast<std::size_t>(rows)) {
      schema("initial: expected " + std::to_string(rows) + " rows (one per power of S)");
    }
    for (int q = 0; q < rows; ++q) {
      const auto& row = ini[static_cast<std::size_t>(q)];
      const std::string at = "initial[" + std::to_string(q) + "]";
      if (!row.is_array() || row.size() != static_cast<std::size_t>(p.pair.n)) {
        schema(at + ": expected " + std::to_string(p.pair.n) + " coefficients");
      }
      for (int i = 0; i < p.pair.n; ++i) {
        p.initial[static_cast<std::size_t>(q)].coeffs[static_cast<std::size_t>(i)] =
            as_complex(row[static_cast<std::size_t>(i)],
                       at + "[" + std::to_string(i) + "]");
      }
    }
  }
  return out;
}

ProblemFile load_problem(const std::filesystem::path& path, const Overrides& o) {
  return parse_problem(read_json(path), o);
}

}  // namespace gfc
