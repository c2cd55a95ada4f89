#include "gfc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gfc/error.hpp"
#include "gfc/oracle.hpp"
#include "gfc/problem.hpp"

namespace gfc::cli {

using nlohmann::ordered_json;

namespace {

constexpr int kCrosscheckGrid = 1024;
constexpr std::size_t kShownTerms = 8;

int report_error(const std::string& kind, const std::string& message, bool json_errors,
                 std::ostream& err) {
  if (json_errors) {
    ordered_json e;
    e["error"] = kind;
    e["message"] = message;
    err << e.dump() << "\n";
  } else {
    err << "error: " << message << "\n";
  }
  return kError;
}

template <class Body>
int guarded(bool json_errors, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), json_errors, err);
  } catch (const nlohmann::json::exception& e) {
    return report_error("schema", e.what(), json_errors, err);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), json_errors, err);
  }
}

std::string format_coeff(cplx c) {
  char buf[96];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", c.real(), c.imag());
  }
  return buf;
}

std::string leading_terms(const GenSeries& s) {
  if (s.empty()) return "0";
  std::string out;
  std::size_t shown = 0;
  for (const Term& t : s.terms()) {
    if (shown == kShownTerms) break;
    if (shown > 0) out += " + ";
    out += format_coeff(t.c) + "*h_" + t.mu.str();
    ++shown;
  }
  if (s.size() > kShownTerms) out += " + ... (" + std::to_string(s.size()) + " terms)";
  return out;
}

ordered_json complex_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json crosscheck(const ProblemFile& pf, const SolutionReport& rep) {
  ordered_json out;
  const CauchyProblem& p = pf.problem;
  const std::vector<double> ts = pf.grid.nodes();

  // y_f = rhs * resolvent against product-integration quadrature.
  if (!p.rhs.empty() && !rep.resolvent.empty()) {
    const double T = pf.grid.t_max;
    const auto f = oracle::sample(p.rhs, T, kCrosscheckGrid);
    const auto g = oracle::sample(rep.resolvent, T, kCrosscheckGrid);
    const auto num = oracle::grid_convolve(f, g);
    double worst = 0.0, scale = 0.0;
    for (int k = 1; k <= kCrosscheckGrid; ++k) {
      const double t = T * k / kCrosscheckGrid;
      if (t < pf.grid.t_min) continue;
      const cplx exact = evaluate(rep.y_f, t);
      worst = std::max(worst, std::abs(exact - num[static_cast<std::size_t>(k)]));
      scale = std::max(scale, std::abs(exact));
    }
    ordered_json g_json;
    g_json["grid_intervals"] = kCrosscheckGrid;
    g_json["max_abs_error"] = worst;
    g_json["max_rel_error"] = scale > 0.0 ? worst / scale : worst;
    out["grid_convolution"] = g_json;
  }

  // Power-law single-term problems have a Mittag-Leffler closed form.
  if (pf.kernel_type == "power_law" && p.coeffs.degree() == 1) {
    const double a = pf.alpha.value();
    const int n = p.pair.n;
    const cplx lambda = -p.coeffs.coeff(0) / p.coeffs.coeff(1);
    const NullElement& gamma = p.initial.front();
    double worst = 0.0;
    int compared = 0;
    for (double t : ts) {
      const cplx z = lambda * std::pow(t, a);
      if (std::abs(z) > 5.0) continue;
      cplx closed(0.0, 0.0);
      for (int i = 0; i < n; ++i) {
        closed += gamma.coeffs[static_cast<std::size_t>(i)] * std::pow(t, a - n + i) *
                  oracle::mittag_leffler(a, a - n + i + 1, z);
      }
      worst = std::max(worst, std::abs(closed - evaluate(rep.y_iv, t)));
      ++compared;
    }
    ordered_json m_json;
    m_json["points_compared"] = compared;
    m_json["max_abs_error_initial_part"] = worst;
    out["mittag_leffler"] = m_json;
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<double>& ts,
               const std::vector<cplx>& ys) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  csv << "t,re_y,im_y\n";
  char line[128];
  for (std::size_t k = 0; k < ts.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", ts[k], ys[k].real(),
                  ys[k].imag());
    csv << line;
  }
}

}  // namespace

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(opts.json_errors, err, [&] {
    Overrides o;
    if (opts.mu_max) o.mu_max = Exponent::parse(*opts.mu_max);
    o.tol = opts.tol;
    const ProblemFile pf = load_problem(opts.file, o);
    const SolutionReport rep = solve(pf.problem, pf.trunc);

    const std::vector<double> ts = pf.grid.nodes();
    const std::vector<cplx> ys = evaluate_grid(rep.y, ts);

    ordered_json report;
    report["status"] = rep.verified ? "verified" : "unverified";
    ordered_json kernel;
    kernel["type"] = pf.kernel_type;
    kernel["n"] = pf.problem.pair.n;
    kernel["sonine_residual"] = pf.problem.pair.residual;
    kernel["kappa"] = series_to_json(pf.problem.pair.kappa);
    kernel["k"] = series_to_json(pf.problem.pair.k);
    report["kernel"] = kernel;
    ordered_json poles = ordered_json::array();
    for (const Pole& pole : rep.poles) {
      ordered_json pj;
      pj["lambda"] = complex_json(pole.value);
      pj["multiplicity"] = pole.multiplicity;
      ordered_json cs = ordered_json::array();
      for (const cplx& c : pole.coeffs) cs.push_back(complex_json(c));
      pj["coeffs"] = cs;
      poles.push_back(pj);
    }
    report["poles"] = poles;
    ordered_json trunc;
    trunc["mu_max"] = pf.trunc.mu_max.str();
    trunc["tol"] = pf.trunc.tol;
    trunc["T"] = pf.horizon;
    trunc["solution_cap"] = rep.y.cap().str();
    trunc["scored_upto"] = rep.scored_upto.str();
    trunc["tail_bound"] = rep.y.tail().bound;
    trunc["tail_rigorous"] = rep.y.tail().rigorous;
    trunc["dropped_noise_terms"] = rep.y.dropped_noise();
    trunc["diagnostics"] = rep.diagnostics;
    report["truncation"] = trunc;
    report["equation_residual"] = rep.equation_residual;
    report["ic_residual"] = rep.ic_residual;
    report["iv_cross_check"] = rep.iv_cross_check;
    report["solution"] = series_to_json(rep.y);
    if (opts.crosscheck) report["crosscheck"] = crosscheck(pf, rep);

    std::filesystem::create_directories(opts.out_dir);
    const std::string stem = opts.file.stem().string();
    const auto csv_path = opts.out_dir / (stem + ".solution.csv");
    const auto json_path = opts.out_dir / (stem + ".report.json");
    write_csv(csv_path, ts, ys);
    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw Error(ErrorKind::InvalidArgument, "cannot write " + json_path.string());
    js << report.dump(2) << "\n";

    out << (rep.verified ? "verified" : "unverified")
        << ": equation_residual=" << rep.equation_residual
        << " ic_residual=" << rep.ic_residual << "\n"
        << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
    return rep.verified ? kVerified : kUnverified;
  });
}

int run_validate_kernel(const std::filesystem::path& file, bool json_errors,
                        std::ostream& out, std::ostream& err) {
  return guarded(json_errors, err, [&] {
    const ordered_json j = read_json(file);
    Exponent mu_max = kDefaultMuMax;
    double horizon = kDefaultHorizon;
    if (j.contains("truncation")) {
      const auto& tr = j.at("truncation");
      if (tr.contains("mu_max")) {
        const auto& m = tr.at("mu_max");
        mu_max = m.is_string() ? Exponent::parse(m.get<std::string>())
                               : Exponent(m.get<std::int64_t>());
      }
      if (tr.contains("T")) horizon = tr.at("T").get<double>();
    }
    if (!j.contains("kernel")) throw Error(ErrorKind::Schema, "problem: missing \"kernel\"");
    std::string type;
    Exponent alpha;
    const SoninePair pair = parse_kernel(j.at("kernel"), mu_max, horizon, &type, &alpha);
    out << "kernel: " << type;
    if (type == "power_law") out << " alpha=" << alpha.str();
    out << " n=" << pair.n << "\n";
    out << "kappa: " << leading_terms(pair.kappa) << "\n";
    out << "associate k: " << leading_terms(pair.k) << "\n";
    out << "sonine residual: " << pair.residual << "\n";
    out << "valid L_" << pair.n << " pair\n";
    return kVerified;
  });
}

}  // namespace gfc::cli
