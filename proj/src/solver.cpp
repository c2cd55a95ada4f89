#include "gfc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "gfc/error.hpp"

namespace gfc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_initial(const CauchyProblem& problem, int m) {
  if (problem.initial.size() != static_cast<std::size_t>(m)) {
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(m) + " initial null elements, got " +
                    std::to_string(problem.initial.size()));
  }
  for (const NullElement& e : problem.initial) {
    if (e.coeffs.size() != static_cast<std::size_t>(problem.pair.n)) {
      throw Error(ErrorKind::InvalidArgument,
                  "initial null element needs " + std::to_string(problem.pair.n) +
                      " coefficients");
    }
  }
}

bool is_zero(const NullElement& e) {
  return std::all_of(e.coeffs.begin(), e.coeffs.end(),
                     [](const cplx& c) { return c == cplx(0.0, 0.0); });
}

void finish(const CauchyProblem& problem, SolutionReport& report) {
  Residuals r = verify_solution(problem, report.y);
  report.equation_residual = r.equation;
  report.ic_residual = r.ic;
  report.scored_upto = r.scored_upto;
  report.diagnostics.insert(report.diagnostics.end(), r.diagnostics.begin(),
                            r.diagnostics.end());
  report.verified = r.equation <= kVerifyThreshold && r.ic <= kVerifyThreshold;
  if (!report.verified) report.diagnostics.push_back("unverified: residual above threshold");
}

}  // namespace

SolutionReport solve_single(const CauchyProblem& problem, const Truncation& trunc) {
  if (problem.coeffs.degree() != 1) {
    throw Error(ErrorKind::InvalidArgument, "single-term solve needs a degree-1 polynomial");
  }
  check_initial(problem, 1);
  const SoninePair& pair = problem.pair;
  const cplx c1 = problem.coeffs.coeff(1);
  const cplx lambda = -problem.coeffs.coeff(0) / c1;

  SolutionReport report;
  const GenSeries l = l_series(pair.kappa, lambda, trunc, &report.diagnostics);
  report.poles.push_back(Pole{lambda, 1, {1.0 / c1}});
  report.resolvent = scale(l, 1.0 / c1);
  report.y_f = convolve(problem.rhs, report.resolvent);

  // Derivative form: sum_i a_i d^{n-1-i} l.
  const NullElement& gamma = problem.initial.front();
  GenSeries iv(l.cap() - Exponent(pair.n - 1), l.horizon());
  for (int i = 0; i < pair.n; ++i) {
    const cplx a = gamma.coeffs[static_cast<std::size_t>(i)];
    if (a == cplx(0.0, 0.0)) continue;
    iv = add(iv, scale(differentiate(l, pair.n - 1 - i), a));
  }
  report.y_iv = iv;

  if (!is_zero(gamma)) {
    const GenSeries g0 = realize(pair, gamma);
    const GenSeries conv_form = add(g0, scale(convolve(g0, l), lambda));
    report.iv_cross_check = relative_difference(report.y_iv, conv_form);
    if (!(report.iv_cross_check <= kCrossCheckThreshold)) {
      std::ostringstream os;
      os << "initial-value part: derivative and convolution forms differ by "
         << report.iv_cross_check;
      throw Error(ErrorKind::CrossCheckFailed, os.str());
    }
  }
  report.y = add(report.y_f, report.y_iv);
  finish(problem, report);
  return report;
}

SolutionReport solve_multi(const CauchyProblem& problem, const Truncation& trunc) {
  const Polynomial& p = problem.coeffs;
  const int m = p.degree();
  if (m < 1) {
    throw Error(ErrorKind::NotDifferentialEquation,
                "not a differential equation: polynomial degree " + std::to_string(m));
  }
  check_initial(problem, m);
  const SoninePair& pair = problem.pair;

  SolutionReport report;
  const Realization inverse =
      realize_rational({Polynomial{1.0}, p}, pair.kappa, trunc, &report.diagnostics);
  report.poles = inverse.form.poles;
  report.resolvent = inverse.series;
  report.y_f = convolve(problem.rhs, report.resolvent);

  // gamma_p * P_p(S)/P_m(S), P_p(z) = sum_{j=1}^{m-p} c_{p+j} z^j.
  GenSeries iv(inverse.series.cap(), inverse.series.horizon());
  for (int q = 0; q < m; ++q) {
    const NullElement& gamma = problem.initial[static_cast<std::size_t>(q)];
    if (is_zero(gamma)) continue;
    std::vector<cplx> pq(static_cast<std::size_t>(m - q + 1), cplx(0.0, 0.0));
    for (int j = 1; j <= m - q; ++j) pq[static_cast<std::size_t>(j)] = p.coeff(q + j);
    const Realization r =
        realize_rational({Polynomial(std::move(pq)), p}, pair.kappa, trunc, nullptr);
    const GenSeries g = realize(pair, gamma);
    GenSeries term = convolve(g, r.series);
    if (r.has_identity) term = add(term, scale(g, r.identity));
    iv = add(iv, term);
  }
  report.y_iv = iv;
  report.y = add(report.y_f, report.y_iv);
  finish(problem, report);
  return report;
}

SolutionReport solve(const CauchyProblem& problem, const Truncation& trunc) {
  return problem.coeffs.degree() == 1 ? solve_single(problem, trunc)
                                      : solve_multi(problem, trunc);
}

Residuals verify_solution(const CauchyProblem& problem, const GenSeries& y) {
  const SoninePair& pair = problem.pair;
  const int m = problem.coeffs.degree();
  if (m < 1) {
    throw Error(ErrorKind::NotDifferentialEquation,
                "not a differential equation: polynomial degree " + std::to_string(m));
  }
  check_initial(problem, m);
  Residuals out;
  out.scored_upto = y.cap() - Exponent(pair.n * m);

  std::vector<GenSeries> derived{y};
  try {
    for (int q = 1; q <= m; ++q) derived.push_back(gfd_rl(pair, derived.back()));
  } catch (const Error& e) {
    out.equation = kInf;
    out.ic = kInf;
    out.diagnostics.push_back(std::string("domain: ") + e.what());
    return out;
  }

  // Accumulated here rather than through add/subtract so that round-off
  // survives instead of being dropped as cancellation noise.
  out.scored_upto = std::min(out.scored_upto, problem.rhs.cap());
  for (const GenSeries& d : derived) out.scored_upto = std::min(out.scored_upto, d.cap());
  std::map<Exponent, std::pair<cplx, double>> residual;
  auto accumulate = [&](const GenSeries& s, cplx w) {
    for (const Term& t : s.terms()) {
      if (t.mu > out.scored_upto) break;
      auto& slot = residual[t.mu];
      slot.first += w * t.c;
      slot.second += std::abs(w) * t.mag;
    }
  };
  accumulate(problem.rhs, -1.0);
  for (int q = 0; q <= m; ++q) {
    accumulate(derived[static_cast<std::size_t>(q)], problem.coeffs.coeff(q));
  }
  for (const auto& [mu, v] : residual) {
    if (!std::isfinite(v.second) || !std::isfinite(std::abs(v.first))) {
      if (std::isfinite(out.equation)) {
        out.diagnostics.push_back("overflow: non-finite coefficient at h_" + mu.str());
      }
      out.equation = kInf;
    } else if (v.second > 0.0) {
      out.equation = std::max(out.equation, std::abs(v.first) / v.second);
    }
  }

  for (int q = 0; q < m; ++q) {
    const GenSeries kf = convolve(pair.k, derived[static_cast<std::size_t>(q)]);
    const NullElement& gamma = problem.initial[static_cast<std::size_t>(q)];
    for (int i = 0; i < pair.n; ++i) {
      cplx computed;
      try {
        computed = derivative_at_zero(kf, i);
      } catch (const Error& e) {
        out.ic = kInf;
        out.diagnostics.push_back(std::string("initial condition: ") + e.what());
        continue;
      }
      const Term* t = kf.find(Exponent(i + 1));
      const double mag = t != nullptr ? t->mag : 0.0;
      const double diff = std::abs(computed - gamma.coeffs[static_cast<std::size_t>(i)]);
      out.ic = std::isfinite(diff) && std::isfinite(mag)
                   ? std::max(out.ic, diff / std::max(1.0, mag))
                   : kInf;
    }
  }
  return out;
}

}  // namespace gfc
