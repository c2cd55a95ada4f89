#pragma once

#include <string>
#include <vector>

#include "gfc/opcalc.hpp"
#include "gfc/operators.hpp"
#include "gfc/polynomial.hpp"
#include "gfc/sonine.hpp"

namespace gfc {

/// Both residuals must stay below this for a solution to count as verified.
inline constexpr double kVerifyThreshold = 1e-10;
/// Agreement required between the two forms of the initial-value part.
inline constexpr double kCrossCheckThreshold = 1e-11;

/// sum_p c_p D^{<p>} y = f with F(D^{<p>} y) = gamma_p, p = 0..m-1.
struct CauchyProblem {
  SoninePair pair;
  Polynomial coeffs;                  // c_0 .. c_m over powers of S_kappa
  GenSeries rhs;
  std::vector<NullElement> initial;   // gamma_0 .. gamma_{m-1}
};

struct Residuals {
  /// max |r_mu| / mag_mu of sum_p c_p D^{<p>} y - f over scored exponents.
  double equation = 0.0;
  /// max |a_ip(computed) - a_ip(prescribed)| / max(1, mag).
  double ic = 0.0;
  /// Exponents above this are excluded from equation scoring.
  Exponent scored_upto;
  std::vector<std::string> diagnostics;
};

struct SolutionReport {
  GenSeries y;
  GenSeries y_f;
  GenSeries y_iv;
  /// Realization of 1/P(S), so that y_f = rhs * resolvent.
  GenSeries resolvent;
  double equation_residual = 0.0;
  double ic_residual = 0.0;
  Exponent scored_upto;
  /// Single-term only: derivative form against convolution form of y_iv.
  double iv_cross_check = 0.0;
  std::vector<Pole> poles;
  std::vector<std::string> diagnostics;
  bool verified = false;
};

/// P(z) = c_1 z + c_0. y_iv is computed from derivatives of l and
/// cross-checked against gamma_0 + lambda gamma_0 * l.
SolutionReport solve_single(const CauchyProblem& problem, const Truncation& trunc = {});
/// Any m >= 1 via partial fractions of P_p/P_m.
SolutionReport solve_multi(const CauchyProblem& problem, const Truncation& trunc = {});
/// solve_single for m = 1, solve_multi otherwise.
SolutionReport solve(const CauchyProblem& problem, const Truncation& trunc = {});

/// Substitutes y back into the equation and the initial conditions. Domain
/// failures give infinite residuals and a diagnosis.
Residuals verify_solution(const CauchyProblem& problem, const GenSeries& y);

}  // namespace gfc
