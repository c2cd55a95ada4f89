#pragma once

#include <string>
#include <vector>

#include "gfc/gen_series.hpp"
#include "gfc/polynomial.hpp"

namespace gfc {

struct Truncation {
  Exponent mu_max = kDefaultMuMax;
  /// A convolution-series term whose sup-norm bound on [0, T] stays below
  /// tol three times in a row ends the summation early.
  double tol = 1e-30;
};

/// l = sum_{j>=1} lambda^{j-1} kappa^{<j>}, the realization of I/(S - lambda).
/// Summation stops at the exponent cap or after three consecutive terms
/// below trunc.tol; what is left out goes into the tail bound. Appends an
/// "unconverged tail" note when that bound still exceeds trunc.tol.
GenSeries l_series(const GenSeries& kappa, cplx lambda, const Truncation& trunc = {},
                   std::vector<std::string>* notes = nullptr);

/// Q(S)/P(S) = identity * I + series. The identity part is never a function;
/// it is reported as a scalar next to the series.
struct Realization {
  cplx identity{0.0, 0.0};
  bool has_identity = false;
  GenSeries series;
  PartialFractionForm form;
};

/// sum_j sum_i c_ij l_{kappa,lambda_j}^{<i>}. Poles are realized
/// concurrently and summed in their sorted order.
Realization realize_rational(const RationalOperator& r, const GenSeries& kappa,
                             const Truncation& trunc = {},
                             std::vector<std::string>* notes = nullptr);

/// As realize_rational but refuses an identity part.
GenSeries realize_proper(const RationalOperator& r, const GenSeries& kappa,
                         const Truncation& trunc = {},
                         std::vector<std::string>* notes = nullptr);

/// Sup-norm bound sum |c| T^(mu-1)/Gamma(mu) plus the tail bound.
double sup_bound(const GenSeries& s);

}  // namespace gfc
