#pragma once

#include <string>
#include <vector>

#include "gfc/gen_series.hpp"

namespace gfc {

/// A validated kernel pair of order n: kappa * k = h_n below the cap.
struct SoninePair {
  GenSeries kappa;
  GenSeries k;
  int n = 1;
  /// max |(kappa * k - h_n)_mu| over exponents <= cap.
  double residual = 0.0;
};

struct PairCheck {
  bool valid = false;
  double residual = 0.0;
  std::vector<std::string> violations;
};

/// (h_alpha, h_{n-alpha}) for n-1 < alpha < n.
SoninePair make_power_law_pair(const Exponent& alpha, int n,
                               const Exponent& mu_max = kDefaultMuMax,
                               double horizon = kDefaultHorizon);

/// Solves kappa * k = h_n for k on the lattice n - alpha + j*delta, where
/// alpha is the leading exponent of kappa and delta the gcd of its exponent
/// differences (1 for a single atom).
GenSeries sonine_associate(const GenSeries& kappa, int n);

/// Checks every L_n condition without throwing.
PairCheck check_pair(const GenSeries& kappa, const GenSeries& k, int n);
/// check_pair, throwing ErrorKind::NotLnPair listing every violation.
SoninePair validate_pair(const GenSeries& kappa, const GenSeries& k, int n);

/// Lattice step inferred from the exponents of a series.
Exponent lattice_step(const GenSeries& s);

}  // namespace gfc
