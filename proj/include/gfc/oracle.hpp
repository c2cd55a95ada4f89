#pragma once

// Independent numeric ground truth: product-integration convolution on a
// grid and direct Mittag-Leffler summation. Used to cross-check the exact
// series engine, never by it.

#include <complex>
#include <vector>

#include "gfc/gen_series.hpp"

namespace gfc::oracle {

using cplx = std::complex<double>;

/// t^p s(t) with s sampled at t_k = k T / N, k = 0..N.
struct SampledSingularFn {
  double p = 0.0;
  std::vector<cplx> samples;
  double T = 1.0;

  int intervals() const noexcept { return static_cast<int>(samples.size()) - 1; }
};

/// Samples f with p = (leading exponent - 1) and s(t) = f(t) / t^p.
SampledSingularFn sample(const GenSeries& f, double T, int N);

/// (f * g)(t_k) for k = 0..N. Both inputs must share T and N; N is a power
/// of two >= 64. Product integration: the smooth factor is interpolated
/// linearly and the t^p weight is integrated exactly.
std::vector<cplx> grid_convolve(const SampledSingularFn& f, const SampledSingularFn& g);
/// Same computation without OpenMP.
std::vector<cplx> grid_convolve_serial(const SampledSingularFn& f,
                                       const SampledSingularFn& g);

/// 1/Gamma(x), zero at the poles.
double rgamma(double x);

/// sum_j z^j / Gamma(alpha j + beta), |z| <= 5.
cplx mittag_leffler(double alpha, double beta, cplx z);
/// sum_j (m)_j z^j / (j! Gamma(alpha j + beta)).
cplx ml_three_param(double alpha, double beta, int m, cplx z);

}  // namespace gfc::oracle
