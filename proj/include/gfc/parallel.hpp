#pragma once

// Data-parallel kernels behind the series engine and the numeric oracle.
// Each kernel has a serial reference and an OpenMP version; both produce
// bit-identical output because every reduction is performed in the same
// fixed order.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gfc::kernels {

using cplx = std::complex<double>;

/// Series terms on a common integer lattice: exponent = key / denominator.
/// Keys strictly increasing.
struct LatticeTerms {
  std::span<const std::int64_t> keys;
  std::span<const cplx> coeffs;
  std::span<const double> mags;
};

struct ConvolutionResult {
  std::int64_t key0 = 0;           // key of coeffs[0]
  std::vector<cplx> coeffs;        // dense, keys key0 .. key_cap
  std::vector<double> mags;
  double dropped_weight = 0.0;     // sum |a||b| w(key) over keys > key_cap
};

/// `dropped_weights[k]` is the sup weight of key (key_cap + 1 + k); products
/// beyond its end are counted with weight 0, so callers size it to cover
/// every reachable key.
ConvolutionResult convolve_serial(const LatticeTerms& a, const LatticeTerms& b,
                                  std::int64_t key_cap,
                                  std::span<const double> dropped_weights);
ConvolutionResult convolve_parallel(const LatticeTerms& a,
                                    const LatticeTerms& b,
                                    std::int64_t key_cap,
                                    std::span<const double> dropped_weights);
/// Picks the OpenMP kernel for large inputs.
ConvolutionResult convolve(const LatticeTerms& a, const LatticeTerms& b,
                           std::int64_t key_cap,
                           std::span<const double> dropped_weights);

/// Sum_k c_k t^(mu_k - 1) / Gamma(mu_k) at every t.
struct AtomTable {
  std::vector<double> mu;
  std::vector<cplx> coeffs;
  std::vector<double> log_gamma;   // lgamma(mu)
};

std::vector<cplx> evaluate_serial(const AtomTable& atoms,
                                  std::span<const double> ts);
std::vector<cplx> evaluate_parallel(const AtomTable& atoms,
                                    std::span<const double> ts);

/// Runs body(i) for i in [0, n); OpenMP when `parallel` is set.
template <class Body>
void for_each_index(std::int64_t n, bool parallel, Body&& body) {
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) body(i);
  }
}

int max_threads();

}  // namespace gfc::kernels
