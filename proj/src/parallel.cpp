#include "gfc/parallel.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfc::kernels {

namespace {

constexpr std::size_t kParallelThreshold = 4096;

double dropped_weight_of(std::int64_t key, std::int64_t key_cap,
                         std::span<const double> weights) {
  const auto idx = static_cast<std::size_t>(key - key_cap - 1);
  return idx < weights.size() ? weights[idx] : 0.0;
}

ConvolutionResult prepare(const LatticeTerms& a, const LatticeTerms& b,
                          std::int64_t key_cap) {
  ConvolutionResult r;
  if (a.keys.empty() || b.keys.empty()) return r;
  r.key0 = a.keys.front() + b.keys.front();
  if (r.key0 <= key_cap) {
    const auto n = static_cast<std::size_t>(key_cap - r.key0 + 1);
    r.coeffs.assign(n, cplx(0.0, 0.0));
    r.mags.assign(n, 0.0);
  }
  return r;
}

double row_dropped(const LatticeTerms& a, const LatticeTerms& b,
                   std::size_t i, std::int64_t key_cap,
                   std::span<const double> weights) {
  double s = 0.0;
  const double ai = std::abs(a.coeffs[i]);
  for (std::size_t j = b.keys.size(); j-- > 0;) {
    const std::int64_t key = a.keys[i] + b.keys[j];
    if (key <= key_cap) break;
    s += ai * std::abs(b.coeffs[j]) * dropped_weight_of(key, key_cap, weights);
  }
  return s;
}

}  // namespace

ConvolutionResult convolve_serial(const LatticeTerms& a, const LatticeTerms& b,
                                  std::int64_t key_cap,
                                  std::span<const double> dropped_weights) {
  ConvolutionResult r = prepare(a, b, key_cap);
  if (a.keys.empty() || b.keys.empty()) return r;
  std::vector<double> drops(a.keys.size(), 0.0);
  for (std::size_t i = 0; i < a.keys.size(); ++i) {
    for (std::size_t j = 0; j < b.keys.size(); ++j) {
      const std::int64_t key = a.keys[i] + b.keys[j];
      if (key > key_cap) break;
      const auto k = static_cast<std::size_t>(key - r.key0);
      r.coeffs[k] += a.coeffs[i] * b.coeffs[j];
      r.mags[k] += a.mags[i] * b.mags[j];
    }
    drops[i] = row_dropped(a, b, i, key_cap, dropped_weights);
  }
  for (double d : drops) r.dropped_weight += d;
  return r;
}

ConvolutionResult convolve_parallel(const LatticeTerms& a,
                                    const LatticeTerms& b,
                                    std::int64_t key_cap,
                                    std::span<const double> dropped_weights) {
  ConvolutionResult r = prepare(a, b, key_cap);
  if (a.keys.empty() || b.keys.empty()) return r;

  const std::int64_t b0 = b.keys.front();
  const std::int64_t b1 = b.keys.back();
  std::vector<std::int64_t> b_index(static_cast<std::size_t>(b1 - b0 + 1), -1);
  for (std::size_t j = 0; j < b.keys.size(); ++j) {
    b_index[static_cast<std::size_t>(b.keys[j] - b0)] =
        static_cast<std::int64_t>(j);
  }

  // One output key per iteration; contributions are visited in increasing
  // i, the same order in which the serial kernel adds them.
  const auto n_out = static_cast<std::int64_t>(r.coeffs.size());
  const auto n_a = a.keys.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n_out; ++k) {
    const std::int64_t key = r.key0 + k;
    cplx sum(0.0, 0.0);
    double mag = 0.0;
    for (std::size_t i = 0; i < n_a; ++i) {
      const std::int64_t kb = key - a.keys[i];
      if (kb < b0) break;
      if (kb > b1) continue;
      const std::int64_t j = b_index[static_cast<std::size_t>(kb - b0)];
      if (j < 0) continue;
      sum += a.coeffs[i] * b.coeffs[static_cast<std::size_t>(j)];
      mag += a.mags[i] * b.mags[static_cast<std::size_t>(j)];
    }
    r.coeffs[static_cast<std::size_t>(k)] = sum;
    r.mags[static_cast<std::size_t>(k)] = mag;
  }

  std::vector<double> drops(n_a, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_a); ++i) {
    drops[static_cast<std::size_t>(i)] =
        row_dropped(a, b, static_cast<std::size_t>(i), key_cap, dropped_weights);
  }
  for (double d : drops) r.dropped_weight += d;
  return r;
}

ConvolutionResult convolve(const LatticeTerms& a, const LatticeTerms& b,
                           std::int64_t key_cap,
                           std::span<const double> dropped_weights) {
  if (max_threads() > 1 &&
      a.keys.size() * b.keys.size() >= kParallelThreshold) {
    return convolve_parallel(a, b, key_cap, dropped_weights);
  }
  return convolve_serial(a, b, key_cap, dropped_weights);
}

namespace {

cplx evaluate_one(const AtomTable& atoms, double t) {
  const double log_t = std::log(t);
  cplx sum(0.0, 0.0);
  for (std::size_t k = 0; k < atoms.mu.size(); ++k) {
    const double w = std::exp((atoms.mu[k] - 1.0) * log_t - atoms.log_gamma[k]);
    sum += atoms.coeffs[k] * w;
  }
  return sum;
}

}  // namespace

std::vector<cplx> evaluate_serial(const AtomTable& atoms,
                                  std::span<const double> ts) {
  std::vector<cplx> out(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = evaluate_one(atoms, ts[i]);
  return out;
}

std::vector<cplx> evaluate_parallel(const AtomTable& atoms,
                                    std::span<const double> ts) {
  std::vector<cplx> out(ts.size());
  const auto n = static_cast<std::int64_t>(ts.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        evaluate_one(atoms, ts[static_cast<std::size_t>(i)]);
  }
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gfc::kernels
