#include "gfc/oracle.hpp"

#include <cmath>

#include "gfc/error.hpp"
#include "gfc/parallel.hpp"

namespace gfc::oracle {

namespace {

constexpr int kMaxTerms = 200;
constexpr double kMaxArgument = 5.0;

// int_a^b tau^p phi(tau) d tau with phi linear from fa to fb.
cplx weighted_panel(double p, double a, double b, cplx fa, cplx fb) {
  const double m0 = (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / (p + 1.0);
  const double m1 = (std::pow(b, p + 2.0) - std::pow(a, p + 2.0)) / (p + 2.0);
  return fa * m0 + (fb - fa) * ((m1 - a * m0) / (b - a));
}

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

// Value of t^p s(t) at node j.
cplx full_value(const SampledSingularFn& f, int j, double h) {
  if (j == 0) return 0.0;
  return std::pow(j * h, f.p) * f.samples[static_cast<std::size_t>(j)];
}

cplx convolve_at(const SampledSingularFn& f, const SampledSingularFn& g, int k) {
  if (k == 0) return 0.0;
  const double h = f.T / f.intervals();
  if (k == 1) {
    // Both singular ends in one panel: integrate tau^p (h - tau)^q times the
    // linear interpolant of s_f(tau) s_g(h - tau) using Beta moments.
    const double p = f.p;
    const double q = g.p;
    const cplx v0 = f.samples[0] * g.samples[1];
    const cplx v1 = f.samples[1] * g.samples[0];
    const double scale = std::pow(h, p + q + 1.0);
    const double b0 = beta_fn(p + 1.0, q + 1.0);
    const double b1 = beta_fn(p + 2.0, q + 1.0);
    return scale * (v0 * (b0 - b1) + v1 * b1);
  }
  const int split = k / 2;
  cplx acc(0.0, 0.0);
  // [0, split h]: weight tau^p, smooth part s_f(tau) g(t - tau).
  for (int j = 0; j < split; ++j) {
    const cplx fa = f.samples[static_cast<std::size_t>(j)] * full_value(g, k - j, h);
    const cplx fb = f.samples[static_cast<std::size_t>(j + 1)] * full_value(g, k - j - 1, h);
    acc += weighted_panel(f.p, j * h, (j + 1) * h, fa, fb);
  }
  // [split h, t] as sigma = t - tau in [0, (k - split) h]: weight sigma^q.
  for (int j = 0; j < k - split; ++j) {
    const cplx fa = g.samples[static_cast<std::size_t>(j)] * full_value(f, k - j, h);
    const cplx fb = g.samples[static_cast<std::size_t>(j + 1)] * full_value(f, k - j - 1, h);
    acc += weighted_panel(g.p, j * h, (j + 1) * h, fa, fb);
  }
  return acc;
}

void check_inputs(const SampledSingularFn& f, const SampledSingularFn& g) {
  for (const SampledSingularFn* s : {&f, &g}) {
    if (!(s->p > -1.0)) {
      throw Error(ErrorKind::NonIntegrableSingularity,
                  "non-integrable singularity: t^" + std::to_string(s->p));
    }
  }
  const int n = f.intervals();
  if (n != g.intervals() || f.T != g.T) {
    throw Error(ErrorKind::InvalidArgument, "grid_convolve inputs use different grids");
  }
  if (n < 64 || (n & (n - 1)) != 0) {
    throw Error(ErrorKind::InvalidArgument,
                "grid size must be a power of two >= 64, got " + std::to_string(n));
  }
}

std::vector<cplx> run(const SampledSingularFn& f, const SampledSingularFn& g,
                      bool parallel) {
  check_inputs(f, g);
  std::vector<cplx> out(f.samples.size());
  kernels::for_each_index(static_cast<std::int64_t>(out.size()), parallel,
                          [&](std::int64_t k) {
                            out[static_cast<std::size_t>(k)] =
                                convolve_at(f, g, static_cast<int>(k));
                          });
  return out;
}

}  // namespace

SampledSingularFn sample(const GenSeries& f, double T, int N) {
  if (N < 16) throw Error(ErrorKind::InvalidArgument, "sampled function needs N >= 16");
  SampledSingularFn out;
  out.T = T;
  out.samples.assign(static_cast<std::size_t>(N) + 1, cplx(0.0, 0.0));
  if (f.empty()) return out;
  const double lead = f.leading_exponent().value();
  out.p = lead - 1.0;
  for (int k = 0; k <= N; ++k) {
    const double t = T * k / N;
    cplx s(0.0, 0.0);
    for (const Term& term : f.terms()) {
      const double d = term.mu.value() - lead;
      const double power = d == 0.0 ? 1.0 : std::pow(t, d);
      s += term.c * power * rgamma(term.mu.value());
    }
    out.samples[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

std::vector<cplx> grid_convolve(const SampledSingularFn& f, const SampledSingularFn& g) {
  return run(f, g, kernels::max_threads() > 1);
}

std::vector<cplx> grid_convolve_serial(const SampledSingularFn& f,
                                       const SampledSingularFn& g) {
  return run(f, g, false);
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x < 170.0) return 1.0 / std::tgamma(x);
  return std::exp(-std::lgamma(x));
}

namespace {

// Kahan-compensated sum of w_j z^j / Gamma(alpha j + beta).
template <class Weight>
cplx summed_series(double alpha, double beta, cplx z, Weight&& weight) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "Mittag-Leffler alpha must be positive");
  }
  if (std::abs(z) > kMaxArgument) {
    throw Error(ErrorKind::InvalidArgument, "Mittag-Leffler oracle limited to |z| <= 5");
  }
  double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0;
  auto kahan = [](double& s, double& c, double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  };
  cplx zj = 1.0;
  for (int j = 0; j < kMaxTerms; ++j) {
    const double rg = rgamma(alpha * j + beta);
    const cplx term = weight(j) * zj * rg;
    kahan(sr, cr, term.real());
    kahan(si, ci, term.imag());
    if (rg != 0.0 && j > 0 && std::abs(term) < 1e-18 * std::abs(cplx(sr, si))) break;
    zj *= z;
  }
  return {sr, si};
}

}  // namespace

cplx mittag_leffler(double alpha, double beta, cplx z) {
  return summed_series(alpha, beta, z, [](int) { return 1.0; });
}

cplx ml_three_param(double alpha, double beta, int m, cplx z) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "three-parameter order must be >= 1");
  double w = 1.0;
  int last = 0;
  return summed_series(alpha, beta, z, [&](int j) {
    // (m)_j / j!, updated incrementally.
    for (; last < j; ++last) w *= static_cast<double>(m + last) / (last + 1);
    return w;
  });
}

}  // namespace gfc::oracle
