#include "gfc/sonine.hpp"

#include <cmath>

#include "gfc/error.hpp"

namespace gfc {

namespace {

constexpr std::int64_t kMaxLatticeSteps = 1'000'000;
constexpr double kPairTolerance = 1e-13;

}  // namespace

Exponent lattice_step(const GenSeries& s) {
  if (s.size() < 2) return Exponent(1);
  Exponent step(0);
  const Exponent& lead = s.leading_exponent();
  for (const Term& t : s.terms()) step = rational_gcd(step, t.mu - lead);
  return step;
}

SoninePair make_power_law_pair(const Exponent& alpha, int n,
                               const Exponent& mu_max, double horizon) {
  if (n < 1 || !(Exponent(n - 1) < alpha && alpha < Exponent(n))) {
    throw Error(ErrorKind::OrderOutOfRange,
                "order out of range: alpha = " + alpha.str() +
                    " must lie in (" + std::to_string(n - 1) + ", " +
                    std::to_string(n) + ")");
  }
  return validate_pair(atom(alpha, 1.0, mu_max, horizon),
                       atom(Exponent(n) - alpha, 1.0, mu_max, horizon), n);
}

GenSeries sonine_associate(const GenSeries& kappa, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "order n must be >= 1");
  if (kappa.empty()) {
    throw Error(ErrorKind::NoAssociate, "no associate in C_-1,0: zero kernel");
  }
  const Exponent alpha = kappa.leading_exponent();
  if (!(Exponent(n - 1) < alpha && alpha < Exponent(n))) {
    throw Error(ErrorKind::NoAssociate,
                "no associate in C_-1,0: leading exponent " + alpha.str() +
                    " outside (" + std::to_string(n - 1) + ", " +
                    std::to_string(n) + ")");
  }
  const Exponent step = lattice_step(kappa);
  const Exponent k_lead = Exponent(n) - alpha;
  const Exponent& cap = kappa.cap();
  SeriesBuilder b(cap, kappa.horizon());
  if (k_lead > cap) return std::move(b).build();

  const Exponent span_steps = (cap - k_lead) / step;
  const std::int64_t last = span_steps.floor();
  const std::int64_t kappa_span = ((kappa.terms().back().mu - alpha) / step).floor();
  if (last > kMaxLatticeSteps || kappa_span > kMaxLatticeSteps) {
    throw Error(ErrorKind::NonLatticeKernel,
                "non-lattice kernel unsupported: lattice step " + step.str() +
                    " needs more than " + std::to_string(kMaxLatticeSteps) +
                    " coefficients");
  }

  // Dense kernel coefficients on the lattice alpha + i*step.
  std::vector<cplx> c(static_cast<std::size_t>(kappa_span + 1), cplx(0.0, 0.0));
  std::vector<double> cm(c.size(), 0.0);
  for (const Term& t : kappa.terms()) {
    const auto i = static_cast<std::size_t>(((t.mu - alpha) / step).num());
    c[i] = t.c;
    cm[i] = std::abs(t.c);
  }

  // Reciprocal power series: c0 d0 = 1, sum_{i+j=m} c_i d_j = 0.
  const auto count = static_cast<std::size_t>(last + 1);
  std::vector<cplx> d(count);
  std::vector<double> dm(count);
  const cplx inv_c0 = 1.0 / c[0];
  const double inv_abs_c0 = 1.0 / std::abs(c[0]);
  d[0] = inv_c0;
  dm[0] = inv_abs_c0;
  for (std::size_t m = 1; m < count; ++m) {
    cplx s(0.0, 0.0);
    double sm = 0.0;
    const std::size_t top = std::min(m, c.size() - 1);
    for (std::size_t i = 1; i <= top; ++i) {
      s += c[i] * d[m - i];
      sm += cm[i] * dm[m - i];
    }
    d[m] = -s * inv_c0;
    dm[m] = sm * inv_abs_c0;
  }
  for (std::size_t m = 0; m < count; ++m) {
    if (d[m] == cplx(0.0, 0.0)) continue;
    b.add(k_lead + Exponent(static_cast<std::int64_t>(m)) * step, d[m], dm[m]);
  }
  return std::move(b).build();
}

PairCheck check_pair(const GenSeries& kappa, const GenSeries& k, int n) {
  PairCheck out;
  if (n < 1) {
    out.violations.push_back("order n must be >= 1");
    return out;
  }
  if (kappa.empty()) out.violations.push_back("kappa is the zero series");
  if (k.empty()) out.violations.push_back("k is the zero series");
  if (!out.violations.empty()) return out;

  const Exponent& k_lead = k.leading_exponent();
  if (!(Exponent(0) < k_lead && k_lead < Exponent(1))) {
    out.violations.push_back("k not in C_-1,0: leading exponent " +
                             k_lead.str() + " outside (0, 1)");
  }
  for (const Term& t : kappa.terms()) {
    if (!t.mu.is_integer() && t.mu <= Exponent(n - 1)) {
      out.violations.push_back("kappa not in C_-1^{n-1}: exponent " +
                               t.mu.str() + " <= " + std::to_string(n - 1));
      break;
    }
  }

  const GenSeries prod = convolve(kappa, k);
  const Exponent hn(n);
  if (prod.cap() < hn) {
    out.violations.push_back("truncation cap " + prod.cap().str() +
                             " below order " + hn.str());
  }
  bool mismatch = false;
  bool has_hn = false;
  for (const Term& t : prod.terms()) {
    const cplx target = t.mu == hn ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    if (t.mu == hn) has_hn = true;
    const double dev = std::abs(t.c - target);
    out.residual = std::max(out.residual, dev);
    if (dev > kPairTolerance * std::max(1.0, t.mag)) mismatch = true;
  }
  if (!has_hn && prod.cap() >= hn) {
    out.residual = std::max(out.residual, 1.0);
    mismatch = true;
  }
  if (mismatch) {
    out.violations.push_back("kappa * k differs from h_" + std::to_string(n) +
                             " (max coefficient deviation " +
                             std::to_string(out.residual) + ")");
  }
  out.valid = out.violations.empty();
  return out;
}

SoninePair validate_pair(const GenSeries& kappa, const GenSeries& k, int n) {
  PairCheck check = check_pair(kappa, k, n);
  if (!check.valid) {
    std::string msg = "not an L_" + std::to_string(n) + " pair:";
    for (const auto& v : check.violations) msg += "\n  - " + v;
    throw Error(ErrorKind::NotLnPair, msg);
  }
  return SoninePair{kappa, k, n, check.residual};
}

}  // namespace gfc
