#include "gfc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gfc/error.hpp"

namespace gfc {

namespace {

constexpr double kLeadingTol = 1e-14;
constexpr double kClusterTol = 1e-7;
constexpr double kIllConditioned = 1e-4;
constexpr double kMergeRadius = 1e-3;
constexpr double kScatterFactor = 30.0;
constexpr int kAberthIterations = 800;

}  // namespace

Polynomial::Polynomial(std::vector<cplx> ascending) : coeffs_(std::move(ascending)) {
  double biggest = 0.0;
  for (const cplx& c : coeffs_) biggest = std::max(biggest, std::abs(c));
  while (!coeffs_.empty() &&
         (std::abs(coeffs_.back()) <= kLeadingTol * biggest || coeffs_.back() == 0.0)) {
    coeffs_.pop_back();
  }
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

cplx Polynomial::coeff(int p) const {
  if (p < 0 || p > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(p)];
}

cplx Polynomial::leading() const {
  if (coeffs_.empty()) return 0.0;
  return coeffs_.back();
}

bool Polynomial::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return c.imag() == 0.0; });
}

cplx Polynomial::operator()(cplx z) const {
  cplx v(0.0, 0.0);
  for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * z + coeffs_[k];
  return v;
}

double Polynomial::magnitude_at(cplx z) const {
  const double az = std::abs(z);
  double v = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * az + std::abs(coeffs_[k]);
  return v;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  Polynomial out;
  out.coeffs_ = std::move(d);
  return out;
}

Polynomial Polynomial::shifted(cplx z0) const {
  // Repeated synthetic division (Taylor shift).
  std::vector<cplx> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k > i; --k) c[k - 1] += z0 * c[k];
  }
  Polynomial out;
  out.coeffs_ = std::move(c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> c(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  Polynomial out;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  out.coeffs_ = std::move(c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> neg(b.coeffs_.size());
  std::transform(b.coeffs_.begin(), b.coeffs_.end(), neg.begin(),
                 [](const cplx& c) { return -c; });
  Polynomial nb;
  nb.coeffs_ = std::move(neg);
  return a + nb;
}

namespace {

std::vector<cplx> aberth(const std::vector<cplx>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  // Initial guesses on a circle whose radius bounds every root (Fujiwara).
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double term = std::pow(std::abs(monic[static_cast<std::size_t>(k)]),
                                 1.0 / static_cast<double>(n - k));
    radius = std::max(radius, term);
  }
  radius = std::max(2.0 * radius, 1e-3);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius * 0.5, angle);
  }

  auto eval = [&](cplx x, cplx& p, cplx& dp) {
    p = monic.back();
    dp = 0.0;
    for (std::size_t k = monic.size() - 1; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + monic[k];
    }
  };

  for (int it = 0; it < kAberthIterations; ++it) {
    double biggest_step = 0.0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      cplx p, dp;
      eval(zk, p, dp);
      if (p == 0.0) continue;
      const cplx ratio = p / dp;
      cplx repulsion(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        const cplx diff = zk - z[static_cast<std::size_t>(j)];
        if (diff != 0.0) repulsion += 1.0 / diff;
      }
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      zk -= step;
      biggest_step = std::max(biggest_step, std::abs(step) / (1.0 + std::abs(zk)));
    }
    if (biggest_step < 1e-17) break;
  }
  return z;
}

cplx polish(const Polynomial& p, cplx z, int multiplicity) {
  Polynomial target = p;
  for (int i = 1; i < multiplicity; ++i) target = target.derivative();
  const Polynomial slope = target.derivative();
  double best = std::abs(target(z));
  for (int it = 0; it < 30 && best > 0.0; ++it) {
    const cplx d = slope(z);
    if (d == 0.0) break;
    const cplx next = z - target(z) / d;
    const double r = std::abs(target(next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

}  // namespace

std::vector<Root> poly_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) {
    throw Error(ErrorKind::InvalidArgument, "root finding needs degree >= 1");
  }
  std::vector<cplx> monic(p.coeffs());
  const cplx lead = p.leading();
  for (cplx& c : monic) c /= lead;

  // Exact zero roots are split off first; the iteration handles the rest.
  int zero_mult = 0;
  while (zero_mult < n && monic[static_cast<std::size_t>(zero_mult)] == 0.0) ++zero_mult;
  std::vector<cplx> reduced(monic.begin() + zero_mult, monic.end());
  std::vector<cplx> approx;
  if (reduced.size() > 1) approx = aberth(reduced);

  // Cluster: approximations within kClusterTol (1 + |z|) form one root.
  std::vector<int> parent(approx.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t i = 0; i < approx.size(); ++i) {
    for (std::size_t j = i + 1; j < approx.size(); ++j) {
      const double scale = 1.0 + std::max(std::abs(approx[i]), std::abs(approx[j]));
      if (std::abs(approx[i] - approx[j]) <= kClusterTol * scale) {
        parent[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
      }
    }
  }
  std::vector<std::vector<cplx>> members;
  std::vector<int> slot(approx.size(), -1);
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const auto r = static_cast<std::size_t>(find(static_cast<int>(i)));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(members.size());
      members.emplace_back();
    }
    members[static_cast<std::size_t>(slot[r])].push_back(approx[i]);
  }
  auto mean = [](const std::vector<cplx>& zs) {
    cplx s(0.0, 0.0);
    for (cplx z : zs) s += z;
    return s / static_cast<double>(zs.size());
  };
  // An m-fold root perturbed by round-off scatters its approximations over
  // about (eps |P| / |P^(m)/m!|)^(1/m), far beyond kClusterTol for m >= 3.
  // Nearby clusters merge when their joint spread is within that scale.
  std::vector<Polynomial> derivs{p};
  for (int j = 1; j <= n; ++j) derivs.push_back(derivs.back().derivative());
  auto plausible = [&](const std::vector<cplx>& zs) {
    const cplx c = mean(zs);
    const auto m = zs.size();
    double spread = 0.0;
    for (cplx z : zs) spread = std::max(spread, std::abs(z - c));
    const double top = std::abs(derivs[m](c)) / std::tgamma(static_cast<double>(m) + 1.0);
    if (top == 0.0) return true;
    const double eps = std::numeric_limits<double>::epsilon();
    const double expected = std::pow(eps * p.magnitude_at(c) / top, 1.0 / static_cast<double>(m));
    return spread <= kScatterFactor * expected;
  };
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < members.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < members.size() && !merged; ++b) {
        const cplx ca = mean(members[a]);
        const cplx cb = mean(members[b]);
        const double scale = 1.0 + std::max(std::abs(ca), std::abs(cb));
        if (std::abs(ca - cb) > kMergeRadius * scale) continue;
        std::vector<cplx> joint = members[a];
        joint.insert(joint.end(), members[b].begin(), members[b].end());
        if (!plausible(joint)) continue;
        members[a] = std::move(joint);
        members.erase(members.begin() + static_cast<std::ptrdiff_t>(b));
        merged = true;
      }
    }
  }
  std::vector<Root> roots;
  for (const auto& zs : members) {
    const int m = static_cast<int>(zs.size());
    roots.push_back(Root{polish(p, mean(zs), m), m, 0.0});
  }
  if (zero_mult > 0) roots.push_back(Root{cplx(0.0, 0.0), zero_mult, 0.0});

  if (p.is_real()) {
    for (Root& r : roots) {
      if (std::abs(r.value.imag()) <= 1e-12 * (1.0 + std::abs(r.value))) {
        r.value = cplx(r.value.real(), 0.0);
      }
    }
    // Conjugate pairs are made exactly symmetric.
    for (Root& r : roots) {
      if (r.value.imag() <= 0.0) continue;
      Root* partner = nullptr;
      double best = 0.0;
      for (Root& s : roots) {
        if (s.value.imag() >= 0.0 || s.multiplicity != r.multiplicity) continue;
        const double d = std::abs(s.value - std::conj(r.value));
        if (partner == nullptr || d < best) {
          partner = &s;
          best = d;
        }
      }
      if (partner != nullptr && best <= 1e-8 * (1.0 + std::abs(r.value))) {
        const cplx mid = 0.5 * (r.value + std::conj(partner->value));
        r.value = mid;
        partner->value = std::conj(mid);
      }
    }
  }

  for (Root& r : roots) {
    r.residual = std::abs(p(r.value));
    if (!std::isfinite(r.residual) ||
        r.residual > 1e-6 * p.magnitude_at(r.value)) {
      throw Error(ErrorKind::RootFindingFailed,
                  "root finding failed: residual " + std::to_string(r.residual) +
                      " at " + std::to_string(r.value.real()) + "+" +
                      std::to_string(r.value.imag()) + "i");
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

cplx PartialFractionForm::operator()(cplx z) const {
  cplx v = constant;
  for (const Pole& pole : poles) {
    const cplx inv = 1.0 / (z - pole.value);
    cplx power = inv;
    for (const cplx& c : pole.coeffs) {
      v += c * power;
      power *= inv;
    }
  }
  return v;
}

PartialFractionForm partial_fractions(const Polynomial& q, const Polynomial& p) {
  if (p.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "zero denominator polynomial");
  }
  if (q.degree() > p.degree()) {
    throw Error(ErrorKind::ImproperRational,
                "improper rational operator: deg Q = " + std::to_string(q.degree()) +
                    " > deg P = " + std::to_string(p.degree()));
  }
  PartialFractionForm form;
  Polynomial remainder = q;
  if (!q.is_zero() && q.degree() == p.degree()) {
    form.constant = q.leading() / p.leading();
    std::vector<cplx> r(static_cast<std::size_t>(p.degree()), cplx(0.0, 0.0));
    for (int k = 0; k < p.degree(); ++k) {
      r[static_cast<std::size_t>(k)] = q.coeff(k) - form.constant * p.coeff(k);
    }
    remainder = Polynomial(std::move(r));
  }
  if (p.degree() == 0) return form;

  const std::vector<Root> roots = poly_roots(p);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t k = j + 1; k < roots.size(); ++k) {
      const double scale = 1.0 + std::max(std::abs(roots[j].value), std::abs(roots[k].value));
      if (std::abs(roots[j].value - roots[k].value) <= kIllConditioned * scale) {
        form.warnings.push_back("ill-conditioned clustered roots near " +
                                std::to_string(roots[j].value.real()) + "+" +
                                std::to_string(roots[j].value.imag()) + "i");
      }
    }
  }

  for (std::size_t j = 0; j < roots.size(); ++j) {
    const Root& pole = roots[j];
    // P = lead * (z - lambda_j)^{m_j} * D_j; expand R/D_j about lambda_j.
    std::vector<cplx> others;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      for (int r = 0; r < roots[k].multiplicity; ++r) others.push_back(roots[k].value);
    }
    const Polynomial deflated =
        Polynomial::from_roots(others, p.leading()).shifted(pole.value);
    const Polynomial num = remainder.shifted(pole.value);
    const int m = pole.multiplicity;
    std::vector<cplx> g(static_cast<std::size_t>(m), cplx(0.0, 0.0));
    const cplx d0 = deflated.coeff(0);
    for (int s = 0; s < m; ++s) {
      cplx acc = num.coeff(s);
      for (int l = 1; l <= s; ++l) acc -= deflated.coeff(l) * g[static_cast<std::size_t>(s - l)];
      g[static_cast<std::size_t>(s)] = acc / d0;
    }
    Pole out{pole.value, m, std::vector<cplx>(static_cast<std::size_t>(m))};
    for (int i = 1; i <= m; ++i) {
      out.coeffs[static_cast<std::size_t>(i - 1)] = g[static_cast<std::size_t>(m - i)];
    }
    form.poles.push_back(std::move(out));
  }
  return form;
}

}  // namespace gfc
