#pragma once

#include <random>
#include <vector>

#include "gfc/gen_series.hpp"
#include "gfc/operators.hpp"
#include "gfc/sonine.hpp"

namespace gfc::testing {

inline cplx random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline double random_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random series with `count` terms whose exponents are multiples of
/// 1/den in [lo, hi].
inline GenSeries random_series(std::mt19937_64& rng, int count, std::int64_t den,
                               const Exponent& lo, const Exponent& hi,
                               const Exponent& cap = kDefaultMuMax, bool real = false) {
  std::vector<std::pair<Exponent, cplx>> terms;
  const std::int64_t k_lo = (lo * Exponent(den)).floor();
  const std::int64_t k_hi = (hi * Exponent(den)).floor();
  std::uniform_int_distribution<std::int64_t> pick(std::max<std::int64_t>(k_lo, 1), k_hi);
  for (int i = 0; i < count; ++i) {
    cplx c = random_complex(rng);
    if (real) c = c.real();
    terms.emplace_back(Exponent(pick(rng), den), c);
  }
  return make_series(terms, cap);
}

/// Kernels with a nontrivial lattice: h_alpha plus small perturbations.
inline std::vector<SoninePair> perturbed_pairs(const Exponent& cap = kDefaultMuMax) {
  struct Spec {
    Exponent alpha;
    int n;
    std::vector<std::pair<Exponent, double>> extra;
  };
  const std::vector<Spec> specs = {
      {Exponent(1, 2), 1, {{Exponent(1), 0.5}}},
      {Exponent(1, 3), 1, {{Exponent(2, 3), -0.4}, {Exponent(4, 3), 0.25}}},
      {Exponent(3, 4), 1, {{Exponent(5, 4), 0.3}}},
      {Exponent(3, 2), 2, {{Exponent(2), 0.5}, {Exponent(5, 2), -0.2}}},
      {Exponent(9, 4), 3, {{Exponent(11, 4), 0.35}}},
  };
  std::vector<SoninePair> out;
  for (const Spec& s : specs) {
    std::vector<std::pair<Exponent, cplx>> terms{{s.alpha, 1.0}};
    for (const auto& [mu, c] : s.extra) terms.emplace_back(mu, c);
    const GenSeries kappa = make_series(terms, cap);
    out.push_back(validate_pair(kappa, sonine_associate(kappa, s.n), s.n));
  }
  return out;
}

/// Power-law alphas in [1/4, 11/4]: quarters and thirds.
inline std::vector<Exponent> catalog_alphas() {
  return {Exponent(1, 4), Exponent(1, 3), Exponent(1, 2), Exponent(2, 3), Exponent(3, 4),
          Exponent(5, 4), Exponent(4, 3), Exponent(3, 2), Exponent(5, 3), Exponent(7, 4),
          Exponent(9, 4), Exponent(7, 3), Exponent(5, 2), Exponent(8, 3), Exponent(11, 4)};
}

inline std::vector<SoninePair> catalog_pairs(const Exponent& cap = kDefaultMuMax) {
  std::vector<SoninePair> out;
  for (const Exponent& a : catalog_alphas()) {
    out.push_back(make_power_law_pair(a, static_cast<int>(a.floor()) + 1, cap));
  }
  for (SoninePair& p : perturbed_pairs(cap)) out.push_back(std::move(p));
  return out;
}

/// Random element of the natural domain: kappa * phi plus a null element.
inline GenSeries random_domain_element(std::mt19937_64& rng, const SoninePair& pair,
                                       const Exponent& hi) {
  const GenSeries phi = random_series(rng, 4, 6, Exponent(1, 6), hi, pair.kappa.cap());
  NullElement e;
  for (int i = 0; i < pair.n; ++i) e.coeffs.push_back(random_complex(rng));
  return add(gfi(pair, phi), realize(pair, e));
}

/// Random element of the m-fold domain: sum_{i<m} I^{<i>} nu_i + I^{<m>} phi.
inline GenSeries random_mfold_element(std::mt19937_64& rng, const SoninePair& pair, int m,
                                      const Exponent& hi) {
  GenSeries f = mfold_gfi(pair, m, random_series(rng, 3, 6, Exponent(1, 6), hi,
                                                 pair.kappa.cap()));
  for (int i = 0; i < m; ++i) {
    NullElement e;
    for (int j = 0; j < pair.n; ++j) e.coeffs.push_back(random_complex(rng));
    GenSeries nu = realize(pair, e);
    if (i > 0) nu = mfold_gfi(pair, i, nu);
    f = add(f, nu);
  }
  return f;
}

}  // namespace gfc::testing
