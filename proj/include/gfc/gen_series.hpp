#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gfc/exponent.hpp"
#include "json.hpp"

namespace gfc {

using cplx = std::complex<double>;

/// Cancellation threshold: a merged coefficient whose magnitude is below
/// kNoiseDrop times the summed magnitude of its contributions is dropped.
inline constexpr double kNoiseDrop = 1e-15;
/// Looser threshold under which a surviving coefficient is treated as
/// round-off for domain checks (derivatives, projector values).
inline constexpr double kNoiseDomain = 1e-11;

inline const Exponent kDefaultMuMax{60};
inline constexpr double kDefaultHorizon = 2.0;

/// One power atom c * h_mu, h_mu(t) = t^(mu-1)/Gamma(mu).
///
/// `mag` is the summed magnitude of every floating-point contribution that
/// produced `c`; it scales the round-off error of `c` and is what residuals
/// and comparisons are normalised by.
struct Term {
  Exponent mu;
  cplx c;
  double mag = 0.0;
};

/// Upper bound on sup_{[0, horizon]} of everything dropped above the cap.
struct TailBound {
  double bound = 0.0;
  double horizon = kDefaultHorizon;
  /// False once the bound has passed through an estimate (differentiation).
  bool rigorous = true;
};

/// Finite sum of power atoms with exact rational exponents.
///
/// Terms are sorted by strictly increasing exponent, no coefficient is zero,
/// and every exponent is <= cap(). Coefficients of all exponents <= cap() are
/// exact up to round-off; what lies above the cap is summarised by tail().
class GenSeries {
 public:
  GenSeries() = default;
  explicit GenSeries(Exponent cap, double horizon = kDefaultHorizon);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  const Exponent& cap() const noexcept { return cap_; }
  double horizon() const noexcept { return tail_.horizon; }
  const TailBound& tail() const noexcept { return tail_; }
  /// Number of coefficients discarded as cancellation noise while building.
  std::size_t dropped_noise() const noexcept { return dropped_noise_; }

  /// Coefficient of h_mu (zero when absent).
  cplx coeff(const Exponent& mu) const;
  const Term* find(const Exponent& mu) const;
  /// Exponent of the first term; the series must be nonempty.
  const Exponent& leading_exponent() const;

 private:
  friend class SeriesBuilder;

  std::vector<Term> terms_;
  Exponent cap_ = kDefaultMuMax;
  TailBound tail_;
  std::size_t dropped_noise_ = 0;
};

/// Accumulates terms and produces a canonical GenSeries. Used by every
/// operation that creates series; not part of the mathematical API.
class SeriesBuilder {
 public:
  SeriesBuilder(Exponent cap, double horizon);

  /// Adds a contribution; equal exponents merge. Terms above the cap go to
  /// the tail bound.
  void add(const Exponent& mu, cplx c, double mag);
  void add_tail(double bound, bool rigorous = true);
  void add_noise_count(std::size_t n) { dropped_noise_ += n; }

  GenSeries build() &&;

 private:
  std::vector<Term> raw_;
  Exponent cap_;
  TailBound tail_;
  std::size_t dropped_noise_ = 0;
};

/// sup over [0, T] of h_mu for mu >= 1; T^(mu-1)/Gamma(mu) in general.
double atom_weight(const Exponent& mu, double horizon);
double atom_weight(double mu, double horizon);

GenSeries make_series(std::span<const std::pair<Exponent, cplx>> terms,
                      const Exponent& mu_max = kDefaultMuMax,
                      double horizon = kDefaultHorizon);
GenSeries make_series(std::initializer_list<std::pair<Exponent, cplx>> terms,
                      const Exponent& mu_max = kDefaultMuMax,
                      double horizon = kDefaultHorizon);
GenSeries atom(const Exponent& mu, cplx c = 1.0,
               const Exponent& mu_max = kDefaultMuMax,
               double horizon = kDefaultHorizon);

cplx evaluate(const GenSeries& f, double t);
/// Evaluation at many points (t > 0), OpenMP-parallel over points.
std::vector<cplx> evaluate_grid(const GenSeries& f, std::span<const double> ts);

GenSeries convolve(const GenSeries& f, const GenSeries& g);
GenSeries convolution_power(const GenSeries& g, int m);

/// d^i/dt^i term by term: h_mu -> h_{mu-i}; integer mu <= i vanish.
GenSeries differentiate(const GenSeries& f, int order);
/// (d^i f/dt^i)(0): the coefficient of h_{i+1}.
cplx derivative_at_zero(const GenSeries& f, int order);

GenSeries add(const GenSeries& a, const GenSeries& b);
GenSeries subtract(const GenSeries& a, const GenSeries& b);
GenSeries scale(const GenSeries& a, cplx s);
GenSeries truncate(const GenSeries& a, const Exponent& cap);

inline GenSeries operator+(const GenSeries& a, const GenSeries& b) { return add(a, b); }
inline GenSeries operator-(const GenSeries& a, const GenSeries& b) { return subtract(a, b); }
inline GenSeries operator*(cplx s, const GenSeries& a) { return scale(a, s); }

/// Largest |a_mu - b_mu| / max(mag_a, mag_b) over exponents <= upto
/// (defaults to the smaller cap).
double relative_difference(const GenSeries& a, const GenSeries& b);
double relative_difference(const GenSeries& a, const GenSeries& b,
                           const Exponent& upto);
/// Largest |c_mu| over exponents <= upto.
double max_abs_coeff(const GenSeries& a, const Exponent& upto);

nlohmann::ordered_json series_to_json(const GenSeries& f);
GenSeries series_from_json(const nlohmann::ordered_json& j,
                           const Exponent& mu_max = kDefaultMuMax,
                           double horizon = kDefaultHorizon);

}  // namespace gfc
