#include "gfc/gen_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gfc/error.hpp"
#include "gfc/parallel.hpp"

namespace gfc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Dense lattice accumulation is used while the key range stays below this.
constexpr std::int64_t kMaxDenseKeys = std::int64_t{1} << 22;

// Overflowed terms are kept so that they surface in verification.
bool is_noise(cplx c, double mag, double rel) {
  return std::isfinite(mag) && std::abs(c) <= rel * mag;
}

// sum_b |g_b| T^b Gamma(cap)/Gamma(cap+b): growth factor of the atom sup
// norm when something living above `cap` is convolved with g.
double tail_factor(const GenSeries& g, double cap, double horizon) {
  const double lg_cap = std::lgamma(cap);
  const double log_t = std::log(horizon);
  double s = 0.0;
  for (const Term& t : g.terms()) {
    const double b = t.mu.value();
    s += std::abs(t.c) * std::exp(b * log_t + lg_cap - std::lgamma(cap + b));
  }
  return s;
}

double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

double atom_weight(double mu, double horizon) {
  return std::exp((mu - 1.0) * std::log(horizon) - std::lgamma(mu));
}

double atom_weight(const Exponent& mu, double horizon) {
  return atom_weight(mu.value(), horizon);
}

GenSeries::GenSeries(Exponent cap, double horizon) : cap_(cap) {
  tail_.horizon = horizon;
}

const Term* GenSeries::find(const Exponent& mu) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), mu,
      [](const Term& t, const Exponent& m) { return t.mu < m; });
  if (it == terms_.end() || it->mu != mu) return nullptr;
  return &*it;
}

cplx GenSeries::coeff(const Exponent& mu) const {
  const Term* t = find(mu);
  return t ? t->c : cplx(0.0, 0.0);
}

const Exponent& GenSeries::leading_exponent() const {
  if (terms_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "leading exponent of zero series");
  }
  return terms_.front().mu;
}

SeriesBuilder::SeriesBuilder(Exponent cap, double horizon) : cap_(cap) {
  tail_.horizon = horizon;
}

void SeriesBuilder::add(const Exponent& mu, cplx c, double mag) {
  if (mu > cap_) {
    if (c != cplx(0.0, 0.0)) {
      tail_.bound += mu.value() >= 1.0 ? std::abs(c) * atom_weight(mu, tail_.horizon)
                                       : kInf;
    }
    return;
  }
  raw_.push_back(Term{mu, c, mag});
}

void SeriesBuilder::add_tail(double bound, bool rigorous) {
  tail_.bound += bound;
  tail_.rigorous = tail_.rigorous && rigorous;
}

GenSeries SeriesBuilder::build() && {
  std::stable_sort(raw_.begin(), raw_.end(),
                   [](const Term& a, const Term& b) { return a.mu < b.mu; });
  GenSeries out(cap_, tail_.horizon);
  out.tail_ = tail_;
  out.dropped_noise_ = dropped_noise_;
  for (std::size_t i = 0; i < raw_.size();) {
    Term merged{raw_[i].mu, cplx(0.0, 0.0), 0.0};
    std::size_t j = i;
    for (; j < raw_.size() && raw_[j].mu == merged.mu; ++j) {
      merged.c += raw_[j].c;
      merged.mag += raw_[j].mag;
    }
    if (!is_noise(merged.c, merged.mag, kNoiseDrop)) {
      out.terms_.push_back(merged);
    } else if (merged.c != cplx(0.0, 0.0)) {
      ++out.dropped_noise_;
    }
    i = j;
  }
  return out;
}

GenSeries make_series(std::span<const std::pair<Exponent, cplx>> terms,
                      const Exponent& mu_max, double horizon) {
  if (!(horizon > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  }
  SeriesBuilder b(mu_max, horizon);
  for (const auto& [mu, c] : terms) {
    if (!mu.is_positive()) {
      throw Error(ErrorKind::NonpositiveExponent,
                  "nonpositive exponent " + mu.str());
    }
    b.add(mu, c, std::abs(c));
  }
  return std::move(b).build();
}

GenSeries make_series(std::initializer_list<std::pair<Exponent, cplx>> terms,
                      const Exponent& mu_max, double horizon) {
  return make_series(std::span<const std::pair<Exponent, cplx>>(terms.begin(), terms.size()),
                     mu_max, horizon);
}

GenSeries atom(const Exponent& mu, cplx c, const Exponent& mu_max,
               double horizon) {
  return make_series({{mu, c}}, mu_max, horizon);
}

cplx evaluate(const GenSeries& f, double t) {
  if (t < 0.0 || std::isnan(t)) {
    throw Error(ErrorKind::InvalidArgument, "evaluation at negative t");
  }
  if (t == 0.0) {
    cplx v(0.0, 0.0);
    for (const Term& term : f.terms()) {
      if (term.mu < Exponent(1)) {
        throw Error(ErrorKind::SingularAtOrigin, "singular at origin");
      }
      if (term.mu == Exponent(1)) v += term.c;
    }
    return v;
  }
  const double ts[1] = {t};
  return evaluate_grid(f, ts).front();
}

std::vector<cplx> evaluate_grid(const GenSeries& f, std::span<const double> ts) {
  for (double t : ts) {
    if (!(t > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "grid evaluation needs t > 0");
    }
  }
  kernels::AtomTable table;
  for (const Term& term : f.terms()) {
    table.mu.push_back(term.mu.value());
    table.coeffs.push_back(term.c);
    table.log_gamma.push_back(std::lgamma(term.mu.value()));
  }
  if (ts.size() > 1 && kernels::max_threads() > 1) {
    return kernels::evaluate_parallel(table, ts);
  }
  return kernels::evaluate_serial(table, ts);
}

namespace {

GenSeries convolve_generic(const GenSeries& f, const GenSeries& g,
                           SeriesBuilder&& b) {
  for (const Term& x : f.terms()) {
    for (const Term& y : g.terms()) b.add(x.mu + y.mu, x.c * y.c, x.mag * y.mag);
  }
  return std::move(b).build();
}

}  // namespace

GenSeries convolve(const GenSeries& f, const GenSeries& g) {
  const Exponent cap = std::min(f.cap(), g.cap());
  const double horizon = std::max(f.horizon(), g.horizon());
  SeriesBuilder b(cap, horizon);

  const double bf = f.tail().bound;
  const double bg = g.tail().bound;
  double tail = 0.0;
  if (bf > 0.0) tail += bf * tail_factor(g, f.cap().value(), horizon);
  if (bg > 0.0) tail += bg * tail_factor(f, g.cap().value(), horizon);
  if (bf > 0.0 && bg > 0.0) {
    tail += bf * bg * horizon * beta_fn(f.cap().value(), g.cap().value());
  }
  b.add_tail(tail, f.tail().rigorous && g.tail().rigorous);
  if (f.empty() || g.empty()) return std::move(b).build();

  // Common lattice 1/den for all exponents involved.
  std::int64_t den = cap.den();
  for (const Term& t : f.terms()) den = checked_lcm(den, t.mu.den());
  for (const Term& t : g.terms()) den = checked_lcm(den, t.mu.den());

  auto to_key = [den](const Exponent& e) {
    return checked_mul(e.num(), den / e.den());
  };
  const std::int64_t key_cap = to_key(cap);
  const std::int64_t key_lo = checked_add(to_key(f.terms().front().mu),
                                          to_key(g.terms().front().mu));
  const std::int64_t key_hi = checked_add(to_key(f.terms().back().mu),
                                          to_key(g.terms().back().mu));
  if (key_cap - key_lo > kMaxDenseKeys || key_hi - key_cap > kMaxDenseKeys) {
    return convolve_generic(f, g, std::move(b));
  }

  auto split = [&](const GenSeries& s, std::vector<std::int64_t>& keys,
                   std::vector<cplx>& cs, std::vector<double>& ms) {
    for (const Term& t : s.terms()) {
      keys.push_back(to_key(t.mu));
      cs.push_back(t.c);
      ms.push_back(t.mag);
    }
  };
  std::vector<std::int64_t> fk, gk;
  std::vector<cplx> fc, gc;
  std::vector<double> fm, gm;
  split(f, fk, fc, fm);
  split(g, gk, gc, gm);

  std::vector<double> weights;
  if (key_hi > key_cap) {
    weights.resize(static_cast<std::size_t>(key_hi - key_cap));
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double mu = static_cast<double>(key_cap + 1 + static_cast<std::int64_t>(k)) /
                        static_cast<double>(den);
      weights[k] = mu >= 1.0 ? atom_weight(mu, horizon) : kInf;
    }
  }

  const auto r = kernels::convolve({fk, fc, fm}, {gk, gc, gm}, key_cap, weights);
  b.add_tail(r.dropped_weight);
  for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
    if (r.mags[k] == 0.0) continue;
    b.add(Exponent(r.key0 + static_cast<std::int64_t>(k), den), r.coeffs[k],
          r.mags[k]);
  }
  return std::move(b).build();
}

GenSeries convolution_power(const GenSeries& g, int m) {
  if (m < 1) {
    throw Error(ErrorKind::UnsupportedConvolutionPower,
                "unsupported convolution power " + std::to_string(m));
  }
  GenSeries acc = g;
  for (int i = 1; i < m; ++i) acc = convolve(acc, g);
  return acc;
}

GenSeries differentiate(const GenSeries& f, int order) {
  if (order < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  }
  if (order == 0) return f;
  const Exponent i(order);
  const Exponent cap = f.cap() - i;
  SeriesBuilder b(cap, f.horizon());
  std::size_t noise = 0;
  for (const Term& t : f.terms()) {
    if (t.mu.is_integer() && t.mu <= i) continue;
    const Exponent mu = t.mu - i;
    if (!mu.is_positive()) {
      if (is_noise(t.c, t.mag, kNoiseDomain)) {
        ++noise;
        continue;
      }
      throw Error(ErrorKind::DerivativeLeavesC1,
                  "derivative leaves C_-1: exponent " + t.mu.str() +
                      " differentiated " + std::to_string(order) + " times");
    }
    b.add(mu, t.c, t.mag);
  }
  b.add_noise_count(noise);
  if (f.tail().bound > 0.0) {
    // Estimate: dropped atoms sit just above the cap, where d^i scales the
    // sup weight by Gamma(cap+1)/(Gamma(cap+1-i) T^i).
    const double c = f.cap().value() + 1.0;
    const double factor =
        c - order > 0.0
            ? std::exp(std::lgamma(c) - std::lgamma(c - order) -
                       order * std::log(f.horizon()))
            : kInf;
    b.add_tail(f.tail().bound * std::max(1.0, factor), false);
  } else if (!f.tail().rigorous) {
    b.add_tail(0.0, false);
  }
  return std::move(b).build();
}

cplx derivative_at_zero(const GenSeries& f, int order) {
  if (order < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative derivative order");
  }
  const Exponent target(order + 1);
  cplx value(0.0, 0.0);
  for (const Term& t : f.terms()) {
    if (t.mu > target) break;
    if (t.mu == target) {
      value = t.c;
    } else if (!t.mu.is_integer() && !is_noise(t.c, t.mag, kNoiseDomain)) {
      throw Error(ErrorKind::ProjectorSingular,
                  "projector singular at origin: exponent " + t.mu.str() +
                      " under derivative order " + std::to_string(order));
    }
  }
  return value;
}

namespace {

GenSeries combine(const GenSeries& a, const GenSeries& b, cplx sb) {
  const Exponent cap = std::min(a.cap(), b.cap());
  SeriesBuilder out(cap, std::max(a.horizon(), b.horizon()));
  out.add_tail(a.tail().bound + std::abs(sb) * b.tail().bound,
               a.tail().rigorous && b.tail().rigorous);
  for (const Term& t : a.terms()) out.add(t.mu, t.c, t.mag);
  for (const Term& t : b.terms()) out.add(t.mu, sb * t.c, std::abs(sb) * t.mag);
  out.add_noise_count(a.dropped_noise() + b.dropped_noise());
  return std::move(out).build();
}

}  // namespace

GenSeries add(const GenSeries& a, const GenSeries& b) { return combine(a, b, 1.0); }
GenSeries subtract(const GenSeries& a, const GenSeries& b) { return combine(a, b, -1.0); }

GenSeries scale(const GenSeries& a, cplx s) {
  SeriesBuilder out(a.cap(), a.horizon());
  out.add_tail(std::abs(s) * a.tail().bound, a.tail().rigorous);
  if (s != cplx(0.0, 0.0)) {
    for (const Term& t : a.terms()) out.add(t.mu, s * t.c, std::abs(s) * t.mag);
  }
  return std::move(out).build();
}

GenSeries truncate(const GenSeries& a, const Exponent& cap) {
  SeriesBuilder out(std::min(cap, a.cap()), a.horizon());
  out.add_tail(a.tail().bound, a.tail().rigorous);
  for (const Term& t : a.terms()) out.add(t.mu, t.c, t.mag);
  return std::move(out).build();
}

double relative_difference(const GenSeries& a, const GenSeries& b) {
  return relative_difference(a, b, std::min(a.cap(), b.cap()));
}

double relative_difference(const GenSeries& a, const GenSeries& b,
                           const Exponent& upto) {
  double worst = 0.0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  const auto ea = a.terms().end();
  const auto eb = b.terms().end();
  while (ia != ea || ib != eb) {
    cplx ca(0.0, 0.0), cb(0.0, 0.0);
    double ma = 0.0, mb = 0.0;
    Exponent mu;
    if (ib == eb || (ia != ea && ia->mu < ib->mu)) {
      mu = ia->mu; ca = ia->c; ma = ia->mag; ++ia;
    } else if (ia == ea || ib->mu < ia->mu) {
      mu = ib->mu; cb = ib->c; mb = ib->mag; ++ib;
    } else {
      mu = ia->mu; ca = ia->c; ma = ia->mag; cb = ib->c; mb = ib->mag;
      ++ia; ++ib;
    }
    if (mu > upto) break;
    const double denom = std::max(ma, mb);
    if (denom > 0.0) worst = std::max(worst, std::abs(ca - cb) / denom);
  }
  return worst;
}

double max_abs_coeff(const GenSeries& a, const Exponent& upto) {
  double m = 0.0;
  for (const Term& t : a.terms()) {
    if (t.mu > upto) break;
    m = std::max(m, std::abs(t.c));
  }
  return m;
}

nlohmann::ordered_json series_to_json(const GenSeries& f) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Term& t : f.terms()) {
    nlohmann::ordered_json rec;
    rec["num"] = t.mu.num();
    rec["den"] = t.mu.den();
    rec["re"] = t.c.real();
    rec["im"] = t.c.imag();
    arr.push_back(rec);
  }
  return arr;
}

GenSeries series_from_json(const nlohmann::ordered_json& j, const Exponent& mu_max,
                           double horizon) {
  if (!j.is_array()) {
    throw Error(ErrorKind::Schema, "series must be a JSON array");
  }
  std::vector<std::pair<Exponent, cplx>> terms;
  for (const auto& rec : j) {
    if (!rec.is_object() || !rec.contains("num") || !rec.contains("den") ||
        !rec.contains("re") || !rec.contains("im")) {
      throw Error(ErrorKind::Schema, "series record needs num, den, re, im");
    }
    const auto den = rec.at("den").get<std::int64_t>();
    if (den <= 0) throw Error(ErrorKind::Schema, "series record with den <= 0");
    terms.emplace_back(Exponent(rec.at("num").get<std::int64_t>(), den),
                       cplx(rec.at("re").get<double>(), rec.at("im").get<double>()));
  }
  return make_series(terms, mu_max, horizon);
}

}  // namespace gfc
