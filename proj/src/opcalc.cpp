#include "gfc/opcalc.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "gfc/error.hpp"
#include "gfc/parallel.hpp"

namespace gfc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSeriesTerms = 100000;

// Growth of the sup norm of something living above `from` under
// convolution with g: sum_b |g_b| T^b Gamma(from)/Gamma(from + b).
double growth_factor(const GenSeries& g, double from) {
  const double log_t = std::log(g.horizon());
  double s = 0.0;
  for (const Term& t : g.terms()) {
    const double b = t.mu.value();
    s += std::abs(t.c) * std::exp(b * log_t + std::lgamma(from) - std::lgamma(from + b));
  }
  return s;
}

GenSeries rebuild(const GenSeries& s, const Exponent& cap, double extra_tail) {
  SeriesBuilder b(std::min(cap, s.cap()), s.horizon());
  b.add_tail(s.tail().bound + extra_tail, s.tail().rigorous);
  for (const Term& t : s.terms()) b.add(t.mu, t.c, t.mag);
  b.add_noise_count(s.dropped_noise());
  return std::move(b).build();
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

double sup_bound(const GenSeries& s) {
  double n = s.tail().bound;
  for (const Term& t : s.terms()) n += std::abs(t.c) * atom_weight(t.mu, s.horizon());
  return n;
}

GenSeries l_series(const GenSeries& kappa, cplx lambda, const Truncation& trunc,
                   std::vector<std::string>* notes) {
  if (kappa.empty()) {
    throw Error(ErrorKind::InvalidArgument, "l-series needs a nonzero kernel");
  }
  const GenSeries base = truncate(kappa, trunc.mu_max);
  if (lambda == cplx(0.0, 0.0) || base.empty()) return base;

  const double abs_lambda = std::abs(lambda);
  GenSeries acc = base;
  GenSeries power = base;
  cplx lam_pow = 1.0;
  int small_run = 0;
  int j = 1;
  for (;;) {
    power = convolve(power, base);
    lam_pow *= lambda;
    ++j;
    if (power.empty()) {
      // Everything from kappa^{<j>} on lies above the cap.
      const double r = abs_lambda * growth_factor(base, base.cap().value());
      const double rem = r < 1.0 ? std::abs(lam_pow) * power.tail().bound / (1.0 - r) : kInf;
      acc = rebuild(acc, acc.cap(), rem);
      break;
    }
    const double bound = std::abs(lam_pow) * sup_bound(power);
    acc = add(acc, scale(power, lam_pow));
    small_run = bound < trunc.tol ? small_run + 1 : 0;
    if (small_run == 3 || j >= kMaxSeriesTerms) {
      const GenSeries next = convolve(power, base);
      if (next.empty()) continue;  // the cap branch above finishes the job
      const Exponent& lead = next.leading_exponent();
      // Coefficients from the first omitted term's exponent on are no longer
      // exact: lower the cap below it.
      Exponent new_cap = acc.cap();
      for (const Term& t : acc.terms()) {
        if (t.mu < lead) new_cap = t.mu;
      }
      const double r = abs_lambda * growth_factor(base, lead.value());
      const double rem =
          r < 1.0 ? std::abs(lam_pow * lambda) * sup_bound(next) / (1.0 - r) : kInf;
      acc = rebuild(acc, new_cap, rem);
      break;
    }
  }
  if (notes != nullptr && !(acc.tail().bound <= trunc.tol)) {
    std::ostringstream os;
    os << "unconverged tail: l-series for lambda=" << format_complex(lambda)
       << " stopped at cap " << acc.cap().str() << " after " << j
       << " terms; tail bound " << acc.tail().bound << " on [0, " << acc.horizon() << "]";
    notes->push_back(os.str());
  }
  return acc;
}

Realization realize_rational(const RationalOperator& r, const GenSeries& kappa,
                             const Truncation& trunc, std::vector<std::string>* notes) {
  Realization out;
  out.form = partial_fractions(r.numerator, r.denominator);
  out.identity = out.form.constant;
  out.has_identity = out.identity != cplx(0.0, 0.0);
  if (notes != nullptr) {
    notes->insert(notes->end(), out.form.warnings.begin(), out.form.warnings.end());
  }

  const GenSeries base = truncate(kappa, trunc.mu_max);
  const auto& poles = out.form.poles;
  std::vector<GenSeries> parts(poles.size());
  std::vector<std::vector<std::string>> pole_notes(poles.size());
  std::vector<std::exception_ptr> failures(poles.size());
  const auto count = static_cast<std::int64_t>(poles.size());
  kernels::for_each_index(count, count > 1 && kernels::max_threads() > 1,
                          [&](std::int64_t idx) {
    const auto j = static_cast<std::size_t>(idx);
    try {
      const Pole& pole = poles[j];
      const GenSeries l = l_series(base, pole.value, trunc, &pole_notes[j]);
      GenSeries lp = l;
      GenSeries part = scale(l, pole.coeffs[0]);
      for (std::size_t i = 1; i < pole.coeffs.size(); ++i) {
        lp = convolve(lp, l);
        part = add(part, scale(lp, pole.coeffs[i]));
      }
      parts[j] = std::move(part);
    } catch (...) {
      failures[j] = std::current_exception();
    }
  });
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  out.series = GenSeries(base.cap(), base.horizon());
  for (std::size_t j = 0; j < parts.size(); ++j) {
    out.series = add(out.series, parts[j]);
    if (notes != nullptr) {
      notes->insert(notes->end(), pole_notes[j].begin(), pole_notes[j].end());
    }
  }
  return out;
}

GenSeries realize_proper(const RationalOperator& r, const GenSeries& kappa,
                         const Truncation& trunc, std::vector<std::string>* notes) {
  Realization out = realize_rational(r, kappa, trunc, notes);
  if (out.has_identity) {
    throw Error(ErrorKind::IdentityPart,
                "identity part " + format_complex(out.identity) +
                    " cannot be realized as a function");
  }
  return std::move(out.series);
}

}  // namespace gfc
