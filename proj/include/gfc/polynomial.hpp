#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

namespace gfc {

using cplx = std::complex<double>;

/// Complex polynomial c_0 + c_1 z + ... + c_m z^m. Leading coefficients
/// below 1e-14 of the largest coefficient magnitude are stripped.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> ascending);
  Polynomial(std::initializer_list<cplx> ascending)
      : Polynomial(std::vector<cplx>(ascending)) {}

  /// prod_k (z - roots_k), scaled by `lead`.
  static Polynomial from_roots(const std::vector<cplx>& roots, cplx lead = 1.0);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx coeff(int p) const;
  cplx leading() const;
  bool is_real() const;

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  /// Coefficients of P(z0 + u) in powers of u.
  Polynomial shifted(cplx z0) const;
  /// sum |c_p| |z|^p, the natural scale of |P(z)|.
  double magnitude_at(cplx z) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<cplx> coeffs_;
};

struct Root {
  cplx value;
  int multiplicity = 1;
  double residual = 0.0;   // |P(value)|
};

/// All roots with multiplicity (Aberth-Ehrlich iteration, clustering within
/// 1e-7 (1 + |lambda|), Newton polishing on P^{(m-1)}). Sorted by real then
/// imaginary part.
std::vector<Root> poly_roots(const Polynomial& p);

struct Pole {
  cplx value;
  int multiplicity = 1;
  /// coeffs[i-1] multiplies 1/(z - value)^i.
  std::vector<cplx> coeffs;
};

/// Q/P = constant + sum_j sum_i c_ij / (z - lambda_j)^i.
struct PartialFractionForm {
  std::vector<Pole> poles;
  cplx constant{0.0, 0.0};
  std::vector<std::string> warnings;

  cplx operator()(cplx z) const;
};

PartialFractionForm partial_fractions(const Polynomial& q, const Polynomial& p);

/// Q(S_kappa)/P(S_kappa).
struct RationalOperator {
  Polynomial numerator;
  Polynomial denominator;
};

}  // namespace gfc
