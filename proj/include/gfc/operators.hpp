#pragma once

#include <vector>

#include "gfc/gen_series.hpp"
#include "gfc/sonine.hpp"

namespace gfc {

/// Element of the null space of the derivative, stored by its coordinates
/// a_0..a_{n-1} against the basis d^{n-1-i} kappa / dt^{n-1-i}.
struct NullElement {
  std::vector<cplx> coeffs;
};

/// sum_i a_i d^{n-1-i} kappa. Throws when coeffs.size() != n.
GenSeries realize(const SoninePair& pair, const NullElement& element);

/// General fractional integral: kappa * f.
GenSeries gfi(const SoninePair& pair, const GenSeries& f);
/// Riemann-Liouville type derivative: d^n/dt^n (k * f).
GenSeries gfd_rl(const SoninePair& pair, const GenSeries& f);
/// Caputo type derivative: gfd_rl of f - sum_j f^(j)(0) h_{j+1}.
GenSeries gfd_caputo(const SoninePair& pair, const GenSeries& f);
/// d^order/dt^order (kernel * f) for an arbitrary kernel.
GenSeries gfd_with_kernel(const GenSeries& kernel, int order, const GenSeries& f);

/// [d^{n-1} kappa, ..., d kappa, kappa].
std::vector<GenSeries> null_space_basis(const SoninePair& pair);

struct Projection {
  NullElement element;      // a_i = (d^i (k * f))(0)
  GenSeries realization;    // F f
};

/// F f = f - gfi(gfd_rl(f)), read off from the coefficients of k * f.
Projection projector(const SoninePair& pair, const GenSeries& f);

/// kappa^{<m>} * f.
GenSeries mfold_gfi(const SoninePair& pair, int m, const GenSeries& f);
/// gfd_rl applied m times.
GenSeries mfold_gfd(const SoninePair& pair, int m, const GenSeries& f);

struct MultiProjection {
  std::vector<NullElement> elements;   // gamma_p = F(D^{<p>} f), p < m
  GenSeries realization;               // F_m f
};

/// F_m f = sum_{i<m} I^{<i>} F(D^{<i>} f) = f - I^{<m>} D^{<m>} f.
MultiProjection projector_m(const SoninePair& pair, int m, const GenSeries& f);

}  // namespace gfc
