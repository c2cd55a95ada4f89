#include "gfc/operators.hpp"

#include "gfc/error.hpp"

namespace gfc {

namespace {

void require_positive(int m, const char* what) {
  if (m < 1) {
    throw Error(ErrorKind::InvalidArgument,
                std::string(what) + " must be >= 1, got " + std::to_string(m));
  }
}

}  // namespace

GenSeries realize(const SoninePair& pair, const NullElement& element) {
  if (element.coeffs.size() != static_cast<std::size_t>(pair.n)) {
    throw Error(ErrorKind::InvalidArgument,
                "null element needs " + std::to_string(pair.n) +
                    " coefficients, got " + std::to_string(element.coeffs.size()));
  }
  const auto basis = null_space_basis(pair);
  GenSeries out(pair.kappa.cap(), pair.kappa.horizon());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (element.coeffs[i] == cplx(0.0, 0.0)) continue;
    out = add(out, scale(basis[i], element.coeffs[i]));
  }
  return out;
}

GenSeries gfi(const SoninePair& pair, const GenSeries& f) {
  return convolve(pair.kappa, f);
}

GenSeries gfd_with_kernel(const GenSeries& kernel, int order, const GenSeries& f) {
  try {
    return differentiate(convolve(kernel, f), order);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DerivativeLeavesC1) throw;
    throw Error(ErrorKind::DerivativeLeavesC1,
                std::string(e.what()) +
                    "; f is outside the natural domain of the derivative");
  }
}

GenSeries gfd_rl(const SoninePair& pair, const GenSeries& f) {
  return gfd_with_kernel(pair.k, pair.n, f);
}

GenSeries gfd_caputo(const SoninePair& pair, const GenSeries& f) {
  GenSeries regular = f;
  for (int j = 0; j < pair.n; ++j) {
    const cplx value = derivative_at_zero(f, j);
    if (value == cplx(0.0, 0.0)) continue;
    regular = subtract(regular, atom(Exponent(j + 1), value, f.cap(), f.horizon()));
  }
  return gfd_rl(pair, regular);
}

std::vector<GenSeries> null_space_basis(const SoninePair& pair) {
  std::vector<GenSeries> basis;
  basis.reserve(static_cast<std::size_t>(pair.n));
  for (int i = 0; i < pair.n; ++i) {
    basis.push_back(differentiate(pair.kappa, pair.n - 1 - i));
  }
  return basis;
}

Projection projector(const SoninePair& pair, const GenSeries& f) {
  const GenSeries kf = convolve(pair.k, f);
  Projection out;
  out.element.coeffs.resize(static_cast<std::size_t>(pair.n));
  for (int i = 0; i < pair.n; ++i) {
    out.element.coeffs[static_cast<std::size_t>(i)] = derivative_at_zero(kf, i);
  }
  out.realization = realize(pair, out.element);
  return out;
}

GenSeries mfold_gfi(const SoninePair& pair, int m, const GenSeries& f) {
  require_positive(m, "fold count");
  return convolve(convolution_power(pair.kappa, m), f);
}

GenSeries mfold_gfd(const SoninePair& pair, int m, const GenSeries& f) {
  require_positive(m, "fold count");
  GenSeries g = f;
  for (int p = 1; p <= m; ++p) {
    try {
      g = gfd_rl(pair, g);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (iteration " +
                                std::to_string(p) + " of " +
                                std::to_string(m) + ")");
    }
  }
  return g;
}

MultiProjection projector_m(const SoninePair& pair, int m, const GenSeries& f) {
  require_positive(m, "fold count");
  MultiProjection out;
  GenSeries derived = f;
  GenSeries kappa_power;
  for (int p = 0; p < m; ++p) {
    if (p > 0) {
      derived = gfd_rl(pair, derived);
      kappa_power = p == 1 ? pair.kappa : convolve(kappa_power, pair.kappa);
    }
    Projection proj = projector(pair, derived);
    GenSeries lifted =
        p == 0 ? proj.realization : convolve(kappa_power, proj.realization);
    out.realization = p == 0 ? lifted : add(out.realization, lifted);
    out.elements.push_back(std::move(proj.element));
  }
  return out;
}

}  // namespace gfc
