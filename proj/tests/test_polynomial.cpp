#include <random>

#include "doctest.h"
#include "gfc/error.hpp"
#include "gfc/polynomial.hpp"
#include "support.hpp"

using namespace gfc;

TEST_CASE("polynomial basics") {
  const Polynomial p{2.0, -3.0, 1.0};
  CHECK(p.degree() == 2);
  CHECK(p(cplx(3.0)) == cplx(2.0));
  CHECK(Polynomial{1.0, 2.0, 1e-20}.degree() == 1);
  CHECK(Polynomial{}.is_zero());
  const Polynomial s = p.shifted(2.0);   // (u+2)^2 - 3(u+2) + 2 = u^2 + u
  CHECK(s.coeff(0) == cplx(0.0));
  CHECK(s.coeff(1) == cplx(1.0));
  CHECK(s.coeff(2) == cplx(1.0));
  CHECK((Polynomial{1.0, 1.0} * Polynomial{-1.0, 1.0}).coeffs() ==
        Polynomial{-1.0, 0.0, 1.0}.coeffs());
}

TEST_CASE("roots") {
  auto r = poly_roots(Polynomial{2.0, -3.0, 1.0});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].value - 1.0) < 1e-14);
  CHECK(std::abs(r[1].value - 2.0) < 1e-14);
  CHECK(r[0].multiplicity == 1);

  const cplx z0(1.0, 2.0);
  auto d = poly_roots(Polynomial::from_roots({z0, z0}));
  REQUIRE(d.size() == 1);
  CHECK(d[0].multiplicity == 2);
  CHECK(std::abs(d[0].value - z0) < 1e-12);

  auto z = poly_roots(Polynomial{0.0, 0.0, 1.0, 1.0});
  REQUIRE(z.size() == 2);
  CHECK(z[0].value == cplx(-1.0));
  CHECK(z[1].multiplicity == 2);

  CHECK_THROWS_AS(poly_roots(Polynomial{3.0}), Error);
}

TEST_CASE("random degree-5 roots satisfy the residual oracle") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> c;
    for (int k = 0; k <= 5; ++k) c.push_back(testing::random_complex(rng, 3.0));
    const Polynomial p(c);
    double norm = 0.0;
    for (const cplx& x : c) norm = std::max(norm, std::abs(x));
    int total = 0;
    for (const Root& r : poly_roots(p)) {
      CHECK(std::abs(p(r.value)) <= 1e-8 * norm * std::max(1.0, std::pow(std::abs(r.value), 5)));
      total += r.multiplicity;
    }
    CHECK(total == 5);
  }
}

TEST_CASE("real polynomials give exact conjugate pairs") {
  const auto r = poly_roots(Polynomial{5.0, -2.0, 1.0});  // 1 +- 2i
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == std::conj(r[1].value));
  CHECK(r[0].value.imag() < 0.0);
}

TEST_CASE("partial fractions") {
  const auto f = partial_fractions(Polynomial{1.0}, Polynomial{2.0, -3.0, 1.0});
  REQUIRE(f.poles.size() == 2);
  CHECK(std::abs(f.poles[0].coeffs[0] + 1.0) < 1e-14);
  CHECK(std::abs(f.poles[1].coeffs[0] - 1.0) < 1e-14);
  CHECK(f.constant == cplx(0.0));

  const cplx lam(0.5, -1.0);
  const auto g = partial_fractions(Polynomial{1.0}, Polynomial::from_roots({lam, lam}));
  REQUIRE(g.poles.size() == 1);
  REQUIRE(g.poles[0].coeffs.size() == 2);
  CHECK(std::abs(g.poles[0].coeffs[0]) < 1e-10);
  CHECK(std::abs(g.poles[0].coeffs[1] - 1.0) < 1e-10);

  // (z^2 + 1)/(z^3 - z) recombined at random points.
  const Polynomial q{1.0, 0.0, 1.0}, p{0.0, -1.0, 0.0, 1.0};
  const auto h = partial_fractions(q, p);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 32; ++i) {
    const cplx z = testing::random_complex(rng, 3.0);
    CHECK(std::abs(h(z) - q(z) / p(z)) <= 1e-10 * std::abs(q(z) / p(z)));
  }

  const auto e = partial_fractions(Polynomial{1.0, 0.0, 2.0}, Polynomial{2.0, -3.0, 1.0});
  CHECK(std::abs(e.constant - 2.0) < 1e-15);

  try {
    (void)partial_fractions(Polynomial{0.0, 0.0, 1.0}, Polynomial{1.0, 1.0});
    FAIL("no error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ImproperRational);
  }
  const auto w = partial_fractions(Polynomial{1.0}, Polynomial::from_roots({1.0, 1.0 + 1e-5}));
  CHECK_FALSE(w.warnings.empty());
}

TEST_CASE("partial fractions with mixed multiplicities recombine") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx a = testing::random_complex(rng, 2.0);
    const cplx b = testing::random_complex(rng, 2.0) + 3.0;
    const cplx c = testing::random_complex(rng, 2.0) - 3.0;
    const Polynomial p = Polynomial::from_roots({a, a, b, c, c, c}, 1.5);
    std::vector<cplx> qc;
    for (int k = 0; k < 5; ++k) qc.push_back(testing::random_complex(rng));
    const Polynomial q(qc);
    const auto form = partial_fractions(q, p);
    CHECK(form.poles.size() == 3);
    for (int i = 0; i < 32; ++i) {
      const cplx z = testing::random_complex(rng, 4.0);
      const cplx exact = q(z) / p(z);
      CHECK(std::abs(form(z) - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}
