// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gfc/opcalc.hpp"
#include "gfc/oracle.hpp"
#include "gfc/solver.hpp"
#include "support.hpp"

using namespace gfc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* label, double value, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.3g (tol %.0e)", label, value, tol);
  return buf;
}

std::string join(const std::string& a, const std::string& b) { return a + "; " + b; }

double ratio(cplx got, cplx ref) { return std::abs(got - ref) / std::max(1.0, std::abs(ref)); }

CauchyProblem single(const SoninePair& pair, cplx lambda, GenSeries rhs, std::vector<cplx> a) {
  return {pair, Polynomial{-lambda, 1.0}, std::move(rhs), {NullElement{std::move(a)}}};
}

Outcome sonine_identities() {
  constexpr double tol = 1e-13;
  double worst = 0.0;
  const auto pairs = testing::catalog_pairs();
  for (const SoninePair& p : pairs) {
    const GenSeries prod = convolve(p.kappa, p.k);
    const Exponent hn(p.n);
    bool seen = false;
    for (const Term& t : prod.terms()) {
      if (t.mu > prod.cap()) break;
      const cplx target = t.mu == hn ? cplx(1.0) : cplx(0.0);
      if (t.mu == hn) seen = true;
      worst = std::max(worst, std::abs(t.c - target));
    }
    if (!seen) worst = std::max(worst, 1.0);
  }
  return {pairs.size() == 20 && worst <= tol,
          std::to_string(pairs.size()) + " pairs, " + fmt("max |kappa*k - h_n|", worst, tol)};
}

Outcome fundamental_theorems() {
  constexpr double tol = 1e-12;
  constexpr double tol_m = 1e-11;
  std::mt19937_64 rng(20240601);
  const auto pairs = testing::catalog_pairs();
  double worst = 0.0;
  int count = 0;
  for (int trial = 0; trial < 10; ++trial) {
    for (const SoninePair& p : pairs) {
      const GenSeries f =
          testing::random_series(rng, 6, 6, Exponent(1, 6), Exponent(20), p.kappa.cap());
      worst = std::max(worst, relative_difference(gfd_rl(p, gfi(p, f)), f));
      const GenSeries g = testing::random_domain_element(rng, p, Exponent(20));
      const Projection pr = projector(p, g);
      worst = std::max(worst, relative_difference(gfi(p, gfd_rl(p, g)), g - pr.realization));
      ++count;
    }
  }
  double worst_m = 0.0;
  for (const SoninePair& p : pairs) {
    for (int m = 1; m <= 4; ++m) {
      const GenSeries f =
          testing::random_series(rng, 5, 6, Exponent(1, 6), Exponent(10), p.kappa.cap());
      worst_m = std::max(worst_m, relative_difference(mfold_gfd(p, m, mfold_gfi(p, m, f)), f));
      const GenSeries g = testing::random_mfold_element(rng, p, m, Exponent(10));
      const MultiProjection pr = projector_m(p, m, g);
      worst_m = std::max(worst_m, relative_difference(mfold_gfi(p, m, mfold_gfd(p, m, g)),
                                                      g - pr.realization));
    }
  }
  return {count >= 200 && worst <= tol && worst_m <= tol_m,
          join(std::to_string(count) + " series, " + fmt("DI/ID error", worst, tol),
               fmt("m-fold (m<=4) error", worst_m, tol_m))};
}

Outcome null_space() {
  constexpr double tol = 1e-13;
  double worst = 0.0;
  for (const SoninePair& p : testing::catalog_pairs()) {
    for (const GenSeries& b : null_space_basis(p)) {
      worst = std::max(worst, max_abs_coeff(gfd_rl(p, b), b.cap()));
    }
  }
  int mismatches = 0;
  for (const Exponent& a : testing::catalog_alphas()) {
    const int n = static_cast<int>(a.floor()) + 1;
    const auto basis = null_space_basis(make_power_law_pair(a, n));
    for (int i = 0; i < n; ++i) {
      const GenSeries& b = basis[static_cast<std::size_t>(i)];
      const bool exact = b.size() == 1 && b.terms()[0].mu == a - Exponent(n - 1 - i) &&
                         b.terms()[0].c == cplx(1.0);
      if (!exact) ++mismatches;
    }
  }
  return {worst <= tol && mismatches == 0,
          join(fmt("max |D basis|", worst, tol),
               std::to_string(mismatches) + " power-law basis mismatches")};
}

Outcome operational_relations() {
  constexpr double tol = 1e-9;
  const std::vector<cplx> lambdas = {2.0, -1.5, cplx(1.2, 1.1), cplx(-0.4, -1.8)};
  double worst = 0.0;
  int points = 0;
  for (const Exponent& a : {Exponent(1, 2), Exponent(3, 4), Exponent(3, 2)}) {
    const double al = a.value();
    const GenSeries kappa = atom(a);
    for (const cplx lambda : lambdas) {
      const double t_max = std::min(2.0, std::pow(2.0 / std::abs(lambda), 1.0 / al));
      for (int m = 1; m <= 3; ++m) {
        const Polynomial p =
            Polynomial::from_roots(std::vector<cplx>(static_cast<std::size_t>(m), lambda));
        const Realization r = realize_rational({Polynomial{1.0}, p}, kappa);
        for (int k = 1; k <= 16; ++k) {
          const double t = t_max * k / 16.0;
          const cplx ref = std::pow(t, m * al - 1.0) *
                           oracle::ml_three_param(al, m * al, m, lambda * std::pow(t, al));
          worst = std::max(worst, ratio(evaluate(r.series, t), ref));
          ++points;
        }
      }
    }
  }
  return {worst <= tol, std::to_string(points) + " points, " + fmt("max error", worst, tol)};
}

Outcome single_term() {
  constexpr double tol = 1e-9;
  double worst = 0.0;
  double cross = 0.0;
  std::mt19937_64 rng(77);
  for (const Exponent& a : {Exponent(1, 2), Exponent(3, 2), Exponent(5, 2)}) {
    const int n = static_cast<int>(a.floor()) + 1;
    const double al = a.value();
    const SoninePair p = make_power_law_pair(a, n);
    for (const cplx lambda : {cplx(1.0), cplx(-1.3), cplx(0.6, -0.9)}) {
      std::vector<cplx> coeffs;
      for (int i = 0; i < n; ++i) coeffs.push_back(testing::random_complex(rng));
      const SolutionReport r = solve_single(single(p, lambda, atom(Exponent(1)), coeffs));
      cross = std::max(cross, r.iv_cross_check);
      const double t_max = std::min(2.0, std::pow(4.0 / std::abs(lambda), 1.0 / al));
      for (int k = 1; k <= 16; ++k) {
        const double t = t_max * k / 16.0;
        const cplx z = lambda * std::pow(t, al);
        cplx ref = std::pow(t, al) * oracle::mittag_leffler(al, al + 1.0, z);
        for (int i = 0; i < n; ++i) {
          ref += coeffs[static_cast<std::size_t>(i)] * std::pow(t, al - n + i) *
                 oracle::mittag_leffler(al, al - n + i + 1.0, z);
        }
        worst = std::max(worst, ratio(evaluate(r.y, t), ref));
      }
    }
  }
  return {worst <= tol && cross <= kCrossCheckThreshold,
          join(fmt("max error vs Mittag-Leffler", worst, tol),
               fmt("iv cross-check", cross, kCrossCheckThreshold))};
}

Outcome multi_term() {
  constexpr double tol = 1e-10;
  constexpr double tol_m1 = 1e-12;
  const std::vector<SoninePair> kernels = {make_power_law_pair(Exponent(1, 2), 1),
                                           testing::perturbed_pairs()[0]};
  const cplx lambda(-0.7, 0.4);
  const GenSeries f = make_series({{Exponent(1), 1.0}, {Exponent(3, 2), 0.5}});
  double eq = 0.0;
  double ic = 0.0;
  double m1 = 0.0;
  for (const SoninePair& p : kernels) {
    for (const Polynomial& poly :
         {Polynomial{2.0, -3.0, 1.0}, Polynomial::from_roots({lambda, lambda})}) {
      const CauchyProblem prob{p, poly, f, {NullElement{{0.5}}, NullElement{{cplx(-1.0, 0.25)}}}};
      const SolutionReport r = solve_multi(prob);
      eq = std::max(eq, r.equation_residual);
      ic = std::max(ic, r.ic_residual);
    }
    CauchyProblem one = single(p, lambda, f, {cplx(0.3, -0.2)});
    one.coeffs = Polynomial{-2.0 * lambda, 2.0};
    m1 = std::max(m1, relative_difference(solve_single(one).y, solve_multi(one).y));
  }
  return {eq <= tol && ic <= tol && m1 <= tol_m1,
          join(join(fmt("equation residual", eq, tol), fmt("ic residual", ic, tol)),
               fmt("m = 1 vs single", m1, tol_m1))};
}

// t^p times a cubic: the smooth factor is a polynomial, which is where
// linear product integration reaches its full order.
GenSeries polynomial_smooth_part(std::mt19937_64& rng, std::int64_t den) {
  std::uniform_int_distribution<std::int64_t> pick(1, 2 * den - 1);
  const Exponent lead(pick(rng), den);
  std::vector<std::pair<Exponent, cplx>> terms;
  for (int j = 0; j < 4; ++j) terms.emplace_back(lead + Exponent(j), testing::random_complex(rng));
  return make_series(terms);
}

Outcome oracle_independence() {
  constexpr double tol = 1e-3;
  constexpr double min_factor = 1.8;
  std::mt19937_64 rng(4242);
  double worst = 0.0;
  double factor = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const GenSeries f = polynomial_smooth_part(rng, 4);
    const GenSeries g = polynomial_smooth_part(rng, 3);
    const GenSeries exact = convolve(f, g);
    double prev = 0.0;
    for (int n : {256, 512}) {
      const auto num = oracle::grid_convolve(oracle::sample(f, 2.0, n), oracle::sample(g, 2.0, n));
      double err = 0.0;
      double scale = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double t = 2.0 * k / n;
        if (t < 0.1) continue;
        const cplx e = evaluate(exact, t);
        err = std::max(err, std::abs(num[static_cast<std::size_t>(k)] - e));
        scale = std::max(scale, std::abs(e));
      }
      worst = std::max(worst, err / scale);
      if (prev > 0.0) factor = std::min(factor, prev / err);
      prev = err;
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "min refinement factor %.3g (need >= %.1f)", factor, min_factor);
  return {worst <= tol && factor >= min_factor,
          join("20 pairs, " + fmt("max relative error", worst, tol), buf)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_examples() {
  const fs::path root = fs::temp_directory_path() / "gfc_acceptance";
  fs::remove_all(root);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(GFC_PROBLEMS_DIR)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> bad;
  for (const fs::path& file : files) {
    std::string csv[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / ("run" + std::to_string(run));
      fs::create_directories(dir);
      std::ostringstream cmd;
      cmd << "OMP_NUM_THREADS=" << (run == 0 ? 1 : 4) << " '" << GFC_CLI_PATH << "' solve '"
          << file.string() << "' --out-dir '" << dir.string() << "' > /dev/null 2>&1";
      const int status = std::system(cmd.str().c_str());
      if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        bad.push_back(file.filename().string() + " exit " +
                      std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
      }
      csv[run] = slurp(dir / (file.stem().string() + ".solution.csv"));
    }
    if (csv[0].empty() || csv[0] != csv[1]) bad.push_back(file.filename().string() + " csv differs");
  }
  fs::remove_all(root);
  std::string detail = std::to_string(files.size()) + " examples";
  for (const auto& b : bad) detail += "; " + b;
  if (bad.empty()) detail += ", exit 0 and identical CSV with 1 and 4 threads";
  return {!files.empty() && bad.empty(), detail};
}

}  // namespace

int main() {
  run(1, "Sonine identities", sonine_identities);
  run(2, "fundamental theorems", fundamental_theorems);
  run(3, "null space", null_space);
  run(4, "operational relations", operational_relations);
  run(5, "single-term solver", single_term);
  run(6, "multi-term solver", multi_term);
  run(7, "oracle independence", oracle_independence);
  run(8, "CLI examples", cli_examples);
  return failures == 0 ? 0 : 1;
}
