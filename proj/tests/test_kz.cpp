#include <cmath>
#include <random>

#include "doctest.h"

#include "gaudin/errors.hpp"
#include "gaudin/kz.hpp"
#include "gaudin/verify.hpp"

using namespace gaudin;

namespace {

HalfIndex ix(int doubled) { return HalfIndex{doubled}; }
Weight eps(int doubled, long c = 1) { return Weight::epsilon(ix(doubled), c); }

ModulePtr share(WeightModule m) { return std::make_shared<const WeightModule>(std::move(m)); }

TensorSpace natural_power(const Algebra& alg, int ell) {
  return TensorSpace(std::vector<ModulePtr>(ell, share(natural_module(alg))));
}

struct Setup {
  WeightBlock block;
  QuadraticData q;
  SingularSpace sing;
  std::vector<CMat> raising;
};

Setup setup(const TensorSpace& t, const Weight& mu) {
  Setup s;
  s.block = make_block(t, mu);
  s.q = quadratic_data(t, casimir(t.algebra()), s.block);
  s.sing = singular_space(t, mu);
  for (const auto& e : simple_raising_ops(t.algebra().indices)) {
    WeightBlock to = make_block(t, mu + root_of(e));
    if (to.dim() == 0) continue;
    s.raising.push_back(to_complex(diagonal_action(t, t.algebra(), e, s.block, to)));
  }
  return s;
}

}  // namespace

TEST_CASE("exact flatness") {
  for (const auto& alg : {Algebra{IndexSet::glmn(1, 1), false}, Algebra{IndexSet::glmn(2, 1), false}}) {
    TensorSpace t = natural_power(alg, 3);
    CasimirTensor om = casimir(alg);
    WeightBlock full = full_block(t);
    CHECK(flatness_residual_exact(t, om, full, {0, 1, 3}, 1) == 0);
    CHECK(flatness_residual_exact(t, om, full, {Rational(1, 2), -2, 5}, Rational(2)) == 0);
  }
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 2);
  CHECK_THROWS_AS(flatness_residual_exact(t, casimir(a), full_block(t), {1, 1}, 1), PreconditionError);
}

TEST_CASE("numeric flatness") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 3);
  KZSystem sys = make_kz(quadratic_data(t, casimir(a), full_block(t)), 1.0);
  CHECK(flatness_residual_numeric(sys, {cplx(0.1, 0.3), cplx(-1, 0.2), cplx(2, -1)}) <= 1e-10);
}

TEST_CASE("scalar singular system against the power solution") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 2);
  Weight mu = eps(2) + eps(1);
  SingularSpace sing = singular_space(t, mu);
  REQUIRE(sing.dim() == 1);
  QuadraticData q = quadratic_data(t, casimir(a), sing.block);
  for (cplx kappa : {cplx(1), cplx(2)}) {
    KZSystem sys = make_kz(q, kappa, &sing.basis);
    REQUIRE(sys.dim == 1);
    CHECK(std::abs(sys.omega.at({0, 1})(0, 0) - cplx(-1)) < 1e-15);
    // z1 goes once around z2 = 0 plus a bit, forcing the branch past the principal cut
    std::vector<Point> path;
    for (int k = 0; k <= 40; ++k) path.push_back({std::polar(1.0 + 0.5 * k / 40, 2.4 * M_PI * k / 40), 0.0});
    CVec psi0(1);
    psi0(0) = cplx(0.7, -0.2);
    const double tol = 1e-10;
    PathSolution sol = integrate_path(sys, path, psi0, tol);
    // Independent branch: accumulate principal args between close points.
    double worst = 0;
    for (const auto& s : sol.samples) {
      double arg = 0;
      cplx prev = path[0][0];
      for (int k = 1; k <= 2000; ++k) {
        cplx cur = point_on_path(path, s.t * k / 2000)[0];
        arg += std::arg(cur / prev);
        prev = cur;
      }
      cplx w = s.z[0] - s.z[1];
      cplx logratio(std::log(std::abs(w) / std::abs(path[0][0])), arg);
      cplx exact = psi0(0) * std::exp(-logratio / kappa);
      worst = std::max(worst, std::abs(s.psi(0) - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("constant path, linearity, refusal near diagonals") {
  Algebra a{IndexSet::glmn(2, 1), false};
  TensorSpace t = natural_power(a, 3);
  Setup s = setup(t, eps(4) + eps(2) + eps(1));
  KZSystem sys = make_kz(s.q, 1.0);
  std::mt19937_64 rng(3);
  CVec v = random_vector(sys.dim, rng), w = random_vector(sys.dim, rng);
  Point z0{0.0, 1.0, cplx(0, 2)};
  PathSolution still = integrate_path(sys, {z0, z0}, v, 1e-10);
  CHECK((still.samples.back().psi - v).norm() == 0);
  std::vector<Point> path{z0, {cplx(0.5, 1), 1.0, cplx(-1, 2)}, {cplx(0.2, -0.3), cplx(2, 1), cplx(-1, 0.5)}};
  const double tol = 1e-10;
  CMat F = transport(sys, path, tol);
  CVec combo = integrate_path(sys, path, v * cplx(2, 1) - w, tol).samples.back().psi;
  CHECK((F * (v * cplx(2, 1) - w) - combo).norm() / combo.norm() <= 10 * tol * 10);
  CHECK(solution_rank(F) == sys.dim);
  CHECK_THROWS_AS(integrate_path(sys, {z0, {1.0, 1.0005, cplx(0, 2)}}, v, tol), PreconditionError);
  // crossing a diagonal in the middle of a segment
  CHECK_THROWS_AS(integrate_path(sys, {{0.0, 1.0, 5.0}, {2.0, 1.0, 5.0}}, v, tol), PreconditionError);
  CHECK(path_clearance({{0.0, 1.0, 5.0}, {2.0, 1.0, 5.0}}) < 1e-12);
}

TEST_CASE("singular preservation") {
  Algebra a{IndexSet::glmn(2, 1), false};
  TensorSpace t = natural_power(a, 3);
  Weight mu = eps(4) + eps(2) + eps(1);
  Setup s = setup(t, mu);
  REQUIRE(s.sing.dim() >= 1);
  REQUIRE(!s.raising.empty());
  KZSystem sys = make_kz(s.q, 2.0);
  std::mt19937_64 seed(5);
  CVec psi0 = to_complex(s.sing.basis) * random_vector(s.sing.dim(), seed);
  std::vector<Point> path{{0.0, 1.0, 3.0}, {cplx(0.5, 1), 1.0, 3.0}, {cplx(2, 0.5), cplx(0, -1), 3.0}};
  PathSolution sol = integrate_path(sys, path, psi0, 1e-10);
  CHECK(singular_preservation(sol, s.raising) <= 1e-8);
  PathSolution zero = integrate_path(sys, path, CVec::Zero(sys.dim), 1e-10);
  CHECK(singular_preservation(zero, s.raising) == 0);
  // control: a generic start is visibly non-singular
  std::mt19937_64 rng(9);
  PathSolution ctl = integrate_path(sys, path, random_vector(sys.dim, rng), 1e-10);
  CHECK(singular_preservation(ctl, s.raising) > 1e-2);
  // the singular-restricted system has a full-rank fundamental solution of the singular dimension
  KZSystem restricted = make_kz(s.q, 2.0, &s.sing.basis);
  CHECK(restricted.dim == s.sing.dim());
  CHECK(solution_rank(transport(restricted, path, 1e-10)) == s.sing.dim());
}

TEST_CASE("monodromy of the scalar system") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 2);
  SingularSpace sing = singular_space(t, eps(2) + eps(1));
  QuadraticData q = quadratic_data(t, casimir(a), sing.block);
  for (double k : {1.0, 2.0}) {
    KZSystem sys = make_kz(q, k, &sing.basis);
    std::vector<Point> loop;
    for (int j = 0; j <= 32; ++j) loop.push_back({std::polar(1.0, 2 * M_PI * j / 32), 0.0});
    loop.back() = loop.front();
    const double tol = 1e-10;
    CMat M = monodromy(sys, loop, tol);
    cplx expect = std::exp(cplx(0, -2 * M_PI / k));
    CHECK(std::abs(M(0, 0) - expect) <= 1e-8);
    std::vector<Point> rev(loop.rbegin(), loop.rend());
    CMat R = monodromy(sys, rev, tol);
    CHECK(std::abs(M(0, 0) * R(0, 0) - 1.0) <= 10 * tol * 10);
    // a loop that does not wind around the diagonal
    std::vector<Point> far;
    for (int j = 0; j <= 32; ++j) far.push_back({cplx(5, 0) + std::polar(1.0, 2 * M_PI * j / 32), 0.0});
    far.back() = far.front();
    CHECK(std::abs(monodromy(sys, far, tol)(0, 0) - 1.0) <= 1e-8);
    CMat id = monodromy(sys, {loop[0], loop[0]}, tol);
    CHECK(std::abs(id(0, 0) - 1.0) == 0);
  }
  KZSystem sys = make_kz(q, 1.0, &sing.basis);
  CHECK_THROWS_AS(monodromy(sys, {{1.0, 0.0}, {2.0, 0.0}}, 1e-8), PreconditionError);
}

TEST_CASE("monodromy inverse on a matrix system") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 3);
  Setup s = setup(t, eps(2, 2) + eps(1));
  KZSystem sys = make_kz(s.q, 2.0);
  std::vector<Point> loop;
  for (int j = 0; j <= 24; ++j) loop.push_back({std::polar(1.0, 2 * M_PI * j / 24), 0.0, 4.0});
  loop.back() = loop.front();
  std::vector<Point> rev(loop.rbegin(), loop.rend());
  const double tol = 1e-10;
  CMat M = monodromy(sys, loop, tol), R = monodromy(sys, rev, tol);
  CHECK((M * R - CMat::Identity(sys.dim, sys.dim)).norm() <= 1e-8);
}

TEST_CASE("gauge factor") {
  PathSolution sol;
  sol.path = {{0.0, 1.0}, {cplx(0, 2), 1.0}};
  sol.samples = {{0, sol.path[0], CVec::Ones(1)}, {1, sol.path[1], CVec::Ones(1)}};
  std::vector<Rational> d{1, 1};
  // p=1, q=0, d=(1,1), kappa=1: c = q - p gives (z1 - z2)^{-1}
  auto f = gauge_factors(sol, -1, d, 1.0);
  cplx expect = std::pow((sol.path[1][0] - sol.path[1][1]) / (sol.path[0][0] - sol.path[0][1]), -1.0);
  CHECK(std::abs(f[1] - expect) < 1e-14);
  auto id = gauge_factors(sol, 0, d, 1.0);
  CHECK(id[1] == cplx(1));
}

TEST_CASE("gauge transform relates plain and central conventions") {
  IndexSet idx = IndexSet::super(0, 1, 1, 1);
  Algebra plain{idx, false}, central{idx, true};
  std::vector<std::pair<Weight, int>> tops{{eps(-2, -1), 1}, {eps(-2, -2), 2}};
  std::vector<ModulePtr> factors;
  std::vector<Rational> levels;
  Weight mu;
  for (const auto& [w, d] : tops) {
    factors.push_back(share(irreducible_truncated(central, w, d, 3)));
    levels.push_back(d);
    mu = mu + w;
  }
  mu = mu - (eps(-2) - eps(2));
  TensorSpace t(factors);
  WeightBlock b = make_block(t, mu);
  REQUIRE(b.dim() == 2);
  for (cplx kappa : {cplx(1), cplx(2)}) {
    KZSystem sp = make_kz(quadratic_data(t, casimir(plain), b), kappa);
    KZSystem sc = make_kz(quadratic_data(t, casimir(central), b), kappa);
    std::vector<Point> path{{0.0, 1.0}, {cplx(2, 1), 1.0}, {cplx(1, 2), cplx(0, -1)}, {cplx(-1, 0), 1.0}};
    std::mt19937_64 rng(11);
    CVec psi0 = random_vector(2, rng);
    const double tol = 1e-10;
    PathSolution ps = integrate_path(sp, path, psi0, tol);
    PathSolution pc = integrate_path(sc, path, psi0, tol);
    double c = idx.q() - idx.p();
    PathSolution moved = gauge_transform(ps, c, levels, kappa);
    CVec a = moved.samples.back().psi, e = pc.samples.back().psi;
    CHECK((a - e).norm() / e.norm() <= 1e-7);
    PathSolution back = gauge_transform(moved, -c, levels, kappa);
    double worst = 0;
    for (size_t k = 0; k < ps.samples.size(); ++k)
      worst = std::max(worst, (back.samples[k].psi - ps.samples[k].psi).norm() / ps.samples[k].psi.norm());
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("truncation stability of classical systems") {
  std::mt19937_64 rng(2);
  std::vector<Partition> las{Partition({1}), Partition({1, 1}), Partition({2})};
  std::vector<ModulePtr> big, small;
  for (const auto& la : las) {
    big.push_back(share(classical_module(la, 3)));
    small.push_back(share(classical_module(la, 2)));
  }
  Weight mu = small[0]->top + small[1]->top + small[2]->top;
  // lower once inside the band so the block is not one-dimensional
  const auto& ord = small[0]->algebra.indices.ordered();
  mu = mu - (Weight::epsilon(ord[0]) - Weight::epsilon(ord[1]));
  std::vector<Point> path{{0.0, 1.0, 3.0}, {cplx(0.5, 1), 1.0, 3.0}, {cplx(2, 0.5), cplx(0, -1), 3.0}};
  for (cplx kappa : {cplx(1), cplx(2)}) {
    KZTruncationReport r = kz_truncation_stability(big, small, mu, path, kappa, 1e-10, rng);
    CHECK(r.dim_small == r.dim_big);
    CHECK(r.dim_small >= 2);
    CHECK(r.intertwines);
    CHECK(r.deviation <= 1e-7);
  }
}

TEST_CASE("local log-derivative matches joint eigenvalues") {
  std::mt19937_64 rng(5);
  CheckResult r = check_kz_eigen({1, 1}, 3, 1e-8, rng);
  CHECK(r.passed);
  CHECK(r.detail["worst"].get<double>() < 1e-7);
  CHECK(r.detail["weights"].size() == 6);
}
