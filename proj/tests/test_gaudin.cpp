#include <random>

#include "doctest.h"

#include "gaudin/errors.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/lax.hpp"

using namespace gaudin;

namespace {

HalfIndex ix(int doubled) { return HalfIndex{doubled}; }
Weight eps(int doubled, long c = 1) { return Weight::epsilon(ix(doubled), c); }
BasisElement E(int r, int c) { return BasisElement{ix(r), ix(c)}; }

TensorSpace natural_power(const Algebra& alg, int ell) {
  auto nat = std::make_shared<const WeightModule>(natural_module(alg));
  return TensorSpace(std::vector<ModulePtr>(ell, nat));
}

std::vector<Rational> Z(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

// Term-by-term evaluation of the cubic Hamiltonians from full-space slot matrices.
Matrix cubic_oracle(const TensorSpace& t, const std::vector<Rational>& z, int i, HamKind kind) {
  const auto& ord = t.algebra().indices.ordered();
  const int ell = t.length(), D = static_cast<int>(t.total_dim());
  Matrix h(D, D);
  for (HalfIndex r : ord)
    for (HalfIndex s : ord)
      for (HalfIndex u : ord) {
        // (-1)^{2(s+t)(2(r+t)+1)} with doubled indices
        long e = (s.doubled + u.doubled) * (r.doubled + u.doubled + 1);
        Rational sg = e % 2 ? -1 : 1;
        auto X = [&](int slot, HalfIndex a, HalfIndex b) { return slot_matrix(t, slot, BasisElement{a, b}); };
        for (int j = 0; j < ell; ++j) {
          if (j == i) continue;
          Rational dij = z[i] - z[j];
          if (kind == HamKind::cubicD) {
            h += X(j, r, s) * X(i, u, r) * X(i, s, u) * (sg / dij);
            continue;
          }
          for (int k = 0; k < ell; ++k)
            if (k != i && k != j) h += X(i, r, s) * X(j, u, r) * X(k, s, u) * (sg / (dij * (z[i] - z[k])));
          h += (X(i, r, s) * X(j, u, r) * X(j, s, u) - X(j, r, s) * X(i, u, r) * X(i, s, u)) * (sg / (dij * dij));
        }
      }
  return h;
}

}  // namespace

TEST_CASE("Casimir term lists") {
  CasimirTensor om = casimir({IndexSet::glmn(1, 1), false});
  REQUIRE(om.terms.size() == 4);
  int plus = 0, minus = 0;
  for (const auto& t : om.terms) (t.coeff > 0 ? plus : minus)++;
  CHECK(plus == 2);
  CHECK(minus == 2);
  CasimirTensor c1 = casimir({IndexSet::classical(0, 1), false});
  REQUIRE(c1.terms.size() == 1);
  CHECK(c1.terms[0].coeff == -1);
  CHECK(casimir({IndexSet::glmn(2, 2), true}).terms.size() == 16);
  CHECK(casimir({IndexSet::super(0, 1, 1, 1), true}).terms.size() == 9 + 2);
}

TEST_CASE("pair operator examples") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 2);
  CasimirTensor om = casimir(a);
  Key v11 = t.encode({0, 0}), v1h = t.encode({0, 1}), vh1 = t.encode({1, 0}), vhh = t.encode({1, 1});
  CHECK(apply_pair_op(t, om, 0, 1, {{v11, 1}}) == SparseVec{{v11, 1}});
  CHECK(apply_pair_op(t, om, 0, 1, {{v1h, 1}}) == SparseVec{{vh1, 1}});
  CHECK(apply_pair_op(t, om, 0, 1, {{vh1, 1}}) == SparseVec{{v1h, 1}});
  CHECK(apply_pair_op(t, om, 0, 1, {{vhh, 1}}) == SparseVec{{vhh, -1}});
  CHECK_THROWS_AS(apply_pair_op(t, om, 0, 2, {{v11, 1}}), PreconditionError);
}

TEST_CASE("quadratic Hamiltonians on two natural factors") {
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t = natural_power(a, 2);
  WeightBlock b = make_block(t, eps(2) + eps(1));
  SingularSpace s = singular_space(t, b.mu);
  for (auto z : {Z({0, 1}), Z({3, -2})}) {
    HamiltonianFamily f = build_family(t, a, b, &s.basis, z, HamKind::quadratic);
    CHECK(f.matrices[0](0, 0) == -1 / (z[0] - z[1]));
    CHECK((f.matrices[0] + f.matrices[1]).is_zero());
  }
  WeightBlock top = make_block(t, eps(2, 2));
  HamiltonianFamily f = build_family(t, a, top, nullptr, Z({0, 1}), HamKind::quadratic);
  CHECK(f.matrices[0](0, 0) == -1);
  CHECK_THROWS_AS(build_family(t, a, top, nullptr, Z({1, 1}), HamKind::quadratic), PreconditionError);
}

TEST_CASE("commutativity, invariance and sum rule") {
  std::mt19937_64 rng(11);
  for (auto [m, n, ell] : std::vector<std::tuple<int, int, int>>{{1, 1, 3}, {2, 1, 3}, {1, 1, 4}}) {
    Algebra a{IndexSet::glmn(m, n), false};
    TensorSpace t = natural_power(a, ell);
    WeightBlock full = full_block(t);
    QuadraticData q = quadratic_data(t, casimir(a), full);
    std::vector<Rational> z = sample_points(ell, rng);
    std::vector<Matrix> h;
    Matrix sum;
    for (int i = 0; i < ell; ++i) {
      h.push_back(quadratic_hamiltonian(q, z, i));
      sum = i ? sum + h.back() : h.back();
    }
    CHECK(commutator_residual(h, h) == 0);
    CHECK(sum.is_zero());
    std::vector<Matrix> gens;
    for (const auto& e : all_basis(a.indices)) gens.push_back(diagonal_action(t, a, e, full, full));
    CHECK(commutator_residual(h, gens) == 0);
    if (m == 1 && ell == 3) {
      CubicData c = cubic_data(t, full);
      std::vector<Matrix> cc, dd;
      for (int i = 0; i < ell; ++i) {
        cc.push_back(cubic_hamiltonian(c, z, i, HamKind::cubicC));
        dd.push_back(cubic_hamiltonian(c, z, i, HamKind::cubicD));
        CHECK(cc.back() == cubic_oracle(t, z, i, HamKind::cubicC));
        CHECK(dd.back() == cubic_oracle(t, z, i, HamKind::cubicD));
      }
      CHECK(commutator_residual(cc, gens) == 0);
      CHECK(commutator_residual(dd, gens) == 0);
      CHECK(commutator_residual(cc, h) == 0);
      CHECK(commutator_residual(dd, h) == 0);
      CHECK(commutator_residual(cc, dd) == 0);
      CHECK(commutator_residual(cc, cc) == 0);
      CHECK(commutator_residual(dd, dd) == 0);
    }
  }
}

TEST_CASE("cubic sign") {
  // classical indices are all odd: the exponent is always even
  for (int r : {1, 3, 5})
    for (int s : {1, 3, 5})
      for (int u : {1, 3, 5}) CHECK(cubic_sign(ix(r), ix(s), ix(u)) == 1);
  CHECK(cubic_sign(ix(2), ix(2), ix(1)) == 1);   // s+t odd, r+t odd
  CHECK(cubic_sign(ix(1), ix(2), ix(1)) == -1);  // s+t odd, r+t even
  CHECK_THROWS_AS(cubic_data(TensorSpace({std::make_shared<const WeightModule>(natural_module({IndexSet::super(0, 1, 1, 1), false}))}),
                             WeightBlock{}),
                  PreconditionError);
}

TEST_CASE("partial fraction products agree with evaluation") {
  std::vector<Rational> z = {0, 1, Rational(5, 2)};
  Matrix a = Matrix::identity(2), b(2, 2);
  b(0, 1) = 3;
  b(1, 0) = Rational(-1, 2);
  b(1, 1) = 2;
  std::vector<PartialFraction> fs = {PartialFraction::pole(z, 0, 1, a) + PartialFraction::pole(z, 1, 2, b),
                                     PartialFraction::pole(z, 1, 1, b) + PartialFraction::constant(z, a),
                                     PartialFraction::pole(z, 2, 1, b * b) + PartialFraction::pole(z, 0, 1, b)};
  for (const auto& f : fs)
    for (const auto& g : fs) {
      if (f.max_order() + g.max_order() > 3) continue;  // order bound
      PartialFraction fg = f * g;
      for (Rational u : {Rational(7, 3), Rational(-4), Rational(1, 5)}) CHECK(fg.evaluate(u) == f.evaluate(u) * g.evaluate(u));
    }
  // derivative against a difference-free identity: d/du (u-1)^{-2} = -2 (u-1)^{-3}
  CHECK(PartialFraction::pole(z, 1, 2, a).derivative() == PartialFraction::pole(z, 1, 3, a * Rational(-2)));
}

TEST_CASE("Lax supertrace expansion matches closed forms") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    Algebra a{IndexSet::glmn(m, n), false};
    TensorSpace t = natural_power(a, 2);
    for (auto z : {Z({0, 1}), Z({2, -3})}) {
      CAPTURE(m);
      auto s1 = lax_str_expansion(t, z, 1);
      CHECK(s1[1] == lax_closed_form(t, z, 1));
      auto s2 = lax_str_expansion(t, z, 2);
      CHECK(s2[2] == lax_closed_form(t, z, 2));
      auto s3 = lax_str_expansion(t, z, 3);
      CHECK(s3[3] == lax_closed_form(t, z, 3));
    }
  }
}

TEST_CASE("joint spectra and cyclic vectors") {
  std::mt19937_64 rng(5);
  Algebra a{IndexSet::glmn(1, 1), false};
  TensorSpace t2 = natural_power(a, 2);
  WeightBlock b = make_block(t2, eps(2) + eps(1));
  SingularSpace s = singular_space(t2, b.mu);
  HamiltonianFamily f = build_family(t2, a, b, &s.basis, Z({0, 1}), HamKind::quadratic);
  JointSpectrum js = joint_diagonalize(f.matrices, 1e-10, rng);
  CHECK(js.diagonalizable);
  REQUIRE(js.spectra[0].size() == 1);
  CHECK(js.spectra[0][0].value.real() == doctest::Approx(1.0));
  TensorSpace t3 = natural_power(a, 3);
  for (const Partition& la : partitions_of(3)) {
    if (!hook_ok(la, 1, 1)) continue;
    Weight mu = weight_super(la, Partition{}, 0, 0, 1, 0, 1);
    WeightBlock b3 = make_block(t3, mu);
    SingularSpace s3 = singular_space(t3, mu);
    HamiltonianFamily f3 = build_family(t3, a, b3, &s3.basis, sample_points(3, rng), HamKind::quadratic);
    JointSpectrum j3 = joint_diagonalize(f3.matrices, 1e-10, rng);
    CHECK(j3.diagonalizable);
    for (const auto& row : j3.joint) {
      std::complex<double> sum = 0;
      for (auto v : row) sum += v;
      CHECK(std::abs(sum) < 1e-9);
    }
    CHECK(cyclic_vector_test(f3.matrices, 3, rng).cyclic);
  }
}
