#include <random>

#include "doctest.h"

#include "gaudin/superalgebra.hpp"

using namespace gaudin;

namespace {

HalfIndex ix(int doubled) { return HalfIndex{doubled}; }
AlgebraElement E(int r, int c, const Rational& k = 1) { return AlgebraElement::basis(ix(r), ix(c), k); }

AlgebraElement random_homogeneous(const IndexSet& idx, std::mt19937_64& rng, int parity) {
  const auto& ord = idx.ordered();
  std::uniform_int_distribution<int> pick(0, idx.size() - 1), coef(-3, 3);
  AlgebraElement x;
  for (int t = 0; t < 3; ++t) {
    HalfIndex a = ord[pick(rng)], b = ord[pick(rng)];
    if ((a.parity() ^ b.parity()) != parity) continue;
    x.add(BasisElement{a, b}, coef(rng));
  }
  return x;
}

std::vector<Algebra> algebras() {
  std::vector<Algebra> out;
  for (bool central : {false, true}) {
    out.push_back({IndexSet::glmn(1, 1), central});
    out.push_back({IndexSet::glmn(2, 1), central});
    out.push_back({IndexSet::glmn(1, 2), central});
    for (int k = 1; k <= 4; ++k) out.push_back({IndexSet::classical(0, k), central});
    out.push_back({IndexSet::classical(1, 2), central});
    out.push_back({IndexSet::super(1, 1, 1, 1), central});
  }
  return out;
}

}  // namespace

TEST_CASE("supercommutator examples") {
  Algebra a{IndexSet::glmn(1, 1), false};
  CHECK(supercommutator(a, E(2, 1), E(1, 2)) == E(2, 2) + E(1, 1));
  CHECK(supercommutator(a, E(2, 2), E(2, 2)).is_zero());
  Algebra c{IndexSet::glmn(1, 1), true};
  CHECK(cocycle(c, E(2, 1), E(1, 2)) == 0);
  CHECK(supercommutator(c, E(2, 1), E(1, 2)) == E(2, 2) + E(1, 1));
}

TEST_CASE("iota examples") {
  Algebra a{IndexSet::glmn(1, 1), true};
  CHECK(iota(a, E(2, 2)) == E(2, 2));
  CHECK(iota(a, AlgebraElement::k()) == AlgebraElement::k());
  Algebra b{IndexSet::classical(1, 1), true};
  // J = -E_{-1/2}; Str(J E_{-1/2,-1/2}) = -(-1) = 1 on an odd index
  CHECK(iota(b, E(-1, -1)) == E(-1, -1) + AlgebraElement::k());
  Algebra s{IndexSet::super(0, 1, 1, 1), true};
  CHECK(iota(s, E(-2, -2)) == E(-2, -2) - AlgebraElement::k());
  CHECK(iota_inverse(s, iota(s, E(-2, 1))) == E(-2, 1));
}

TEST_CASE("supertrace examples") {
  CHECK(supertrace(IndexSet::glmn(1, 1), Matrix::identity(2)) == 0);
  CHECK(supertrace(IndexSet::classical(0, 2), Matrix::identity(2)) == -2);
  CHECK(supertrace(IndexSet::glmn(2, 1), Matrix(3, 3)) == 0);
}

TEST_CASE("omega examples") {
  IndexSet idx = IndexSet::glmn(1, 1);
  CHECK(star_omega(idx, E(2, 1)) == E(1, 2));
  CHECK(star_omega(idx, AlgebraElement::k()) == AlgebraElement::k());
  CHECK(star_omega(idx, E(2, 1, Rational(3, 2))) == E(1, 2, Rational(3, 2)));
  IndexSet sup = IndexSet::super(0, 1, 1, 1);
  CHECK(star_omega(sup, E(-2, 2)) == E(2, -2, -1));
}

TEST_CASE("simple raising operators") {
  auto names = [](const IndexSet& idx) {
    std::vector<std::pair<int, int>> v;
    for (const auto& e : simple_raising_ops(idx)) v.push_back({e.row.doubled, e.col.doubled});
    return v;
  };
  CHECK(names(IndexSet::glmn(1, 1)) == std::vector<std::pair<int, int>>{{2, 1}});
  CHECK(names(IndexSet::glmn(2, 1)) == std::vector<std::pair<int, int>>{{2, 4}, {4, 1}});
  CHECK(names(IndexSet::classical(0, 2)) == std::vector<std::pair<int, int>>{{1, 3}});
}

TEST_CASE("structure identities on random homogeneous elements") {
  std::mt19937_64 rng(20261015);
  for (const Algebra& alg : algebras()) {
    CAPTURE(alg.indices.str());
    CAPTURE(alg.central);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int t = 0; t < 200; ++t) {
      int px = bit(rng), py = bit(rng), pz = bit(rng);
      AlgebraElement x = random_homogeneous(alg.indices, rng, px);
      AlgebraElement y = random_homogeneous(alg.indices, rng, py);
      AlgebraElement z = random_homogeneous(alg.indices, rng, pz);
      auto br = [&](const AlgebraElement& a, const AlgebraElement& b) { return supercommutator(alg, a, b); };
      auto sgn = [](int e) { return Rational(e % 2 ? -1 : 1); };
      // (-1)^{|x||z|}[x,[y,z]] + cyclic = 0
      AlgebraElement jac = br(x, br(y, z)) * sgn(px * pz) + br(y, br(z, x)) * sgn(py * px) + br(z, br(x, y)) * sgn(pz * py);
      CHECK(jac.is_zero());
      CHECK((br(x, y) + br(y, x) * sgn(px * py)).is_zero());
      Rational tau = cocycle(alg, x, y);
      CHECK(tau + sgn(px * py) * cocycle(alg, y, x) == 0);
      CHECK(sgn(px * pz) * cocycle(alg, x, br(y, z)) + sgn(py * px) * cocycle(alg, y, br(z, x)) +
                sgn(pz * py) * cocycle(alg, z, br(x, y)) ==
            0);
      CHECK(star_omega(alg.indices, star_omega(alg.indices, x)) == x);
      CHECK(star_omega(alg.indices, br(x, y)) == br(star_omega(alg.indices, y), star_omega(alg.indices, x)));
      Algebra plain{alg.indices, false};
      if (alg.central) {
        CHECK(iota(alg, supercommutator(plain, x, y)) == br(iota(alg, x), iota(alg, y)));
        CHECK(iota_inverse(alg, iota(alg, x)) == x);
      } else {
        CHECK(supertrace(alg.indices, to_matrix(alg.indices, br(x, y))) == 0);
      }
    }
  }
}
