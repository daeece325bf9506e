#include "doctest.h"

#include "gaudin/errors.hpp"
#include "gaudin/module.hpp"

using namespace gaudin;

namespace {

HalfIndex ix(int doubled) { return HalfIndex{doubled}; }
Weight eps(int doubled, long c = 1) { return Weight::epsilon(ix(doubled), c); }
BasisElement E(int r, int c) { return BasisElement{ix(r), ix(c)}; }

std::map<Weight, int> dims_of(const WeightModule& m) { return m.dims(); }

// matrix([x,y]) = [matrix(x), matrix(y)] for all generator pairs
void check_relations(const WeightModule& mod) {
  Algebra plain{mod.algebra.indices, false};
  auto basis = all_basis(mod.algebra.indices);
  const int dim = mod.dim();
  for (const auto& x : basis)
    for (const auto& y : basis) {
      SparseMatrix lhs(dim);
      AlgebraElement br = supercommutator(plain, AlgebraElement::basis(x.row, x.col), AlgebraElement::basis(y.row, y.col));
      for (const auto& [e, c] : br.terms()) {
        const SparseMatrix& m = mod.matrix(e);
        for (int j = 0; j < dim; ++j) axpy(lhs[j], c, m[j]);
      }
      SparseMatrix rhs = sparse_supercommutator(mod.matrix(x), x.parity(), mod.matrix(y), y.parity());
      bool ok = true;
      for (int j = 0; j < dim; ++j) {
        // rows above the realized band are not trustworthy in truncated modules
        if (!mod.complete() && mod.height_of(j) + 2 * mod.algebra.indices.size() > mod.depth) continue;
        SparseVec d = lhs[j];
        axpy(d, -1, rhs[j]);
        if (!d.empty()) ok = false;
      }
      CAPTURE(x.row.str() + "," + x.col.str() + " / " + y.row.str() + "," + y.col.str());
      CHECK(ok);
    }
}

void check_against_oracle(const WeightModule& mod, const Partition& la, int m, int n) {
  long total = 0;
  for (const auto& [w, d] : mod.dims()) {
    CHECK(d == hook_multiplicity_oracle(la, m, n, w));
    total += d;
  }
  CHECK(total == mod.dim());
}

}  // namespace

TEST_CASE("natural modules") {
  CHECK(dims_of(natural_module({IndexSet::glmn(1, 1), false})) == std::map<Weight, int>{{eps(2), 1}, {eps(1), 1}});
  CHECK(natural_module({IndexSet::glmn(2, 1), false}).num_weights() == 3);
  CHECK(dims_of(natural_module({IndexSet::classical(0, 2), false})) == std::map<Weight, int>{{eps(1), 1}, {eps(3), 1}});
  check_relations(natural_module({IndexSet::glmn(2, 1), false}));
}

TEST_CASE("tensor products with Koszul signs") {
  Algebra a{IndexSet::glmn(1, 1), false};
  auto nat = std::make_shared<const WeightModule>(natural_module(a));
  TensorSpace t({nat, nat});
  CHECK(t.weight_basis(eps(2, 2)).size() == 1);
  CHECK(t.weight_basis(eps(2) + eps(1)).size() == 2);
  CHECK(t.weight_basis(eps(1, 2)).size() == 1);
  // basis of the natural module: 0 = v_1, 1 = v_1/2
  SparseVec v{{t.encode({1, 0}), 1}};
  CHECK(t.apply(1, E(1, 2), v) == SparseVec{{t.encode({1, 1}), -1}});
  SparseVec w{{t.encode({0, 0}), 1}};
  CHECK(t.apply(0, E(1, 2), w) == SparseVec{{t.encode({1, 0}), 1}});
  WeightModule tm = tensor({nat, nat, nat});
  CHECK(tm.dim() == 8);
  check_relations(tm);
}

TEST_CASE("truncated Verma modules") {
  Algebra a{IndexSet::glmn(1, 1), false};
  CHECK(dims_of(verma_truncated(a, eps(2), 0, 1)) == std::map<Weight, int>{{eps(2), 1}, {eps(1), 1}});
  CHECK(verma_truncated(a, eps(2, 3) + eps(1, -2), 0, 0).dim() == 1);
  Algebra b{IndexSet::glmn(2, 1), false};
  WeightModule v = verma_truncated(b, eps(2, 2), 0, 1);
  // order 1 < 2 < 1/2: height-one lowering by E_{2,1} and E_{1/2,2}
  CHECK(dims_of(v) == std::map<Weight, int>{{eps(2, 2), 1}, {eps(2) + eps(4), 1}, {eps(2, 2) - eps(4) + eps(1), 1}});
  WeightModule v2 = verma_truncated(b, eps(2, 2), 0, 2);
  // E_{1/2,1} and E_{1/2,2}E_{2,1}
  CHECK(v2.dims().at(eps(2) + eps(1)) == 2);
  CHECK(v2.dims().at(eps(4, 2)) == 1);
  CHECK(v2.dims().count(eps(2, 2) - eps(4, 2) + eps(1, 2)) == 0);  // odd square vanishes
  WeightModule deep = verma_truncated(b, eps(2, 2) + eps(4), 0, 6);
  check_relations(deep);
  WeightModule sv = verma_truncated({IndexSet::super(1, 1, 1, 1), false}, eps(-2, -1) + eps(2), 0, 6);
  check_relations(sv);
}

TEST_CASE("Verma Gram rank equals irreducible multiplicity") {
  struct Case {
    Algebra alg;
    Weight xi;
    Rational level;
  };
  std::vector<Case> cases = {
      {{IndexSet::glmn(1, 1), false}, eps(2) + eps(1), 0},
      {{IndexSet::glmn(2, 1), false}, eps(2, 2) + eps(4), 0},
      {{IndexSet::glmn(1, 2), false}, eps(2, 2) + eps(1), 0},
      {{IndexSet::classical(0, 3), false}, eps(1, 2) + eps(3), 0},
      {{IndexSet::super(0, 1, 1, 1), false}, eps(-2, -2), 1},
      {{IndexSet::super(0, 1, 1, 1), false}, eps(2) - eps(-2), 1},
  };
  const int D = 4;
  for (const auto& c : cases) {
    CAPTURE(c.xi.str());
    WeightModule v = verma_truncated(c.alg, c.xi, c.level, D);
    WeightModule l = irreducible_truncated(c.alg, c.xi, c.level, D);
    for (int wi = 0; wi < v.num_weights(); ++wi) {
      int want = rank(verma_gram(v, wi));
      int li = l.weight_index(v.weights[wi]);
      int got = li < 0 ? 0 : l.weight_dim(li);
      CAPTURE(v.weights[wi].str());
      CHECK(got == want);
    }
  }
}

TEST_CASE("irreducible quotients") {
  Algebra a{IndexSet::glmn(1, 1), false};
  CHECK(dims_of(irreducible_truncated(a, eps(2) + eps(1), 0, 2)) == std::map<Weight, int>{{eps(2) + eps(1), 1}, {eps(1, 2), 1}});
  CHECK(dims_of(irreducible_truncated(a, eps(2, 2), 0, 2)) == std::map<Weight, int>{{eps(2, 2), 1}, {eps(2) + eps(1), 1}});
  Algebra c{IndexSet::classical(0, 2), false};
  CHECK(dims_of(irreducible_truncated(c, eps(1, 2), 0, 2)) ==
        std::map<Weight, int>{{eps(1, 2), 1}, {eps(1) + eps(3), 1}, {eps(3, 2), 1}});
  CHECK_THROWS_AS(irreducible_truncated(c, eps(3, 2), 0, 2), PreconditionError);
  WeightModule l = irreducible_truncated({IndexSet::glmn(2, 2), false}, eps(2, 2) + eps(4) + eps(1), 0, -1);
  check_relations(l);
  check_against_oracle(l, Partition({2, 1, 1}), 2, 2);
}

TEST_CASE("polynomial modules") {
  CHECK(dims_of(polynomial_module(Partition({1}), 1, 1)) == dims_of(natural_module({IndexSet::glmn(1, 1), false})));
  CHECK(dims_of(polynomial_module(Partition({2}), 1, 1)) == std::map<Weight, int>{{eps(2, 2), 1}, {eps(2) + eps(1), 1}});
  CHECK(dims_of(polynomial_module(Partition({1, 1}), 1, 1)) == std::map<Weight, int>{{eps(2) + eps(1), 1}, {eps(1, 2), 1}});
  CHECK_THROWS_AS(polynomial_module(Partition({2, 2}), 1, 1), PreconditionError);
  WeightModule p = polynomial_module(Partition({2, 1}), 2, 1);
  check_relations(p);
  check_against_oracle(p, Partition({2, 1}), 2, 1);
}

TEST_CASE("singular spaces") {
  Algebra a{IndexSet::glmn(1, 1), false};
  auto nat = std::make_shared<const WeightModule>(natural_module(a));
  TensorSpace t({nat, nat});
  SingularSpace s = singular_space(t, eps(2) + eps(1));
  REQUIRE(s.dim() == 1);
  // proportional to v1 (x) v1/2 - v1/2 (x) v1
  Rational x = s.basis(s.block.index.at(t.encode({0, 1})), 0), y = s.basis(s.block.index.at(t.encode({1, 0})), 0);
  CHECK(x == -y);
  CHECK(x != 0);
  CHECK(singular_space(t, eps(2, 2)).dim() == 1);
  CHECK(singular_space(t, eps(2, 5)).dim() == 0);
  Algebra c{IndexSet::classical(0, 2), false};
  auto cn = std::make_shared<const WeightModule>(natural_module(c));
  CHECK(singular_space(TensorSpace({cn, cn}), eps(1, 2)).dim() == 1);
}

TEST_CASE("complete reducibility accounting") {
  for (auto [m, n, ell] : std::vector<std::tuple<int, int, int>>{{1, 1, 3}, {2, 1, 3}, {1, 1, 4}}) {
    Algebra a{IndexSet::glmn(m, n), false};
    auto nat = std::make_shared<const WeightModule>(natural_module(a));
    TensorSpace t(std::vector<ModulePtr>(ell, nat));
    long total = 0;
    for (const Partition& la : partitions_of(ell)) {
      if (!hook_ok(la, m, n)) continue;
      Weight mu = weight_super(la, Partition{}, 0, 0, m, 0, n);
      total += static_cast<long>(singular_space(t, mu).dim()) * polynomial_module(la, m, n).dim();
    }
    CHECK(total == t.total_dim());
  }
}

TEST_CASE("band restriction") {
  Algebra c3{IndexSet::classical(0, 3), false};
  WeightModule big = irreducible_truncated(c3, eps(1, 2), 0, -1);
  WeightModule r = restrict_to_band(big, IndexSet::classical(0, 2));
  WeightModule small = irreducible_truncated({IndexSet::classical(0, 2), false}, eps(1, 2), 0, -1);
  CHECK(r.dims() == small.dims());
  WeightModule same = restrict_to_band(big, IndexSet::classical(0, 3));
  CHECK(same.dims() == big.dims());
  WeightModule zero = restrict_to_band(irreducible_truncated(c3, eps(1) + eps(3) + eps(5), 0, -1), IndexSet::classical(0, 2));
  CHECK(zero.dim() == 0);
}
