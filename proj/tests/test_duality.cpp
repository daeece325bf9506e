#include <random>

#include "doctest.h"

#include "gaudin/duality.hpp"
#include "gaudin/errors.hpp"

using namespace gaudin;

namespace {

HalfIndex ix(int doubled) { return HalfIndex{doubled}; }
Weight eps(int doubled, long c = 1) { return Weight::epsilon(ix(doubled), c); }
Partition P(std::vector<int> v) { return Partition(std::move(v)); }
std::vector<Rational> Z(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

// All lists of `ell` nonempty partitions with total size at most `max_total`.
void lists(int ell, int max_total, std::vector<Partition>& cur, std::vector<std::vector<Partition>>& out) {
  if (static_cast<int>(cur.size()) == ell) {
    out.push_back(cur);
    return;
  }
  int used = 0;
  for (const auto& p : cur) used += p.size();
  for (int s = 1; used + s + (ell - static_cast<int>(cur.size()) - 1) <= max_total; ++s)
    for (const auto& la : partitions_of(s)) {
      cur.push_back(la);
      lists(ell, max_total, cur, out);
      cur.pop_back();
    }
}

}  // namespace

TEST_CASE("setup examples") {
  DualitySetup a = build_setup({P({1}), P({1})}, 1, 1, P({1, 1}));
  CHECK(a.k == 2);
  CHECK(a.super_weight == eps(2) + eps(1));
  CHECK(a.classical_weight == eps(1, 2));
  CHECK(a.super_modules[0]->dim() == 2);
  CHECK(a.classical_modules[0]->dim() == 2);
  DualitySetup b = build_setup({P({1}), P({1})}, 1, 1, P({2}));
  CHECK(b.classical_weight == eps(1) + eps(3));
  DualitySetup c = build_setup({P({2}), P({1})}, 1, 1, P({2, 1}));
  CHECK(c.classical_modules[0]->top == eps(1) + eps(3));
  CHECK(c.classical_modules[1]->top == eps(1));
  CHECK(c.classical_weight == eps(1, 2) + eps(3));
  CHECK_THROWS_AS(build_setup({P({2, 2}), P({1})}, 1, 1, P({3, 2})), PreconditionError);
  CHECK_THROWS_AS(build_setup({P({1}), P({1})}, 1, 1, P({3})), PreconditionError);
}

TEST_CASE("one-dimensional singular spaces") {
  DualitySetup a = build_setup({P({1}), P({1})}, 1, 1, P({1, 1}));
  SpectrumReport r = spectrum_match(a, Z({0, 1}));
  REQUIRE(r.dim_super == 1);
  REQUIRE(r.dim_classical == 1);
  CHECK(r.passed);
  // eigenvalue -1/(z1 - z2) = 1 for H^1
  CHECK(r.per_i[0].super_charpoly == Polynomial({-1, 1}));
  CHECK(r.per_i[0].classical_charpoly == Polynomial({-1, 1}));
  DualitySetup b = build_setup({P({1}), P({1})}, 1, 1, P({2}));
  SpectrumReport s = spectrum_match(b, Z({0, 1}));
  CHECK(s.passed);
  CHECK(s.per_i[0].super_charpoly == Polynomial({1, 1}));
}

TEST_CASE("three natural factors") {
  DualitySetup s = build_setup({P({1}), P({1}), P({1})}, 1, 1, P({2, 1}));
  CHECK(s.k == 3);
  SpectrumReport r = spectrum_match(s, Z({0, 2, 5}));
  CHECK(r.dim_super == 2);
  CHECK(r.dim_classical == 2);
  CHECK(r.passed);
  for (HamKind kind : {HamKind::cubicC, HamKind::cubicD}) {
    SpectrumReport c = spectrum_match(s, Z({0, 2, 5}), kind);
    CHECK(c.passed);
  }
}

TEST_CASE("small setups match at sampled points") {
  std::mt19937_64 rng(1);
  int checked = 0;
  for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    std::vector<std::vector<Partition>> all;
    std::vector<Partition> cur;
    lists(2, 3, cur, all);
    for (const auto& las : all) {
      bool ok = true;
      for (const auto& la : las) ok = ok && hook_ok(la, m, n);
      if (!ok) continue;
      for (const auto& mu : candidate_weights(las, m, n)) {
        DualitySetup s = build_setup(las, m, n, mu);
        auto z = sample_points(2, rng);
        SpectrumReport r = spectrum_match(s, z);
        CAPTURE(mu.str());
        CHECK(r.dim_super == r.dim_classical);
        CHECK(r.passed);
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("multiplicity accounting on both sides") {
  std::vector<Partition> las{P({1}), P({1, 1}), P({1})};
  for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}}) {
    long super_total = 0, super_product = 1;
    std::vector<Partition> hook = candidate_weights(las, m, n);
    REQUIRE(!hook.empty());
    DualitySetup base = build_setup(las, m, n, hook[0]);
    for (const auto& f : base.super_modules) super_product *= f->dim();
    TensorSpace ts(base.super_modules), tc(base.classical_modules);
    for (const auto& mu : hook) {
      DualitySetup s = build_setup(las, m, n, mu);
      int ds = singular_space(ts, s.super_weight).dim(), dc = singular_space(tc, s.classical_weight).dim();
      CHECK(ds == dc);
      super_total += ds * static_cast<long>(polynomial_module(mu, m, n).dim());
    }
    CHECK(super_total == super_product);
    // The classical side decomposes over every partition of the total size.
    long classical_total = 0, classical_product = 1;
    for (const auto& f : base.classical_modules) classical_product *= f->dim();
    for (const auto& mu : partitions_of(4)) {
      WeightModule l = classical_module(mu, base.k);
      classical_total += singular_space(tc, l.top).dim() * static_cast<long>(l.dim());
    }
    CHECK(classical_total == classical_product);
  }
}

TEST_CASE("central shift formula") {
  CHECK(central_shift(IndexSet::glmn(1, 1), {1, 1}, Z({0, 1}), 0) == 0);
  CHECK(central_shift(IndexSet::super(0, 1, 1, 1), {1, 1}, Z({0, 1}), 0) == -1);
  CHECK(central_shift(IndexSet::super(1, 1, 1, 1), {1, 1}, Z({0, 1}), 0) == 0);
  CHECK(central_shift(IndexSet::classical(1, 2), {1, 2}, Z({0, 1}), 0) == 2);
}

TEST_CASE("central shifts on band-truncated unitarizable modules") {
  IndexSet idx = IndexSet::super(0, 1, 1, 1);
  Algebra central{idx, true};
  std::vector<ModulePtr> factors;
  Weight mu;
  for (auto [w, d] : {std::pair{eps(-2, -1), 1}, std::pair{eps(-2, -2), 2}, std::pair{eps(2) - eps(-2), 1}}) {
    factors.push_back(std::make_shared<const WeightModule>(irreducible_truncated(central, w, d, 3)));
    mu = mu + w;
  }
  mu = mu - (eps(-2) - eps(2));
  for (const auto& z : {Z({0, 1, 3}), Z({-2, 5, 7})}) {
    ShiftReport r = central_shift_check(factors, mu, z);
    CHECK(r.dim >= 2);
    CHECK(r.matrices_match);
    CHECK(r.charpolys_match);
    CHECK(r.shifts[0] != 0);
  }
}

TEST_CASE("truncation of classical irreducibles") {
  WeightModule sym = classical_module(P({1, 1}), 3);  // top weight from conjugation (2)
  TruncationReport r = truncation_check(sym, IndexSet::classical(0, 2));
  CHECK(r.passed);
  CHECK(!r.zero);
  TruncationReport same = truncation_check(sym, IndexSet::classical(0, 3));
  CHECK(same.passed);
  WeightModule wide = classical_module(P({3}), 3);  // top needs three indices
  TruncationReport z = truncation_check(wide, IndexSet::classical(0, 2));
  CHECK(z.zero);
  CHECK(z.passed);
}
