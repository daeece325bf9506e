#include <algorithm>
#include <numeric>

#include "gaudin/duality.hpp"
#include "gaudin/errors.hpp"

namespace gaudin {

DualitySetup build_setup(const std::vector<Partition>& partitions, int m, int n, const Partition& mu) {
  if (partitions.size() < 2) throw PreconditionError("need at least two tensor factors");
  DualitySetup s;
  s.partitions = partitions;
  s.m = m;
  s.n = n;
  s.mu = mu;
  int total = 0;
  for (const auto& la : partitions) {
    if (!hook_ok(la, m, n)) throw PreconditionError("hook condition violated for " + la.str());
    if (la.empty()) throw PreconditionError("empty partitions label trivial factors; drop them");
    total += la.size();
  }
  if (mu.size() != total) throw PreconditionError("mu must have size " + std::to_string(total));
  s.k = std::max(total, mu.part(1));
  auto [sw, cw] = hook_correspondence(mu, m, n, s.k);
  s.super_weight = sw;
  s.classical_weight = cw;
  for (const auto& la : partitions) {
    s.super_modules.push_back(std::make_shared<const WeightModule>(polynomial_module(la, m, n)));
    s.classical_modules.push_back(std::make_shared<const WeightModule>(classical_module(la, s.k)));
  }
  return s;
}

std::vector<Partition> candidate_weights(const std::vector<Partition>& partitions, int m, int n) {
  int total = 0;
  for (const auto& la : partitions) total += la.size();
  std::vector<Partition> out;
  for (const auto& mu : partitions_of(total))
    if (hook_ok(mu, m, n)) out.push_back(mu);
  return out;
}

namespace {

struct SideData {
  int dim = 0;
  std::vector<Matrix> family;
};

SideData side(const std::vector<ModulePtr>& mods, const Weight& mu, const std::vector<Rational>& z, HamKind kind) {
  TensorSpace t(mods);
  SingularSpace s = singular_space(t, mu);
  SideData d;
  d.dim = s.dim();
  if (d.dim == 0) {
    d.family.assign(mods.size(), Matrix());
    return d;
  }
  HamiltonianFamily f = build_family(t, mods[0]->algebra, s.block, &s.basis, z, kind);
  d.family = std::move(f.matrices);
  return d;
}

}  // namespace

SpectrumReport spectrum_match(const DualitySetup& s, const std::vector<Rational>& z, HamKind kind) {
  if (z.size() != s.partitions.size()) throw PreconditionError("one point per tensor factor required");
  check_points(z);
  SpectrumReport r;
  r.kind = kind;
  r.z = z;
  SideData sup = side(s.super_modules, s.super_weight, z, kind);
  SideData cls = side(s.classical_modules, s.classical_weight, z, kind);
  r.dim_super = sup.dim;
  r.dim_classical = cls.dim;
  r.passed = sup.dim == cls.dim;
  r.super_diagonalizable = r.classical_diagonalizable = true;
  for (size_t i = 0; i < z.size(); ++i) {
    SlotMatch sm;
    if (sup.dim > 0) {
      sm.super_charpoly = charpoly(sup.family[i]);
      r.super_diagonalizable = r.super_diagonalizable && diagonalizability(sup.family[i]).diagonalizable;
    } else {
      sm.super_charpoly = Polynomial({1});
    }
    if (cls.dim > 0) {
      sm.classical_charpoly = charpoly(cls.family[i]);
      r.classical_diagonalizable = r.classical_diagonalizable && diagonalizability(cls.family[i]).diagonalizable;
    } else {
      sm.classical_charpoly = Polynomial({1});
    }
    sm.equal = sm.super_charpoly == sm.classical_charpoly;
    r.passed = r.passed && sm.equal;
    r.per_i.push_back(std::move(sm));
  }
  return r;
}

ShiftReport central_shift_check(const std::vector<ModulePtr>& factors, const Weight& mu, const std::vector<Rational>& z) {
  TensorSpace t(factors);
  const Algebra& alg = t.algebra();
  Algebra plain{alg.indices, false}, central{alg.indices, true};
  WeightBlock b = make_block(t, mu);
  QuadraticData qp = quadratic_data(t, casimir(plain), b);
  QuadraticData qc = quadratic_data(t, casimir(central), b);
  std::vector<Rational> levels;
  for (const auto& f : factors) levels.push_back(f->level);
  ShiftReport r;
  r.dim = b.dim();
  r.matrices_match = r.charpolys_match = true;
  for (int i = 0; i < t.length(); ++i) {
    Rational s = central_shift(alg.indices, levels, z, i);
    r.shifts.push_back(s);
    Matrix hp = quadratic_hamiltonian(qp, z, i), hc = quadratic_hamiltonian(qc, z, i);
    r.matrices_match = r.matrices_match && (hp - hc == Matrix::identity(b.dim()) * s);
    r.charpolys_match = r.charpolys_match && (charpoly(hp) == charpoly(hc).shifted(s));
  }
  return r;
}

std::vector<SparseVec> band_embedding(const WeightModule& big, const WeightModule& small) {
  if (small.words.size() != static_cast<size_t>(small.dim()))
    throw PreconditionError("band embedding needs an irreducible realization of the smaller module");
  const auto raising = simple_raising_ops(small.algebra.indices);
  int top = big.weight_index(small.top);
  if (top < 0 || big.weight_dim(top) != 1) throw VerificationError("top weight " + small.top.str() + " is not a one-dimensional weight of the larger module");
  std::vector<SparseVec> T(small.dim());
  T[0] = SparseVec{{big.offsets[top], 1}};
  for (int i = 1; i < small.dim(); ++i) {
    auto [op, parent] = small.words[i];
    BasisElement f{raising[op].col, raising[op].row};
    SparseVec v;
    for (const auto& [b, c] : T[parent]) axpy(v, c, big.act(f, static_cast<int>(b)));
    T[i] = std::move(v);
  }
  return T;
}

TruncationReport truncation_check(const WeightModule& big, const IndexSet& band) {
  TruncationReport r;
  WeightModule res = restrict_to_band(big, band);
  bool top_in_band = true;
  for (const auto& [d, c] : big.top.coeffs())
    if (!band.contains(HalfIndex{d})) top_in_band = false;
  if (!top_in_band) {
    r.zero = res.dim() == 0;
    r.dims_match = r.zero;
    r.intertwines = r.zero;
    r.passed = r.zero;
    r.detail = r.zero ? "restriction vanishes" : "restriction nonzero although the top weight leaves the band";
    return r;
  }
  Algebra small_alg{band, big.algebra.central};
  WeightModule small = irreducible_truncated(small_alg, big.top, big.level, -1);
  r.dims_match = res.dims() == small.dims();
  if (!r.dims_match) {
    r.detail = "weight multiplicities differ";
    return r;
  }
  // T: small -> big; check injectivity on each weight space and X T = T X for band generators.
  std::vector<SparseVec> T = band_embedding(big, small);
  bool ok = true;
  for (int wi = 0; wi < small.num_weights() && ok; ++wi) {
    int lo = small.offsets[wi], hi = small.offsets[wi + 1];
    std::map<Key, int> colmap;
    std::vector<Key> keys;
    for (int i = lo; i < hi; ++i)
      for (const auto& [k, c] : T[i])
        if (!colmap.count(k)) {
          colmap[k] = static_cast<int>(keys.size());
          keys.push_back(k);
        }
    Matrix tm(static_cast<int>(keys.size()), hi - lo);
    for (int i = lo; i < hi; ++i)
      for (const auto& [k, c] : T[i]) tm(colmap[k], i - lo) = c;
    if (rank(tm) != hi - lo) ok = false;
  }
  if (!ok) {
    r.detail = "embedding is not injective";
    return r;
  }
  for (const BasisElement& e : all_basis(band)) {
    for (int j = 0; j < small.dim() && ok; ++j) {
      SparseVec lhs;
      for (const auto& [b, c] : T[j]) axpy(lhs, c, big.act(e, static_cast<int>(b)));
      SparseVec rhs;
      for (const auto& [i, c] : small.act(e, j)) axpy(rhs, c, T[i]);
      axpy(lhs, -1, rhs);
      if (!lhs.empty()) ok = false;
    }
  }
  r.intertwines = ok;
  r.passed = r.dims_match && r.intertwines;
  r.detail = ok ? "isomorphic" : "embedding does not intertwine the band action";
  return r;
}

}  // namespace gaudin
