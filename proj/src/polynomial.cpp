#include <algorithm>
#include <map>

#include "gaudin/errors.hpp"
#include "gaudin/module.hpp"

namespace gaudin {

namespace {

// Fully reduced echelon basis of sparse vectors; pivot = smallest key.
struct SparseEchelon {
  std::map<Key, SparseVec> rows;

  SparseVec reduce(SparseVec y) const {
    for (const auto& [p, b] : rows) {
      auto it = y.find(p);
      if (it == y.end()) continue;
      Rational c = it->second;
      axpy(y, -c, b);
    }
    return y;
  }

  bool insert(const SparseVec& v) {
    SparseVec y = reduce(v);
    if (y.empty()) return false;
    Key p = y.begin()->first;
    Rational inv = 1 / y.begin()->second;
    y = scaled(y, inv);
    for (auto& [q, b] : rows) {
      auto it = b.find(p);
      if (it == b.end()) continue;
      Rational c = it->second;
      axpy(b, -c, y);
    }
    rows[p] = std::move(y);
    return true;
  }
};

}  // namespace

WeightModule polynomial_module(const Partition& la, int m, int n) {
  if (!hook_ok(la, m, n)) throw PreconditionError("partition " + la.str() + " does not fit the (" + std::to_string(m) + "," + std::to_string(n) + ") hook");
  Algebra alg{IndexSet::glmn(m, n), false};
  const IndexSet& idx = alg.indices;
  const int N = la.size();
  Weight top = weight_super(la, Partition(), 0, 0, m, 0, n);
  top.set_level(0);

  WeightModule mod;
  mod.algebra = alg;
  mod.level = 0;
  mod.provenance = Provenance::polynomial;
  mod.depth = -1;
  mod.top = top;

  if (N == 0) {
    mod.weights = {top};
    mod.offsets = {0, 1};
    mod.heights = {0};
    mod.parities = {0};
    mod.index_weights();
    for (const BasisElement& e : all_basis(idx)) mod.action[{e.row.doubled, e.col.doubled}] = SparseMatrix(1);
    return mod;
  }

  auto nat = std::make_shared<const WeightModule>(natural_module(alg));
  TensorSpace t(std::vector<ModulePtr>(N, nat));
  SingularSpace hw = singular_space(t, top);
  if (hw.dim() == 0) throw VerificationError("no highest weight vector of weight " + top.str());
  SparseVec v;
  for (int r = 0; r < hw.block.dim(); ++r)
    if (hw.basis(r, 0) != 0) v[hw.block.codes[r]] = hw.basis(r, 0);

  std::vector<BasisElement> lowering;
  for (const BasisElement& e : simple_raising_ops(idx)) lowering.push_back(BasisElement{e.col, e.row});

  std::map<Weight, SparseEchelon> spaces;
  std::vector<std::vector<Weight>> levels;
  spaces[top].insert(v);
  levels.push_back({top});
  while (true) {
    std::map<Weight, SparseEchelon> next;
    for (const Weight& w : levels.back())
      for (const auto& [p, b] : spaces[w].rows)
        for (const BasisElement& f : lowering) {
          SparseVec y = t.coproduct(f, b);
          if (y.empty()) continue;
          Weight wn = t.weight_of(y.begin()->first);
          next[wn].insert(y);
        }
    if (next.empty()) break;
    std::vector<Weight> lv;
    for (auto& [w, sp] : next) {
      lv.push_back(w);
      spaces[w] = std::move(sp);
    }
    levels.push_back(std::move(lv));
  }

  std::map<Weight, int> first;
  int next_id = 0;
  for (size_t h = 0; h < levels.size(); ++h)
    for (const Weight& w : levels[h]) {
      mod.weights.push_back(w);
      mod.offsets.push_back(next_id);
      mod.heights.push_back(static_cast<int>(h));
      mod.parities.push_back(weight_parity(idx, w, 0));
      first[w] = next_id;
      next_id += static_cast<int>(spaces[w].rows.size());
    }
  mod.offsets.push_back(next_id);
  mod.index_weights();

  std::vector<const SparseVec*> vecs(next_id);
  for (const Weight& w : mod.weights) {
    int i = first[w];
    for (const auto& [p, b] : spaces[w].rows) vecs[i++] = &b;
  }
  for (const BasisElement& e : all_basis(idx)) {
    SparseMatrix m(next_id);
    for (int j = 0; j < next_id; ++j) {
      SparseVec y = t.coproduct(e, *vecs[j]);
      if (y.empty()) continue;
      Weight wn = t.weight_of(y.begin()->first);
      auto sit = spaces.find(wn);
      if (sit == spaces.end()) throw VerificationError("polynomial module is not closed under " + e.row.str() + "," + e.col.str());
      const SparseEchelon& sp = sit->second;
      int i = first[wn];
      SparseVec check;
      for (const auto& [p, b] : sp.rows) {
        auto it = y.find(p);
        if (it != y.end()) {
          add_entry(m[j], i, it->second);
          axpy(check, it->second, b);
        }
        ++i;
      }
      axpy(check, -1, y);
      if (!check.empty()) throw VerificationError("polynomial module is not closed under " + e.row.str() + "," + e.col.str());
    }
    mod.action[{e.row.doubled, e.col.doubled}] = std::move(m);
  }
  return mod;
}

}  // namespace gaudin
