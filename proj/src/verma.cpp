#include <algorithm>
#include <functional>
#include <map>

#include "gaudin/errors.hpp"
#include "gaudin/module.hpp"

namespace gaudin {

namespace {

using Word = std::vector<int>;
using WordComb = std::map<Word, Rational>;

class PbwEngine {
 public:
  PbwEngine(const Algebra& alg, const Weight& xi) : idx_(alg.indices), xi_(xi) {
    plain_ = alg;
    plain_.central = false;
    const auto& ord = idx_.ordered();
    const int n = idx_.size();
    struct Item {
      int height, row;
      BasisElement e;
    };
    std::vector<Item> items;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b) items.push_back({a - b, a, BasisElement{ord[a], ord[b]}});
    std::sort(items.begin(), items.end(),
              [](const Item& x, const Item& y) { return std::make_pair(x.height, x.row) < std::make_pair(y.height, y.row); });
    for (const auto& it : items) {
      index_[{it.e.row.doubled, it.e.col.doubled}] = static_cast<int>(ops_.size());
      ops_.push_back(it.e);
      heights_.push_back(it.height);
    }
  }

  const std::vector<BasisElement>& ops() const { return ops_; }
  int op_height(int k) const { return heights_[k]; }

  std::map<std::vector<int>, Rational> normalize(const Word& w) {
    auto memo = norm_memo_.find(w);
    if (memo != norm_memo_.end()) return memo->second;
    std::map<std::vector<int>, Rational> out;
    size_t i = 0;
    while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
    if (i + 1 < w.size()) {
      const BasisElement& a = ops_[w[i]];
      const BasisElement& b = ops_[w[i + 1]];
      Word sw = w;
      std::swap(sw[i], sw[i + 1]);
      Rational sign = (a.parity() & b.parity()) ? -1 : 1;
      for (const auto& [m, c] : normalize(sw)) add(out, m, sign * c);
      AlgebraElement br = supercommutator(plain_, AlgebraElement::basis(a.row, a.col), AlgebraElement::basis(b.row, b.col));
      for (const auto& [e, c] : br.terms()) {
        Word rw(w.begin(), w.begin() + i);
        rw.push_back(index_.at({e.row.doubled, e.col.doubled}));
        rw.insert(rw.end(), w.begin() + i + 2, w.end());
        for (const auto& [m, c2] : normalize(rw)) add(out, m, c * c2);
      }
    } else {
      std::vector<int> exps(ops_.size(), 0);
      bool zero = false;
      for (size_t k = 0; k < w.size(); ++k) {
        if (k + 1 < w.size() && w[k] == w[k + 1] && ops_[w[k]].parity()) zero = true;
        ++exps[w[k]];
      }
      if (!zero) out[exps] = 1;
    }
    norm_memo_[w] = out;
    return out;
  }

  // x . (w[i] w[i+1] ... v) as a combination of (unnormalized) words.
  WordComb act(const BasisElement& x, const Word& w, size_t i) {
    WordComb out;
    if (i == w.size()) {
      int shift = height_shift(idx_, x);
      if (shift > 0)
        out[Word{index_.at({x.row.doubled, x.col.doubled})}] = 1;
      else if (x.row == x.col && xi_.coeff(x.row) != 0)
        out[Word{}] = xi_.coeff(x.row);
      return out;
    }
    const BasisElement& y = ops_[w[i]];
    AlgebraElement br = supercommutator(plain_, AlgebraElement::basis(x.row, x.col), AlgebraElement::basis(y.row, y.col));
    for (const auto& [e, c] : br.terms())
      for (const auto& [wd, c2] : act(e, w, i + 1)) add(out, wd, c * c2);
    Rational sign = (x.parity() & y.parity()) ? -1 : 1;
    for (const auto& [wd, c2] : act(x, w, i + 1)) {
      Word nw;
      nw.reserve(wd.size() + 1);
      nw.push_back(w[i]);
      nw.insert(nw.end(), wd.begin(), wd.end());
      add(out, nw, sign * c2);
    }
    return out;
  }

 private:
  template <class K>
  static void add(std::map<K, Rational>& m, const K& k, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = m.try_emplace(k, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
  }

  IndexSet idx_;
  Weight xi_;
  Algebra plain_;
  std::vector<BasisElement> ops_;
  std::vector<int> heights_;
  std::map<std::pair<int, int>, int> index_;
  std::map<Word, std::map<std::vector<int>, Rational>> norm_memo_;
};

}  // namespace

WeightModule verma_truncated(const Algebra& alg, const Weight& xi_in, const Rational& level, int depth) {
  if (depth < 0) throw PreconditionError("Verma modules need a nonnegative depth");
  Weight xi = xi_in;
  xi.set_level(0);
  const IndexSet& idx = alg.indices;
  PbwEngine eng(alg, xi);
  const auto& ops = eng.ops();
  const int K = static_cast<int>(ops.size());

  // Enumerate monomials of total height <= depth, grouped by weight.
  std::map<std::pair<int, Weight>, std::vector<std::vector<int>>> groups;
  std::vector<int> exps(K, 0);
  std::function<void(int, int)> rec = [&](int k, int h) {
    if (k == K) {
      Weight ww = xi;
      for (int j = 0; j < K; ++j) {
        ww.add(ops[j].row, exps[j]);
        ww.add(ops[j].col, -exps[j]);
      }
      groups[{h, ww}].push_back(exps);
      return;
    }
    int maxe = ops[k].parity() ? 1 : (depth - h) / eng.op_height(k);
    for (int e = 0; e <= maxe && h + e * eng.op_height(k) <= depth; ++e) {
      exps[k] = e;
      rec(k + 1, h + e * eng.op_height(k));
    }
    exps[k] = 0;
  };
  rec(0, 0);

  WeightModule mod;
  mod.algebra = alg;
  mod.level = level;
  mod.provenance = Provenance::verma;
  mod.depth = depth;
  mod.top = xi;
  mod.pbw_ops = ops;
  std::map<std::vector<int>, int> id;
  // Weights of equal height may coincide only if equal; merge by weight.
  std::map<Weight, std::vector<std::vector<int>>> byWeight;
  std::vector<Weight> order;
  for (auto& [key, list] : groups) {
    if (!byWeight.count(key.second)) order.push_back(key.second);
    auto& dst = byWeight[key.second];
    dst.insert(dst.end(), list.begin(), list.end());
  }
  for (const Weight& w : order) {
    mod.weights.push_back(w);
    mod.offsets.push_back(static_cast<int>(mod.pbw_exps.size()));
    mod.heights.push_back(weight_height(idx, xi, w));
    mod.parities.push_back(weight_parity(idx, w, level));
    for (const auto& e : byWeight[w]) {
      id[e] = static_cast<int>(mod.pbw_exps.size());
      mod.pbw_exps.push_back(e);
    }
  }
  mod.offsets.push_back(static_cast<int>(mod.pbw_exps.size()));
  mod.index_weights();
  const int dim = mod.dim();

  for (const BasisElement& x : all_basis(idx)) {
    SparseMatrix m(dim);
    int shift = height_shift(idx, x);
    for (int b = 0; b < dim; ++b) {
      if (mod.height_of(b) + shift > depth) continue;
      std::vector<int> word;
      for (int k = 0; k < K; ++k)
        for (int e = 0; e < mod.pbw_exps[b][k]; ++e) word.push_back(k);
      for (const auto& [wd, c] : eng.act(x, word, 0))
        for (const auto& [ex, c2] : eng.normalize(wd)) add_entry(m[b], id.at(ex), c * c2);
    }
    mod.action[{x.row.doubled, x.col.doubled}] = std::move(m);
  }
  return mod;
}

Matrix verma_gram(const WeightModule& verma, int wi) {
  if (verma.provenance != Provenance::verma) throw PreconditionError("verma_gram needs a Verma realization");
  const IndexSet& idx = verma.algebra.indices;
  const int lo = verma.offsets[wi], hi = verma.offsets[wi + 1], n = hi - lo;
  Matrix g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SparseVec x{{lo + b, 1}};
      const auto& ex = verma.pbw_exps[lo + a];
      for (size_t k = 0; k < ex.size(); ++k) {
        const BasisElement& f = verma.pbw_ops[k];
        Rational sigma = (tau_sign_exponent(f.row) + tau_sign_exponent(f.col)) % 2 ? -1 : 1;
        BasisElement e{f.col, f.row};
        for (int t = 0; t < ex[k]; ++t) {
          SparseVec y;
          for (const auto& [i, c] : x) axpy(y, c * sigma, verma.act(e, static_cast<int>(i)));
          x = std::move(y);
        }
      }
      auto it = x.find(0);
      g(a, b) = it == x.end() ? Rational(0) : it->second;
    }
  (void)idx;
  return g;
}

}  // namespace gaudin
