#include "gaudin/module.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gaudin/errors.hpp"

namespace gaudin {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::natural: return "natural";
    case Provenance::tensor: return "tensor";
    case Provenance::verma: return "verma";
    case Provenance::irreducible: return "irreducible";
    case Provenance::polynomial: return "polynomial";
    case Provenance::restricted: return "restricted";
  }
  return "?";
}

SparseMatrix sparse_product(const SparseMatrix& x, const SparseMatrix& y) {
  SparseMatrix out(y.size());
  for (size_t j = 0; j < y.size(); ++j)
    for (const auto& [k, c] : y[j])
      if (static_cast<size_t>(k) < x.size()) axpy(out[j], c, x[k]);
  return out;
}

SparseMatrix sparse_supercommutator(const SparseMatrix& x, int px, const SparseMatrix& y, int py) {
  SparseMatrix a = sparse_product(x, y), b = sparse_product(y, x);
  Rational s = (px & py) ? 1 : -1;
  for (size_t j = 0; j < a.size(); ++j) axpy(a[j], s, b[j]);
  return a;
}

int WeightModule::weight_index(const Weight& w) const {
  auto it = lookup_.find(w);
  return it == lookup_.end() ? -1 : it->second;
}

int WeightModule::weight_of(int basis) const {
  auto it = std::upper_bound(offsets.begin(), offsets.end(), basis);
  return static_cast<int>(it - offsets.begin()) - 1;
}

std::map<Weight, int> WeightModule::dims() const {
  std::map<Weight, int> out;
  for (int i = 0; i < num_weights(); ++i) out[weights[i]] = weight_dim(i);
  return out;
}

void WeightModule::index_weights() {
  lookup_.clear();
  for (int i = 0; i < num_weights(); ++i) lookup_[weights[i]] = i;
}

const SparseMatrix& WeightModule::matrix(const BasisElement& e) const {
  auto it = action.find({e.row.doubled, e.col.doubled});
  if (it == action.end())
    throw PreconditionError("generator E_{" + e.row.str() + "," + e.col.str() + "} not in " + algebra.indices.str());
  return it->second;
}

const SparseVec& WeightModule::act(const BasisElement& e, int basis) const {
  const SparseMatrix& m = matrix(e);
  if (depth >= 0) {
    int shift = height_shift(algebra.indices, e);
    if (shift > 0 && height_of(basis) + shift > depth)
      throw OutOfBandError("action of E_{" + e.row.str() + "," + e.col.str() + "} leaves the realized depth " +
                           std::to_string(depth));
  }
  return m[basis];
}

Weight central_weight(const IndexSet& idx, const Weight& plain, const Rational& d) {
  Weight w = plain;
  // Rational levels only enter through the Λ0 coefficient; the integral
  // coefficients are shifted by d, which must then be integral.
  for (HalfIndex r : idx.ordered()) {
    if (!r.negative() || d == 0) continue;
    if (d.get_den() != 1) throw PreconditionError("non-integral level with negative indices");
    long dl = d.get_num().get_si();
    w.add(r, r.parity() ? -dl : dl);
  }
  w.set_level(plain.level() + d);
  return w;
}

int weight_parity(const IndexSet& idx, const Weight& plain, const Rational& d) {
  Weight c = central_weight(idx, plain, d);
  long s = 0;
  for (const auto& [k, v] : c.coeffs())
    if (k % 2 != 0) s += v;
  return static_cast<int>(((s % 2) + 2) % 2);
}

int weight_height(const IndexSet& idx, const Weight& top, const Weight& w) {
  long h = 0;
  for (const auto& [k, v] : w.coeffs()) h += static_cast<long>(idx.position(HalfIndex{k})) * v;
  for (const auto& [k, v] : top.coeffs()) h -= static_cast<long>(idx.position(HalfIndex{k})) * v;
  return static_cast<int>(h);
}

WeightModule natural_module(const Algebra& alg) {
  WeightModule mod;
  mod.algebra = alg;
  mod.provenance = Provenance::natural;
  const auto& ord = alg.indices.ordered();
  const int n = static_cast<int>(ord.size());
  mod.top = Weight::epsilon(ord[0]);
  for (int i = 0; i < n; ++i) {
    mod.weights.push_back(Weight::epsilon(ord[i]));
    mod.offsets.push_back(i);
    mod.heights.push_back(i);
    mod.parities.push_back(ord[i].parity());
  }
  mod.offsets.push_back(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SparseMatrix m(n);
      m[b][a] = 1;
      mod.action[{ord[a].doubled, ord[b].doubled}] = std::move(m);
    }
  mod.index_weights();
  return mod;
}

TensorSpace::TensorSpace(std::vector<ModulePtr> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw PreconditionError("tensor product of no factors");
  for (const auto& f : factors_)
    if (!(f->algebra.indices == factors_[0]->algebra.indices))
      throw PreconditionError("tensor factors over different algebras");
  const int l = length();
  dims_.resize(l);
  stride_.resize(l);
  for (int i = l - 1; i >= 0; --i) {
    dims_[i] = factors_[i]->dim();
    stride_[i] = total_;
    total_ *= dims_[i];
  }
}

Key TensorSpace::encode(const std::vector<int>& tuple) const {
  Key c = 0;
  for (int i = 0; i < length(); ++i) c += tuple[i] * stride_[i];
  return c;
}

std::vector<int> TensorSpace::decode(Key code) const {
  std::vector<int> t(length());
  for (int i = 0; i < length(); ++i) t[i] = component(code, i);
  return t;
}

Weight TensorSpace::weight_of(Key code) const {
  Weight w;
  for (int i = 0; i < length(); ++i) w += factors_[i]->weights[factors_[i]->weight_of(component(code, i))];
  return w;
}

int TensorSpace::parity_of(Key code) const {
  int p = 0;
  for (int i = 0; i < length(); ++i) p ^= factors_[i]->parity_of(component(code, i));
  return p;
}

std::vector<Key> TensorSpace::weight_basis(const Weight& mu) const {
  const int l = length();
  // suffix[k]: weights reachable as sums over factors k..l-1.
  std::vector<std::set<Weight>> suffix(l + 1);
  suffix[l].insert(Weight());
  for (int k = l - 1; k >= 0; --k)
    for (const Weight& a : factors_[k]->weights)
      for (const Weight& b : suffix[k + 1]) suffix[k].insert(a + b);
  std::vector<Key> out;
  std::vector<int> wsel(l);
  std::function<void(int, const Weight&)> rec = [&](int k, const Weight& rest) {
    if (k == l) {
      // Cartesian product over the chosen weight spaces.
      std::vector<int> t(l);
      std::function<void(int, Key)> prod = [&](int s, Key code) {
        if (s == l) {
          out.push_back(code);
          return;
        }
        const WeightModule& f = *factors_[s];
        for (int b = f.offsets[wsel[s]]; b < f.offsets[wsel[s] + 1]; ++b) prod(s + 1, code + b * stride_[s]);
      };
      prod(0, 0);
      return;
    }
    const WeightModule& f = *factors_[k];
    for (int wi = 0; wi < f.num_weights(); ++wi) {
      Weight r = rest - f.weights[wi];
      if (!suffix[k + 1].count(r)) continue;
      wsel[k] = wi;
      rec(k + 1, r);
    }
  };
  Weight target = mu;
  target.set_level(0);
  rec(0, target);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Weight> TensorSpace::all_weights() const {
  std::set<Weight> acc{Weight()};
  for (const auto& f : factors_) {
    std::set<Weight> next;
    for (const Weight& a : acc)
      for (const Weight& b : f->weights) next.insert(a + b);
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

SparseVec TensorSpace::apply(int slot, const BasisElement& e, const SparseVec& v) const {
  if (slot < 0 || slot >= length()) throw PreconditionError("tensor slot out of range");
  const WeightModule& f = *factors_[slot];
  const int pe = e.parity();
  SparseVec out;
  for (const auto& [code, c] : v) {
    int b = component(code, slot);
    const SparseVec& col = f.act(e, b);
    if (col.empty()) continue;
    int sign = 0;
    if (pe)
      for (int k = 0; k < slot; ++k) sign ^= factors_[k]->parity_of(component(code, k));
    Key base = code - b * stride_[slot];
    for (const auto& [nb, a] : col) add_entry(out, base + nb * stride_[slot], sign ? Rational(-(c * a)) : Rational(c * a));
  }
  return out;
}

SparseVec TensorSpace::apply_central(int slot, const BasisElement& e, const SparseVec& v) const {
  SparseVec out = apply(slot, e, v);
  if (e.row == e.col && e.row.negative()) {
    const Rational& d = factors_[slot]->level;
    axpy(out, e.row.parity() ? -d : d, v);
  }
  return out;
}

SparseVec TensorSpace::coproduct(const BasisElement& e, const SparseVec& v) const {
  SparseVec out;
  for (int s = 0; s < length(); ++s) axpy(out, 1, apply(s, e, v));
  return out;
}

WeightModule tensor(const std::vector<ModulePtr>& factors) {
  TensorSpace t(factors);
  for (const auto& f : factors)
    if (!f->complete()) throw PreconditionError("materialized tensor products need complete factors");
  WeightModule mod;
  mod.algebra = factors[0]->algebra;
  mod.provenance = Provenance::tensor;
  for (const auto& f : factors) {
    mod.level += f->level;
    mod.top += f->top;
  }
  // New basis: grouped by weight in weight order, codes ascending within.
  std::map<Weight, std::vector<Key>> groups;
  for (Key c = 0; c < t.total_dim(); ++c) groups[t.weight_of(c)].push_back(c);
  std::map<Key, int> pos;
  int next = 0;
  for (const auto& [w, codes] : groups) {
    mod.weights.push_back(w);
    mod.offsets.push_back(next);
    mod.heights.push_back(weight_height(mod.algebra.indices, mod.top, w));
    mod.parities.push_back(t.parity_of(codes.front()));
    for (Key c : codes) pos[c] = next++;
  }
  mod.offsets.push_back(next);
  for (const BasisElement& e : all_basis(mod.algebra.indices)) {
    SparseMatrix m(next);
    for (const auto& [c, i] : pos) {
      SparseVec img = t.coproduct(e, SparseVec{{c, 1}});
      for (const auto& [ic, a] : img) m[i][pos.at(ic)] = a;
    }
    mod.action[{e.row.doubled, e.col.doubled}] = std::move(m);
  }
  mod.index_weights();
  return mod;
}

WeightBlock make_block(const TensorSpace& t, const Weight& mu) {
  WeightBlock b;
  b.mu = mu;
  b.codes = t.weight_basis(mu);
  for (size_t i = 0; i < b.codes.size(); ++i) b.index[b.codes[i]] = static_cast<int>(i);
  return b;
}

Matrix block_column(const WeightBlock& b, const SparseVec& v) {
  Matrix col(b.dim(), 1);
  for (const auto& [c, a] : v) {
    auto it = b.index.find(c);
    if (it == b.index.end()) throw VerificationError("vector leaves the weight space " + b.mu.str());
    col(it->second, 0) = a;
  }
  return col;
}

SingularSpace singular_space(const TensorSpace& t, const Weight& mu) {
  SingularSpace s;
  s.block = make_block(t, mu);
  const int n = s.block.dim();
  std::map<std::pair<int, Key>, SparseVec> rows;
  auto raising = simple_raising_ops(t.algebra().indices);
  for (size_t r = 0; r < raising.size(); ++r)
    for (int j = 0; j < n; ++j) {
      SparseVec img = t.coproduct(raising[r], SparseVec{{s.block.codes[j], 1}});
      for (const auto& [c, a] : img) rows[{static_cast<int>(r), c}][j] = a;
    }
  std::vector<SparseVec> rv;
  rv.reserve(rows.size());
  for (auto& [k, row] : rows) rv.push_back(std::move(row));
  s.basis = sparse_kernel(std::move(rv), n);
  return s;
}

SingularSpace singular_space(const ModulePtr& mod, const Weight& mu) { return singular_space(TensorSpace({mod}), mu); }

}  // namespace gaudin
