#include "gaudin/superalgebra.hpp"

#include "gaudin/errors.hpp"

namespace gaudin {

AlgebraElement AlgebraElement::basis(HalfIndex row, HalfIndex col, const Rational& c) {
  AlgebraElement x;
  x.add(BasisElement{row, col}, c);
  return x;
}

AlgebraElement AlgebraElement::k(const Rational& c) {
  AlgebraElement x;
  x.central_ = c;
  return x;
}

void AlgebraElement::add(const BasisElement& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational AlgebraElement::coeff(const BasisElement& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e, c);
  r.central_ += o.central_;
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + o * Rational(-1); }

AlgebraElement AlgebraElement::operator*(const Rational& s) const {
  AlgebraElement r;
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  r.central_ = central_ * s;
  return r;
}

int AlgebraElement::parity() const {
  int p = -2;
  for (const auto& [e, c] : terms_) {
    if (p == -2)
      p = e.parity();
    else if (p != e.parity())
      return -1;
  }
  return p == -2 ? 0 : p;
}

namespace {

void check_member(const IndexSet& idx, const AlgebraElement& x) {
  for (const auto& [e, c] : x.terms())
    if (!idx.contains(e.row) || !idx.contains(e.col))
      throw PreconditionError("element E_{" + e.row.str() + "," + e.col.str() + "} outside " + idx.str());
}

}  // namespace

AlgebraElement supercommutator(const Algebra& alg, const AlgebraElement& x, const AlgebraElement& y) {
  check_member(alg.indices, x);
  check_member(alg.indices, y);
  AlgebraElement out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      Rational c = ca * cb;
      if (a.col == b.row) out.add(BasisElement{a.row, b.col}, c);
      if (b.col == a.row) out.add(BasisElement{b.row, a.col}, (a.parity() & b.parity()) ? c : Rational(-c));
    }
  if (alg.central) out.add_central(cocycle(alg, x, y));
  return out;
}

Matrix to_matrix(const IndexSet& idx, const AlgebraElement& x) {
  Matrix m(idx.size(), idx.size());
  for (const auto& [e, c] : x.terms()) m(idx.position(e.row), idx.position(e.col)) += c;
  return m;
}

AlgebraElement from_matrix(const IndexSet& idx, const Matrix& m) {
  AlgebraElement x;
  const auto& ord = idx.ordered();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) x.add(BasisElement{ord[i], ord[j]}, m(i, j));
  return x;
}

Rational supertrace(const IndexSet& idx, const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() != idx.size()) throw PreconditionError("supertrace needs a square matrix over the index set");
  Rational s = 0;
  const auto& ord = idx.ordered();
  for (int i = 0; i < m.rows(); ++i) s += ord[i].parity() ? -m(i, i) : m(i, i);
  return s;
}

namespace {

Matrix j_matrix(const IndexSet& idx) {
  Matrix j(idx.size(), idx.size());
  const auto& ord = idx.ordered();
  for (int i = 0; i < idx.size(); ++i)
    if (ord[i].negative()) j(i, i) = -1;
  return j;
}

}  // namespace

Rational cocycle(const Algebra& alg, const AlgebraElement& x, const AlgebraElement& y) {
  const IndexSet& idx = alg.indices;
  Matrix j = j_matrix(idx), a = to_matrix(idx, x), b = to_matrix(idx, y);
  return supertrace(idx, (j * a - a * j) * b);
}

AlgebraElement iota(const Algebra& alg, const AlgebraElement& x) {
  const IndexSet& idx = alg.indices;
  AlgebraElement r = x;
  r.add_central(supertrace(idx, j_matrix(idx) * to_matrix(idx, x)));
  return r;
}

AlgebraElement iota_inverse(const Algebra& alg, const AlgebraElement& x) {
  const IndexSet& idx = alg.indices;
  AlgebraElement r = x;
  r.add_central(-supertrace(idx, j_matrix(idx) * to_matrix(idx, x)));
  return r;
}

int tau_sign_exponent(HalfIndex i) { return (i.doubled < 0 && i.doubled % 2 == 0) ? 1 : 0; }

AlgebraElement star_omega(const IndexSet& idx, const AlgebraElement& x) {
  check_member(idx, x);
  AlgebraElement r;
  for (const auto& [e, c] : x.terms()) {
    int s = tau_sign_exponent(e.row) + tau_sign_exponent(e.col);
    r.add(BasisElement{e.col, e.row}, s % 2 ? -c : c);
  }
  r.add_central(x.central());
  return r;
}

std::vector<BasisElement> simple_raising_ops(const IndexSet& idx) {
  std::vector<BasisElement> out;
  const auto& ord = idx.ordered();
  for (size_t i = 0; i + 1 < ord.size(); ++i) out.push_back(BasisElement{ord[i], ord[i + 1]});
  return out;
}

std::vector<BasisElement> all_basis(const IndexSet& idx) {
  std::vector<BasisElement> out;
  for (HalfIndex a : idx.ordered())
    for (HalfIndex b : idx.ordered()) out.push_back(BasisElement{a, b});
  return out;
}

Weight root_of(const BasisElement& e) {
  Weight w;
  w.add(e.row, 1);
  w.add(e.col, -1);
  return w;
}

int height_shift(const IndexSet& idx, const BasisElement& e) { return idx.position(e.row) - idx.position(e.col); }

}  // namespace gaudin
