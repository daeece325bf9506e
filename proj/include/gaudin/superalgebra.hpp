#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gaudin/linalg.hpp"
#include "gaudin/weights.hpp"

namespace gaudin {

// gl over a finite index set, optionally with the central extension by K.
struct Algebra {
  IndexSet indices;
  bool central = false;

  int rank() const { return indices.size(); }
  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.indices == b.indices && a.central == b.central;
  }
};

// E_{row,col}
struct BasisElement {
  HalfIndex row, col;
  int parity() const { return row.parity() ^ col.parity(); }
  friend bool operator<(const BasisElement& a, const BasisElement& b) {
    return std::make_pair(a.row.doubled, a.col.doubled) < std::make_pair(b.row.doubled, b.col.doubled);
  }
  friend bool operator==(const BasisElement& a, const BasisElement& b) { return a.row == b.row && a.col == b.col; }
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  static AlgebraElement basis(HalfIndex row, HalfIndex col, const Rational& c = 1);
  static AlgebraElement k(const Rational& c = 1);

  const std::map<BasisElement, Rational>& terms() const { return terms_; }
  const Rational& central() const { return central_; }
  void add(const BasisElement& e, const Rational& c);
  void add_central(const Rational& c) { central_ += c; }
  Rational coeff(const BasisElement& e) const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const Rational& s) const;
  bool is_zero() const { return terms_.empty() && central_ == 0; }
  // 0 or 1 for homogeneous elements, -1 otherwise (zero counts as even).
  int parity() const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_ && a.central_ == b.central_;
  }

 private:
  std::map<BasisElement, Rational> terms_;
  Rational central_ = 0;
};

// Bracket of the plain algebra plus the cocycle term when alg.central is set.
AlgebraElement supercommutator(const Algebra& alg, const AlgebraElement& x, const AlgebraElement& y);
// tau(A, B) = Str([J, A] B) with J = -sum_{r < 0} E_r.
Rational cocycle(const Algebra& alg, const AlgebraElement& x, const AlgebraElement& y);
// iota(A) = A + Str(J A) K, iota(K) = K.
AlgebraElement iota(const Algebra& alg, const AlgebraElement& x);
AlgebraElement iota_inverse(const Algebra& alg, const AlgebraElement& x);
Rational supertrace(const IndexSet& idx, const Matrix& m);
AlgebraElement star_omega(const IndexSet& idx, const AlgebraElement& x);
// 1 iff -i is a positive integer.
int tau_sign_exponent(HalfIndex i);
std::vector<BasisElement> simple_raising_ops(const IndexSet& idx);
std::vector<BasisElement> all_basis(const IndexSet& idx);

// Matrix of the K-free part in the natural representation, rows/cols by position.
Matrix to_matrix(const IndexSet& idx, const AlgebraElement& x);
AlgebraElement from_matrix(const IndexSet& idx, const Matrix& m);

// Weight change ε_row − ε_col of E_{row,col}.
Weight root_of(const BasisElement& e);
// Height change position(row) - position(col); positive for lowering operators.
int height_shift(const IndexSet& idx, const BasisElement& e);

}  // namespace gaudin
