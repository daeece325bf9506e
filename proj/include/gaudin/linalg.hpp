#pragma once

#include <optional>
#include <vector>

#include "gaudin/rational.hpp"

namespace gaudin {

// Dense matrix over the rationals, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Rational& s) const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  bool operator==(const Matrix& o) const;

  bool is_zero() const;
  Matrix transpose() const;
  Matrix column(int c) const;
  Matrix columns(const std::vector<int>& cs) const;
  Matrix rows_of(const std::vector<int>& rs) const;
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

Matrix commutator(const Matrix& a, const Matrix& b);
Rational max_abs(const Matrix& m);

struct Echelon {
  Matrix reduced;           // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};

Echelon rref(Matrix m);
int rank(const Matrix& m);
// Null space basis as columns, one per free column of the reduced form, in
// increasing free-column order.
Matrix kernel(const Matrix& m);
// Null space of a sparse system given by rows keyed by column index.
Matrix sparse_kernel(std::vector<SparseVec> rows, int ncols);
// Solves a x = b; nullopt if inconsistent. Free variables are set to zero.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& m);
// Restriction of an operator to an invariant subspace spanned by the columns
// of basis; throws VerificationError if the subspace is not invariant.
Matrix restrict_to(const Matrix& op, const Matrix& basis);
// True iff the symmetric matrix is positive definite (exact LDL^T pivots).
bool is_positive_definite(const Matrix& m);

// Polynomial with rational coefficients, c[i] is the coefficient of t^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial monomial(int degree, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational leading() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  Polynomial derivative() const;
  Polynomial monic() const;
  Rational evaluate(const Rational& t) const;
  Matrix evaluate(const Matrix& m) const;
  // p(t - s) as a polynomial in t.
  Polynomial shifted(const Rational& s) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial squarefree_part(const Polynomial& p);

// det(t I - m), monic, via Hessenberg reduction.
Polynomial charpoly(const Matrix& m);

struct DiagonalizabilityCertificate {
  bool diagonalizable = false;
  Polynomial charpoly;
  Polynomial squarefree;       // squarefree part of the characteristic polynomial
  Polynomial repeated_factor;  // gcd(charpoly, charpoly'); constant if squarefree
};

// Over an algebraically closed field m is diagonalizable iff the squarefree part
// of its characteristic polynomial annihilates it.
DiagonalizabilityCertificate diagonalizability(const Matrix& m);

// Span dimension of the smallest subspace containing v and invariant under ops.
int krylov_dimension(const std::vector<Matrix>& ops, const Matrix& v, std::vector<int>* profile = nullptr);

}  // namespace gaudin
