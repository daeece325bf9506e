#pragma once

#include <map>
#include <vector>

#include "gaudin/module.hpp"

namespace gaudin {

// Operator-valued rational function of u with poles at fixed points z_i:
// sum c_{i,e} (u - z_i)^{-e} plus a constant term (key (-1, 0)).
class PartialFraction {
 public:
  PartialFraction() = default;
  PartialFraction(std::vector<Rational> poles, int dim) : poles_(std::move(poles)), dim_(dim) {}

  static PartialFraction constant(std::vector<Rational> poles, const Matrix& c);
  static PartialFraction pole(std::vector<Rational> poles, int i, int order, const Matrix& c);

  const std::vector<Rational>& poles() const { return poles_; }
  int dim() const { return dim_; }
  const std::map<std::pair<int, int>, Matrix>& terms() const { return terms_; }
  // Coefficient of (u - z_i)^{-order}; zero matrix when absent. i = -1, order 0 is the constant.
  Matrix coeff(int i, int order) const;
  int max_order() const;
  bool is_zero() const { return terms_.empty(); }

  void add(int i, int order, const Matrix& c);
  PartialFraction operator+(const PartialFraction& o) const;
  PartialFraction operator-(const PartialFraction& o) const;
  PartialFraction operator*(const Rational& s) const;
  // Operator product (this on the left), re-expanded over the pole set.
  PartialFraction operator*(const PartialFraction& o) const;
  PartialFraction derivative() const;
  bool operator==(const PartialFraction& o) const;

  Matrix evaluate(const Rational& u) const;

 private:
  std::vector<Rational> poles_;
  int dim_ = 0;
  std::map<std::pair<int, int>, Matrix> terms_;
};

// Polynomial in d/du with PartialFraction coefficients on the left: sum_a f_a d^a.
class DiffOpPoly {
 public:
  std::map<int, PartialFraction> coeffs;

  DiffOpPoly operator+(const DiffOpPoly& o) const;
  DiffOpPoly operator*(const DiffOpPoly& o) const;
  const PartialFraction* coeff(int degree) const;
};

// Full-space matrix of e acting on one slot (Koszul signs included).
Matrix slot_matrix(const TensorSpace& t, int slot, const BasisElement& e);

// S_{k0}, ..., S_{kk} from Str(L(u)^k) for the plain Lax matrix, k in {1,2,3}.
std::vector<PartialFraction> lax_str_expansion(const TensorSpace& t, const std::vector<Rational>& z, int k);

// S_kk assembled from the quadratic and cubic Hamiltonians.
PartialFraction lax_closed_form(const TensorSpace& t, const std::vector<Rational>& z, int k);

// Binomial coefficient as a rational.
Rational binomial(int n, int k);

}  // namespace gaudin
