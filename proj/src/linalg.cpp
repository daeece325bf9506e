#include "gaudin/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "gaudin/errors.hpp"

namespace gaudin {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) out(i, j) += x * o(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix out = *this;
  out += o;
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix out = *this;
  out -= o;
  return out;
}

Matrix Matrix::operator*(const Rational& s) const {
  Matrix out = *this;
  for (auto& x : out.a_) x *= s;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::column(int c) const { return columns({c}); }

Matrix Matrix::columns(const std::vector<int>& cs) const {
  Matrix out(rows_, static_cast<int>(cs.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cs.size(); ++j) out(i, static_cast<int>(j)) = (*this)(i, cs[j]);
  return out;
}

Matrix Matrix::rows_of(const std::vector<int>& rs) const {
  Matrix out(static_cast<int>(rs.size()), cols_);
  for (size_t i = 0; i < rs.size(); ++i)
    for (int j = 0; j < cols_; ++j) out(static_cast<int>(i), j) = (*this)(rs[i], j);
  return out;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) {
    for (int i = 0; i < a.rows_; ++i) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows_; ++i) out(a.rows_ + i, j) = b(i, j);
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Rational max_abs(const Matrix& m) {
  Rational best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Rational v = abs(m(i, j));
      if (v > best) best = v;
    }
  return best;
}

Echelon rref(Matrix m) {
  Echelon e;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix k(m.cols(), static_cast<int>(free.size()));
  for (size_t f = 0; f < free.size(); ++f) {
    int fc = free[f];
    k(fc, static_cast<int>(f)) = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], static_cast<int>(f)) = -e.reduced(static_cast<int>(r), fc);
  }
  return k;
}

Matrix sparse_kernel(std::vector<SparseVec> rows, int ncols) {
  // Fully reduced pivot rows keyed by pivot column.
  std::map<Key, SparseVec> pivots;
  for (auto& r : rows) {
    std::vector<std::pair<Key, Rational>> hits;
    for (const auto& [c, v] : r)
      if (pivots.count(c)) hits.emplace_back(c, v);
    for (const auto& [c, v] : hits) axpy(r, -v, pivots[c]);
    if (r.empty()) continue;
    Key pc = r.begin()->first;
    Rational inv = 1 / r.begin()->second;
    for (auto& [c, v] : r) v *= inv;
    for (auto& [oc, orow] : pivots) {
      auto it = orow.find(pc);
      if (it == orow.end()) continue;
      Rational f = it->second;
      axpy(orow, -f, r);
    }
    pivots.emplace(pc, std::move(r));
  }
  std::vector<int> free;
  for (int c = 0; c < ncols; ++c)
    if (!pivots.count(c)) free.push_back(c);
  Matrix k(ncols, static_cast<int>(free.size()));
  for (size_t f = 0; f < free.size(); ++f) {
    int fc = free[f];
    k(fc, static_cast<int>(f)) = 1;
    for (const auto& [pc, prow] : pivots) {
      auto it = prow.find(fc);
      if (it != prow.end()) k(static_cast<int>(pc), static_cast<int>(f)) = -it->second;
    }
  }
  return k;
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Echelon e = rref(Matrix::hstack(a, b));
  Matrix x(a.cols(), b.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    int pc = e.pivots[r];
    if (pc >= a.cols()) return std::nullopt;
    for (int j = 0; j < b.cols(); ++j) x(pc, j) = e.reduced(static_cast<int>(r), a.cols() + j);
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(m, Matrix::identity(m.rows()));
  if (!x || rank(m) != m.rows()) throw std::invalid_argument("singular matrix");
  return *x;
}

Matrix restrict_to(const Matrix& op, const Matrix& basis) {
  auto x = solve(basis, op * basis);
  if (!x) throw VerificationError("subspace is not invariant under the operator");
  return *x;
}

bool is_positive_definite(const Matrix& m) {
  Matrix a = m;
  int n = a.rows();
  for (int k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Polynomial::coeff(int i) const { return i < static_cast<int>(c_.size()) && i >= 0 ? c_[i] : Rational(0); }

Rational Polynomial::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Rational> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rational> v = c_;
  Rational inv = 1 / c_.back();
  for (auto& x : v) x *= inv;
  return Polynomial(std::move(v));
}

Rational Polynomial::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Matrix Polynomial::evaluate(const Matrix& m) const {
  Matrix acc(m.rows(), m.cols());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * m;
    for (int i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

Polynomial Polynomial::shifted(const Rational& s) const {
  // Horner in the polynomial ring: p(t - s).
  Polynomial lin(std::vector<Rational>{-s, 1});
  Polynomial acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Polynomial(std::vector<Rational>{*it});
  return acc;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  std::vector<Rational> q(std::max(0, a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    Rational f = r[k] / b.leading();
    q[k - db] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.coeff(j);
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.monic();
  Polynomial g = gcd(p, p.derivative());
  return divmod(p, g).first.monic();
}

Polynomial charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly of non-square matrix");
  const int n = m.rows();
  Matrix h = m;
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h(i, j) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      for (int c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (int r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    for (int k = j + 2; k < n; ++k) {
      if (h(k, j) == 0) continue;
      Rational u = h(k, j) / h(j + 1, j);
      for (int c = 0; c < n; ++c) h(k, c) -= u * h(j + 1, c);
      for (int r = 0; r < n; ++r) h(r, j + 1) += u * h(r, k);
    }
  }
  std::vector<Polynomial> p(n + 1);
  p[0] = Polynomial(std::vector<Rational>{1});
  for (int k = 0; k < n; ++k) {
    p[k + 1] = Polynomial(std::vector<Rational>{-h(k, k), 1}) * p[k];
    Rational prod = 1;
    for (int i = 1; i <= k; ++i) {
      prod *= h(k - i + 1, k - i);
      Rational f = h(k - i, k) * prod;
      if (f != 0) p[k + 1] = p[k + 1] - Polynomial(std::vector<Rational>{f}) * p[k - i];
    }
  }
  return p[n];
}

DiagonalizabilityCertificate diagonalizability(const Matrix& m) {
  DiagonalizabilityCertificate c;
  c.charpoly = charpoly(m);
  c.repeated_factor = gcd(c.charpoly, c.charpoly.derivative());
  c.squarefree = squarefree_part(c.charpoly);
  c.diagonalizable = c.squarefree.evaluate(m).is_zero();
  return c;
}

int krylov_dimension(const std::vector<Matrix>& ops, const Matrix& v, std::vector<int>* profile) {
  // Incrementally reduced basis: pivot index -> vector with 1 at pivot.
  const int n = v.rows();
  std::map<int, std::vector<Rational>> basis;
  auto insert = [&](std::vector<Rational> x) -> bool {
    for (const auto& [p, b] : basis) {
      if (x[p] == 0) continue;
      Rational f = x[p];
      for (int i = 0; i < n; ++i)
        if (b[i] != 0) x[i] -= f * b[i];
    }
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (x[i] != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    Rational inv = 1 / x[p];
    for (auto& e : x) e *= inv;
    for (auto& [q, b] : basis) {
      if (b[p] == 0) continue;
      Rational f = b[p];
      for (int i = 0; i < n; ++i)
        if (x[i] != 0) b[i] -= f * x[i];
    }
    basis.emplace(p, std::move(x));
    return true;
  };
  std::vector<std::vector<Rational>> frontier;
  std::vector<Rational> v0(n);
  for (int i = 0; i < n; ++i) v0[i] = v(i, 0);
  if (insert(v0)) frontier.push_back(v0);
  if (profile) profile->assign(1, static_cast<int>(basis.size()));
  while (!frontier.empty() && static_cast<int>(basis.size()) < n) {
    std::vector<std::vector<Rational>> next;
    for (const auto& f : frontier)
      for (const auto& op : ops) {
        std::vector<Rational> y(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (op(i, j) != 0 && f[j] != 0) y[i] += op(i, j) * f[j];
        if (insert(y)) next.push_back(y);
      }
    frontier = std::move(next);
    if (profile) profile->push_back(static_cast<int>(basis.size()));
  }
  return static_cast<int>(basis.size());
}

}  // namespace gaudin
