#include <algorithm>

#include "gaudin/errors.hpp"
#include "gaudin/gaudin.hpp"
#include "gaudin/lax.hpp"

namespace gaudin {

namespace {

constexpr int kMaxPoleOrder = 3;

Rational power(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PartialFraction PartialFraction::constant(std::vector<Rational> poles, const Matrix& c) {
  PartialFraction f(std::move(poles), c.rows());
  f.add(-1, 0, c);
  return f;
}

PartialFraction PartialFraction::pole(std::vector<Rational> poles, int i, int order, const Matrix& c) {
  PartialFraction f(std::move(poles), c.rows());
  f.add(i, order, c);
  return f;
}

Matrix PartialFraction::coeff(int i, int order) const {
  auto it = terms_.find({i, order});
  return it == terms_.end() ? Matrix(dim_, dim_) : it->second;
}

int PartialFraction::max_order() const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.second);
  return m;
}

void PartialFraction::add(int i, int order, const Matrix& c) {
  if (order > kMaxPoleOrder) throw VerificationError("pole order exceeds " + std::to_string(kMaxPoleOrder));
  if (c.is_zero()) return;
  auto [it, ins] = terms_.try_emplace({i, order}, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PartialFraction PartialFraction::operator+(const PartialFraction& o) const {
  PartialFraction r = *this;
  if (r.dim_ == 0) {
    r.poles_ = o.poles_;
    r.dim_ = o.dim_;
  }
  for (const auto& [k, c] : o.terms_) r.add(k.first, k.second, c);
  return r;
}

PartialFraction PartialFraction::operator-(const PartialFraction& o) const { return *this + o * Rational(-1); }

PartialFraction PartialFraction::operator*(const Rational& s) const {
  PartialFraction r(poles_, dim_);
  if (s == 0) return r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
  return r;
}

PartialFraction PartialFraction::operator*(const PartialFraction& o) const {
  PartialFraction r(poles_.empty() ? o.poles_ : poles_, std::max(dim_, o.dim_));
  for (const auto& [ka, A] : terms_)
    for (const auto& [kb, B] : o.terms_) {
      Matrix ab = A * B;
      if (ab.is_zero()) continue;
      const auto [a, m] = ka;
      const auto [b, n] = kb;
      if (m == 0) {
        r.add(b, n, ab);
      } else if (n == 0) {
        r.add(a, m, ab);
      } else if (a == b) {
        r.add(a, m + n, ab);
      } else {
        // 1/((u-x)^m (u-y)^n) re-expanded at x and at y
        const Rational& x = r.poles_[a];
        const Rational& y = r.poles_[b];
        for (int k = 1; k <= m; ++k) {
          Rational c = binomial(m + n - k - 1, n - 1) / power(x - y, m + n - k);
          if ((m - k) % 2) c = -c;
          r.add(a, k, ab * c);
        }
        for (int k = 1; k <= n; ++k) {
          Rational c = binomial(m + n - k - 1, m - 1) / power(y - x, m + n - k);
          if ((n - k) % 2) c = -c;
          r.add(b, k, ab * c);
        }
      }
    }
  return r;
}

PartialFraction PartialFraction::derivative() const {
  PartialFraction r(poles_, dim_);
  for (const auto& [k, c] : terms_)
    if (k.second > 0) r.add(k.first, k.second + 1, c * Rational(-k.second));
  return r;
}

bool PartialFraction::operator==(const PartialFraction& o) const {
  std::map<std::pair<int, int>, Matrix> a = terms_, b = o.terms_;
  return a == b;
}

Matrix PartialFraction::evaluate(const Rational& u) const {
  Matrix r(dim_, dim_);
  for (const auto& [k, c] : terms_) {
    if (k.second == 0) {
      r += c;
      continue;
    }
    if (u == poles_[k.first]) throw PreconditionError("evaluation at a pole");
    r += c * (1 / power(u - poles_[k.first], k.second));
  }
  return r;
}

DiffOpPoly DiffOpPoly::operator+(const DiffOpPoly& o) const {
  DiffOpPoly r = *this;
  for (const auto& [d, f] : o.coeffs) {
    auto it = r.coeffs.find(d);
    if (it == r.coeffs.end())
      r.coeffs.emplace(d, f);
    else
      it->second = it->second + f;
  }
  return r;
}

DiffOpPoly DiffOpPoly::operator*(const DiffOpPoly& o) const {
  // (f d^a)(g d^b) = sum_c C(a,c) f g^(c) d^{a-c+b}
  DiffOpPoly r;
  for (const auto& [a, f] : coeffs)
    for (const auto& [b, g] : o.coeffs) {
      PartialFraction gc = g;
      for (int c = 0; c <= a; ++c) {
        PartialFraction term = (f * gc) * binomial(a, c);
        if (!term.is_zero()) {
          DiffOpPoly t;
          t.coeffs.emplace(a - c + b, term);
          r = r + t;
        }
        if (c < a) gc = gc.derivative();
      }
    }
  return r;
}

const PartialFraction* DiffOpPoly::coeff(int degree) const {
  auto it = coeffs.find(degree);
  return it == coeffs.end() ? nullptr : &it->second;
}

Matrix slot_matrix(const TensorSpace& t, int slot, const BasisElement& e) {
  WeightBlock b = full_block(t);
  return block_matrix(b, b, [&](const SparseVec& v) { return t.apply(slot, e, v); });
}

std::vector<PartialFraction> lax_str_expansion(const TensorSpace& t, const std::vector<Rational>& z, int k) {
  if (k < 1 || k > 3) throw PreconditionError("k must be 1, 2 or 3");
  if (static_cast<int>(z.size()) != t.length()) throw PreconditionError("one point per tensor factor required");
  check_points(z);
  const IndexSet& idx = t.algebra().indices;
  const auto& ord = idx.ordered();
  const int N = idx.size(), D = static_cast<int>(t.total_dim());
  std::vector<std::vector<DiffOpPoly>> lax(N, std::vector<DiffOpPoly>(N));
  for (int r = 0; r < N; ++r)
    for (int s = 0; s < N; ++s) {
      DiffOpPoly& e = lax[r][s];
      if (r == s) e.coeffs.emplace(1, PartialFraction::constant(z, Matrix::identity(D)));
      PartialFraction f(z, D);
      for (int i = 0; i < t.length(); ++i) {
        Matrix m = slot_matrix(t, i, BasisElement{ord[r], ord[s]});
        f.add(i, 1, ord[r].parity() ? m : m * Rational(-1));
      }
      if (!f.is_zero()) e.coeffs.emplace(0, f);
    }
  auto power = lax;
  for (int step = 1; step < k; ++step) {
    std::vector<std::vector<DiffOpPoly>> next(N, std::vector<DiffOpPoly>(N));
    for (int r = 0; r < N; ++r)
      for (int s = 0; s < N; ++s)
        for (int q = 0; q < N; ++q) next[r][s] = next[r][s] + power[r][q] * lax[q][s];
    power = std::move(next);
  }
  DiffOpPoly str;
  for (int r = 0; r < N; ++r) {
    DiffOpPoly d = power[r][r];
    if (ord[r].parity())
      for (auto& [deg, f] : d.coeffs) f = f * Rational(-1);
    str = str + d;
  }
  std::vector<PartialFraction> out;
  for (int j = 0; j <= k; ++j) {
    const PartialFraction* f = str.coeff(k - j);
    PartialFraction g = f ? *f : PartialFraction(z, D);
    if (g.max_order() > k) throw VerificationError("pole order above k in Str(L^k)");
    out.push_back(g);
  }
  return out;
}

PartialFraction lax_closed_form(const TensorSpace& t, const std::vector<Rational>& z, int k) {
  if (k < 1 || k > 3) throw PreconditionError("k must be 1, 2 or 3");
  check_points(z);
  const Algebra& alg = t.algebra();
  const IndexSet& idx = alg.indices;
  const auto& ord = idx.ordered();
  const int ell = t.length(), D = static_cast<int>(t.total_dim());
  WeightBlock full = full_block(t);
  PartialFraction out(z, D);

  // Single-slot invariants.
  std::vector<Matrix> cartan_sum(ell, Matrix(D, D)), quad(ell, Matrix(D, D)), cube(ell, Matrix(D, D));
  for (int i = 0; i < ell; ++i) {
    std::map<std::pair<int, int>, Matrix> e;
    for (HalfIndex r : ord)
      for (HalfIndex s : ord) e[{r.doubled, s.doubled}] = slot_matrix(t, i, BasisElement{r, s});
    auto E = [&](HalfIndex r, HalfIndex s) -> const Matrix& { return e.at({r.doubled, s.doubled}); };
    for (HalfIndex r : ord) {
      cartan_sum[i] += E(r, r);
      for (HalfIndex s : ord) {
        Matrix q = E(r, s) * E(s, r);
        quad[i] += s.parity() ? q * Rational(-1) : q;
        if (k == 3)
          for (HalfIndex tt : ord) {
            Matrix c = E(r, s) * E(s, tt) * E(tt, r);
            cube[i] += (s.parity() ^ tt.parity()) ? c * Rational(-1) : c;
          }
      }
    }
  }

  if (k == 1) {
    for (int i = 0; i < ell; ++i) out.add(i, 1, cartan_sum[i] * Rational(-1));
    return out;
  }
  Algebra plain{idx, false};
  QuadraticData qd = quadratic_data(t, casimir(plain), full);
  if (k == 2) {
    for (int i = 0; i < ell; ++i) {
      out.add(i, 1, quadratic_hamiltonian(qd, z, i) * Rational(2));
      out.add(i, 2, quad[i] + cartan_sum[i]);
    }
    return out;
  }
  CubicData cd = cubic_data(t, full);
  const int m = idx.even_count(), n = idx.odd_count();
  for (int i = 0; i < ell; ++i) {
    Matrix s1 = cubic_hamiltonian(cd, z, i, HamKind::cubicC) * Rational(3);
    Matrix s2 = cubic_hamiltonian(cd, z, i, HamKind::cubicD) * Rational(3) +
                quadratic_hamiltonian(qd, z, i) * Rational(2 * (m - n) + 3);
    for (int j = 0; j < ell; ++j)
      if (j != i) {
        Matrix cross(D, D);
        for (HalfIndex r : ord) {
          Matrix er = slot_matrix(t, i, BasisElement{r, r});
          for (HalfIndex s : ord) cross += er * slot_matrix(t, j, BasisElement{s, s});
        }
        s2 -= cross * Rational(2 / (z[i] - z[j]));
      }
    Matrix s3 = cube[i] + quad[i] * Rational(3) + cartan_sum[i] * Rational(2);
    out.add(i, 1, s1 * Rational(-1));
    out.add(i, 2, s2 * Rational(-1));
    out.add(i, 3, s3 * Rational(-1));
  }
  return out;
}

}  // namespace gaudin
