#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "gaudin/errors.hpp"
#include "gaudin/gaudin.hpp"

namespace gaudin {

CasimirTensor casimir(const Algebra& alg) {
  CasimirTensor om;
  om.algebra = alg;
  const auto& ord = alg.indices.ordered();
  for (HalfIndex a : ord)
    for (HalfIndex b : ord) om.terms.push_back({b.parity() ? Rational(-1) : Rational(1), {a, b}, {b, a}});
  if (alg.central)
    for (HalfIndex a : ord) {
      if (!a.negative()) continue;
      om.terms.push_back({-1, {a, a}, {a, a}, true, false});
      om.terms.push_back({-1, {a, a}, {a, a}, false, true});
    }
  return om;
}

SparseVec apply_slot(const TensorSpace& t, const Algebra& alg, int slot, const BasisElement& e, const SparseVec& v) {
  return alg.central ? t.apply_central(slot, e, v) : t.apply(slot, e, v);
}

SparseVec apply_pair_op(const TensorSpace& t, const CasimirTensor& om, int i, int j, const SparseVec& v) {
  if (i < 0 || j < 0 || i >= t.length() || j >= t.length() || i == j) throw PreconditionError("pair slots out of range");
  SparseVec out;
  for (const auto& term : om.terms) {
    SparseVec w = term.right_k ? scaled(v, t.factor(j).level) : apply_slot(t, om.algebra, j, term.right, v);
    if (w.empty()) continue;
    w = term.left_k ? scaled(w, t.factor(i).level) : apply_slot(t, om.algebra, i, term.left, w);
    axpy(out, term.coeff, w);
  }
  return out;
}

WeightBlock full_block(const TensorSpace& t) {
  WeightBlock b;
  for (Key c = 0; c < t.total_dim(); ++c) {
    b.index[c] = static_cast<int>(b.codes.size());
    b.codes.push_back(c);
  }
  return b;
}

Matrix block_matrix(const WeightBlock& from, const WeightBlock& to, const std::function<SparseVec(const SparseVec&)>& op) {
  Matrix m(to.dim(), from.dim());
  for (int c = 0; c < from.dim(); ++c)
    for (const auto& [code, a] : op(SparseVec{{from.codes[c], 1}})) {
      auto it = to.index.find(code);
      if (it == to.index.end()) throw VerificationError("operator leaves the target weight space " + to.mu.str());
      m(it->second, c) = a;
    }
  return m;
}

Matrix diagonal_action(const TensorSpace& t, const Algebra& alg, const BasisElement& x, const WeightBlock& from,
                       const WeightBlock& to) {
  return block_matrix(from, to, [&](const SparseVec& v) {
    SparseVec out;
    for (int s = 0; s < t.length(); ++s) axpy(out, 1, apply_slot(t, alg, s, x, v));
    return out;
  });
}

std::string kind_name(HamKind k) {
  switch (k) {
    case HamKind::quadratic: return "quadratic";
    case HamKind::cubicC: return "cubicC";
    case HamKind::cubicD: return "cubicD";
  }
  return "";
}

HamKind parse_kind(const std::string& s) {
  if (s == "quadratic") return HamKind::quadratic;
  if (s == "cubicC") return HamKind::cubicC;
  if (s == "cubicD") return HamKind::cubicD;
  throw PreconditionError("unknown Hamiltonian kind '" + s + "'");
}

void check_points(const std::vector<Rational>& z) {
  if (z.size() < 2) throw PreconditionError("need at least two points");
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) throw PreconditionError("points z_" + std::to_string(i + 1) + " and z_" + std::to_string(j + 1) + " coincide");
}

QuadraticData quadratic_data(const TensorSpace& t, const CasimirTensor& om, const WeightBlock& b) {
  QuadraticData q;
  q.ell = t.length();
  for (int i = 0; i < q.ell; ++i)
    for (int j = i + 1; j < q.ell; ++j)
      q.omega[{i, j}] = block_matrix(b, b, [&](const SparseVec& v) { return apply_pair_op(t, om, i, j, v); });
  return q;
}

Matrix quadratic_hamiltonian(const QuadraticData& q, const std::vector<Rational>& z, int i) {
  if (static_cast<int>(z.size()) != q.ell) throw PreconditionError("expected " + std::to_string(q.ell) + " points");
  check_points(z);
  Matrix h;
  for (int j = 0; j < q.ell; ++j) {
    if (j == i) continue;
    const Matrix& o = q.omega.at({std::min(i, j), std::max(i, j)});
    Matrix term = o * Rational(1 / (z[i] - z[j]));
    h = h.rows() == 0 ? term : h + term;
  }
  return h;
}

int cubic_sign(HalfIndex r, HalfIndex s, HalfIndex t) {
  return ((s.parity() ^ t.parity()) && !(r.parity() ^ t.parity())) ? -1 : 1;
}

CubicData cubic_data(const TensorSpace& t, const WeightBlock& b) {
  const Algebra& alg = t.algebra();
  const IndexSet& idx = alg.indices;
  if (alg.central || idx.p() != 0 || idx.q() != 0 || idx.flavor() == Flavor::wide)
    throw PreconditionError("cubic Hamiltonians are defined for gl(m|n) and classical I_(0,k) only");
  CubicData c;
  c.ell = t.length();
  const int ell = c.ell, n = b.dim();
  const auto& ord = idx.ordered();
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      if (j == i) continue;
      c.a[{i, j}] = Matrix(n, n);
      c.b[{i, j}] = Matrix();
      for (int k = 0; k < ell; ++k)
        if (k != i && k != j) c.triple[{i, j, k}] = Matrix(n, n);
    }
  auto put = [&](Matrix& m, int col, const SparseVec& v, int sign) {
    for (const auto& [code, a] : v) {
      auto it = b.index.find(code);
      if (it == b.index.end()) throw VerificationError("cubic term leaves the weight space " + b.mu.str());
      m(it->second, col) += sign * a;
    }
  };
  for (int col = 0; col < n; ++col) {
    SparseVec v0{{b.codes[col], 1}};
    for (HalfIndex s : ord)
      for (HalfIndex tt : ord) {
        for (int k = 0; k < ell; ++k) {
          SparseVec v1 = t.apply(k, BasisElement{s, tt}, v0);
          if (v1.empty()) continue;
          for (HalfIndex r : ord) {
            int sign = cubic_sign(r, s, tt);
            for (int j = 0; j < ell; ++j) {
              SparseVec v2 = t.apply(j, BasisElement{tt, r}, v1);
              if (v2.empty()) continue;
              for (int i = 0; i < ell; ++i) {
                if (i == j) continue;
                SparseVec v3 = t.apply(i, BasisElement{r, s}, v2);
                if (v3.empty()) continue;
                if (i != j && j != k && i != k)
                  put(c.triple[{i, j, k}], col, v3, sign);
                else if (i != j && j == k)
                  put(c.a[{i, j}], col, v3, sign);
              }
            }
          }
        }
      }
  }
  // E_rs^(j) E_tr^(i) E_st^(i) is the (j,i) instance of the two-slot pattern.
  for (auto& [key, m] : c.b) m = c.a.at({key.second, key.first});
  return c;
}

Matrix cubic_hamiltonian(const CubicData& c, const std::vector<Rational>& z, int i, HamKind kind) {
  if (static_cast<int>(z.size()) != c.ell) throw PreconditionError("expected " + std::to_string(c.ell) + " points");
  if (kind == HamKind::quadratic) throw PreconditionError("cubic_hamiltonian called with the quadratic kind");
  check_points(z);
  Matrix h;
  auto acc = [&](const Matrix& m, const Rational& f) { h = h.rows() == 0 ? m * f : h + m * f; };
  for (int j = 0; j < c.ell; ++j) {
    if (j == i) continue;
    Rational dij = z[i] - z[j];
    if (kind == HamKind::cubicD) {
      acc(c.b.at({i, j}), 1 / dij);
      continue;
    }
    acc(c.a.at({i, j}) - c.b.at({i, j}), 1 / (dij * dij));
    for (int k = 0; k < c.ell; ++k)
      if (k != i && k != j) acc(c.triple.at({i, j, k}), 1 / (dij * (z[i] - z[k])));
  }
  return h;
}

Rational central_shift(const IndexSet& idx, const std::vector<Rational>& levels, const std::vector<Rational>& z, int i) {
  check_points(z);
  Rational f = idx.flavor() == Flavor::classical ? Rational(-idx.p()) : Rational(idx.p() - idx.q());
  Rational s = 0;
  for (size_t j = 0; j < z.size(); ++j)
    if (static_cast<int>(j) != i) s += levels[i] * levels[j] / (z[i] - z[j]);
  return f * s;
}

HamiltonianFamily build_family(const TensorSpace& t, const Algebra& alg, const WeightBlock& b, const Matrix* subspace,
                               const std::vector<Rational>& z, HamKind kind) {
  HamiltonianFamily fam;
  fam.kind = kind;
  fam.z = z;
  fam.weight = b.mu;
  std::vector<Matrix> full;
  if (kind == HamKind::quadratic) {
    QuadraticData q = quadratic_data(t, casimir(alg), b);
    for (int i = 0; i < t.length(); ++i) full.push_back(quadratic_hamiltonian(q, z, i));
  } else {
    CubicData c = cubic_data(t, b);
    for (int i = 0; i < t.length(); ++i) full.push_back(cubic_hamiltonian(c, z, i, kind));
  }
  for (auto& m : full) fam.matrices.push_back(subspace ? restrict_to(m, *subspace) : m);
  return fam;
}

Rational commutator_residual(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  Rational worst = 0;
  for (const auto& x : a)
    for (const auto& y : b) worst = std::max(worst, max_abs(commutator(x, y)));
  return worst;
}

namespace {

Eigen::MatrixXcd to_complex(const Matrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

std::vector<Eigenvalue> cluster(std::vector<std::complex<double>> vals, double tol) {
  std::sort(vals.begin(), vals.end(), [](auto a, auto b) {
    return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
  });
  std::vector<Eigenvalue> out;
  for (const auto& v : vals) {
    if (!out.empty() && std::abs(out.back().value - v) <= tol * std::max(1.0, std::abs(v))) {
      ++out.back().multiplicity;
      continue;
    }
    out.push_back({v, 1});
  }
  for (auto& e : out) {
    // flush signed zeros so output is stable
    if (std::abs(e.value.real()) < tol) e.value.real(0);
    if (std::abs(e.value.imag()) < tol) e.value.imag(0);
  }
  return out;
}

}  // namespace

JointSpectrum joint_diagonalize(const std::vector<Matrix>& family, double tol, std::mt19937_64& rng) {
  JointSpectrum js;
  if (family.empty()) return js;
  const int n = family[0].rows();
  js.commuting = commutator_residual(family, family) == 0;
  if (!js.commuting) throw VerificationError("joint diagonalization needs a commuting family");
  js.diagonalizable = true;
  for (const auto& m : family) {
    js.certificates.push_back(diagonalizability(m));
    js.diagonalizable = js.diagonalizable && js.certificates.back().diagonalizable;
  }
  if (n == 0) {
    js.spectra.assign(family.size(), {});
    return js;
  }
  std::vector<Eigen::MatrixXcd> fm;
  for (const auto& m : family) fm.push_back(to_complex(m));
  std::uniform_real_distribution<double> coef(0.5, 1.5);
  double best = INFINITY;
  Eigen::MatrixXcd bestV;
  for (int trial = 0; trial < 8 && best > tol; ++trial) {
    Eigen::MatrixXcd comb = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& m : fm) comb += coef(rng) * m;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comb);
    Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
    if (!lu.isInvertible()) continue;
    Eigen::MatrixXcd vi = lu.inverse();
    double res = 0;
    for (const auto& m : fm) {
      Eigen::MatrixXcd d = vi * m * v;
      double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (r != c) res = std::max(res, std::abs(d(r, c)) / scale);
    }
    if (res < best) {
      best = res;
      bestV = v;
    }
  }
  js.residual = best;
  if (bestV.size() == 0) return js;
  Eigen::MatrixXcd vi = bestV.inverse();
  js.joint.assign(n, std::vector<std::complex<double>>(family.size()));
  js.spectra.resize(family.size());
  for (size_t i = 0; i < fm.size(); ++i) {
    Eigen::MatrixXcd d = vi * fm[i] * bestV;
    std::vector<std::complex<double>> vals;
    for (int r = 0; r < n; ++r) {
      js.joint[r][i] = d(r, r);
      vals.push_back(d(r, r));
    }
    js.spectra[i] = cluster(vals, std::sqrt(tol));
  }
  return js;
}

CyclicReport cyclic_vector_test(const std::vector<Matrix>& family, int trials, std::mt19937_64& rng) {
  CyclicReport rep;
  if (family.empty()) return rep;
  const int n = family[0].rows();
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int t = 0; t < trials; ++t) {
    Matrix v(n, 1);
    for (int r = 0; r < n; ++r) v(r, 0) = entry(rng);
    rep.profile.clear();
    rep.dimension = krylov_dimension(family, v, &rep.profile);
    rep.trials = t + 1;
    if (rep.dimension == n) {
      rep.cyclic = true;
      break;
    }
  }
  return rep;
}

std::vector<Rational> sample_points(int ell, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> grid(0, 7 * ell);
  std::vector<Rational> z;
  while (static_cast<int>(z.size()) < ell) {
    Rational c(grid(rng), 7);
    c.canonicalize();
    if (std::find(z.begin(), z.end(), c) == z.end()) z.push_back(c);
  }
  return z;
}

}  // namespace gaudin
