#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "gaudin/errors.hpp"
#include "gaudin/duality.hpp"
#include "gaudin/kz.hpp"

namespace gaudin {

namespace odeint = boost::numeric::odeint;
using State = std::vector<cplx>;

CMat KZSystem::hamiltonian(const Point& z, int i) const {
  CMat h = CMat::Zero(dim, dim);
  for (int j = 0; j < ell; ++j) {
    if (j == i) continue;
    h += omega.at({std::min(i, j), std::max(i, j)}) / (z[i] - z[j]);
  }
  return h;
}

CMat KZSystem::connection(const Point& z, const Point& dz) const {
  // sum_i dz_i H^i = sum_{i<j} Omega^{ij} (dz_i - dz_j) / (z_i - z_j)
  CMat a = CMat::Zero(dim, dim);
  for (const auto& [key, o] : omega) {
    auto [i, j] = key;
    a += o * ((dz[i] - dz[j]) / (z[i] - z[j]));
  }
  return a / kappa;
}

CMat to_complex(const Matrix& m) {
  CMat out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

KZSystem make_kz(const QuadraticData& q, cplx kappa, const Matrix* subspace) {
  if (kappa == cplx(0)) throw PreconditionError("kappa must be nonzero");
  KZSystem s;
  s.ell = q.ell;
  s.kappa = kappa;
  for (const auto& [key, o] : q.omega) {
    Matrix m = subspace ? restrict_to(o, *subspace) : o;
    s.dim = m.rows();
    s.omega[key] = to_complex(m);
  }
  return s;
}

Point point_on_path(const std::vector<Point>& path, double t) {
  if (path.size() == 1) return path[0];
  int seg = std::clamp(static_cast<int>(std::floor(t)), 0, static_cast<int>(path.size()) - 2);
  double s = t - seg;
  Point z(path[seg].size());
  for (size_t i = 0; i < z.size(); ++i) z[i] = path[seg][i] + s * (path[seg + 1][i] - path[seg][i]);
  return z;
}

namespace {

// min over s in [0,1] of |a + s b|
double segment_distance(cplx a, cplx b) {
  double bb = std::norm(b);
  double s = bb == 0 ? 0 : std::clamp(-std::real(std::conj(a) * b) / bb, 0.0, 1.0);
  return std::abs(a + s * b);
}

}  // namespace

double path_clearance(const std::vector<Point>& path) {
  double best = INFINITY;
  const size_t ell = path.at(0).size();
  for (size_t seg = 0; seg < path.size(); ++seg) {
    const Point& a = path[seg];
    const Point& b = seg + 1 < path.size() ? path[seg + 1] : path[seg];
    for (size_t i = 0; i < ell; ++i)
      for (size_t j = i + 1; j < ell; ++j) best = std::min(best, segment_distance(a[i] - a[j], (b[i] - b[j]) - (a[i] - a[j])));
  }
  return best;
}

PathSolution integrate_path(const KZSystem& sys, const std::vector<Point>& path, const CVec& psi0, double rel_tol) {
  if (path.empty()) throw PreconditionError("empty path");
  for (const auto& p : path)
    if (static_cast<int>(p.size()) != sys.ell) throw PreconditionError("waypoints need one coordinate per factor");
  if (psi0.size() != sys.dim) throw PreconditionError("initial vector has the wrong dimension");
  double clear = path_clearance(path);
  if (clear < kClearance)
    throw PreconditionError("path comes within " + std::to_string(clear) + " of a diagonal (minimum clearance 1e-3)");
  PathSolution sol;
  sol.path = path;
  State x(psi0.data(), psi0.data() + psi0.size());
  auto record = [&](const State& s, double t) {
    KZSample k;
    k.t = t;
    k.z = point_on_path(path, t);
    k.psi = Eigen::Map<const CVec>(s.data(), static_cast<Eigen::Index>(s.size()));
    sol.samples.push_back(std::move(k));
  };
  record(x, 0);
  for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
    Point dz(sys.ell);
    bool moving = false;
    for (int i = 0; i < sys.ell; ++i) {
      dz[i] = path[seg + 1][i] - path[seg][i];
      if (dz[i] != cplx(0)) moving = true;
    }
    if (!moving) {
      record(x, static_cast<double>(seg + 1));
      continue;
    }
    auto rhs = [&](const State& y, State& dy, double t) {
      CMat a = sys.connection(point_on_path(path, t), dz);
      Eigen::Map<const CVec> yv(y.data(), static_cast<Eigen::Index>(y.size()));
      CVec r = a * yv;
      dy.assign(r.data(), r.data() + r.size());
    };
    auto stepper = odeint::make_controlled(rel_tol * 1e-2, rel_tol, odeint::runge_kutta_dopri5<State>());
    bool first = true;
    try {
      sol.steps += static_cast<long>(odeint::integrate_adaptive(stepper, rhs, x, static_cast<double>(seg), static_cast<double>(seg + 1), 1e-3,
                                                                [&](const State& s, double t) {
                                                                  if (first) {
                                                                    first = false;
                                                                    return;
                                                                  }
                                                                  record(s, t);
                                                                }));
    } catch (const std::exception& e) {
      throw VerificationError("integration failed on segment " + std::to_string(seg) + ": " + e.what());
    }
  }
  return sol;
}

CMat transport(const KZSystem& sys, const std::vector<Point>& path, double rel_tol) {
  CMat out(sys.dim, sys.dim);
  for (int j = 0; j < sys.dim; ++j) {
    CVec e = CVec::Zero(sys.dim);
    e(j) = 1;
    out.col(j) = integrate_path(sys, path, e, rel_tol).samples.back().psi;
  }
  return out;
}

CMat monodromy(const KZSystem& sys, const std::vector<Point>& loop, double rel_tol) {
  if (loop.empty()) throw PreconditionError("empty loop");
  for (int i = 0; i < sys.ell; ++i)
    if (std::abs(loop.front()[i] - loop.back()[i]) > 1e-12) throw PreconditionError("monodromy needs a closed loop");
  return transport(sys, loop, rel_tol);
}

Rational flatness_residual_exact(const TensorSpace& t, const CasimirTensor& om, const WeightBlock& b,
                                 const std::vector<Rational>& z, const Rational& kappa) {
  check_points(z);
  if (kappa == 0) throw PreconditionError("kappa must be nonzero");
  const int ell = t.length();
  std::map<std::pair<int, int>, Matrix> o;
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      if (i != j) o[{i, j}] = block_matrix(b, b, [&](const SparseVec& v) { return apply_pair_op(t, om, i, j, v); });
  std::vector<Matrix> h(ell, Matrix(b.dim(), b.dim()));
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j)
      if (i != j) h[i] += o[{i, j}] * (1 / (z[i] - z[j]));
  Rational worst = 0;
  for (int i = 0; i < ell; ++i)
    for (int j = 0; j < ell; ++j) {
      if (i == j) continue;
      Rational dij = z[i] - z[j];
      // d_i H^j = Omega^{(ji)} / (z_j - z_i)^2, d_j H^i = Omega^{(ij)} / (z_i - z_j)^2
      Matrix r = o[{j, i}] * (1 / (dij * dij)) - o[{i, j}] * (1 / (dij * dij)) - commutator(h[i], h[j]) * (1 / kappa);
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

double flatness_residual_numeric(const KZSystem& sys, const Point& z) {
  double worst = 0;
  for (int i = 0; i < sys.ell; ++i)
    for (int j = 0; j < sys.ell; ++j) {
      if (i == j) continue;
      const CMat& o = sys.omega.at({std::min(i, j), std::max(i, j)});
      cplx dij = z[i] - z[j];
      CMat hi = sys.hamiltonian(z, i), hj = sys.hamiltonian(z, j);
      CMat r = o / (dij * dij) - o / (dij * dij) - (hi * hj - hj * hi) / sys.kappa;
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

double singular_preservation(const PathSolution& sol, const std::vector<CMat>& raising) {
  double worst = 0;
  for (const auto& s : sol.samples) {
    double n = s.psi.norm();
    if (n == 0) continue;
    for (const auto& e : raising) worst = std::max(worst, (e * s.psi).norm() / n);
  }
  return worst;
}

std::vector<cplx> gauge_factors(const PathSolution& sol, double c, const std::vector<Rational>& levels, cplx kappa) {
  std::vector<cplx> out;
  if (sol.samples.empty()) return out;
  const int ell = static_cast<int>(sol.samples[0].z.size());
  // Continuous log(z_i - z_j) along the path: unwrap over fine sub-steps.
  std::map<std::pair<int, int>, cplx> logs;
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) logs[{i, j}] = std::log(sol.samples[0].z[i] - sol.samples[0].z[j]);
  auto factor = [&]() {
    cplx e = 0;
    for (const auto& [key, l] : logs) {
      auto [i, j] = key;
      e += c * levels[i].get_d() * levels[j].get_d() / kappa * l;
    }
    return e;
  };
  cplx e0 = factor();
  out.push_back(1.0);
  constexpr int kSub = 64;
  for (size_t s = 1; s < sol.samples.size(); ++s) {
    double t0 = sol.samples[s - 1].t, t1 = sol.samples[s].t;
    for (int k = 1; k <= kSub; ++k) {
      Point z = point_on_path(sol.path, t0 + (t1 - t0) * k / kSub);
      for (auto& [key, l] : logs) {
        cplx w = z[key.first] - z[key.second];
        double da = std::arg(w) - l.imag();
        da -= 2 * M_PI * std::round(da / (2 * M_PI));
        l = cplx(std::log(std::abs(w)), l.imag() + da);
      }
    }
    out.push_back(std::exp(factor() - e0));
  }
  return out;
}

PathSolution gauge_transform(const PathSolution& sol, double c, const std::vector<Rational>& levels, cplx kappa) {
  PathSolution out = sol;
  std::vector<cplx> f = gauge_factors(sol, c, levels, kappa);
  for (size_t s = 0; s < out.samples.size(); ++s) out.samples[s].psi *= f[s];
  return out;
}

}  // namespace gaudin

namespace gaudin {

int solution_rank(const CMat& fundamental, double tol) {
  if (fundamental.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(fundamental);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

CVec random_vector(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  CVec v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = u(rng), im = u(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

Matrix tensor_embedding(const TensorSpace& big, const TensorSpace& small, const WeightBlock& big_block,
                        const WeightBlock& small_block) {
  const int ell = big.length();
  if (small.length() != ell) throw PreconditionError("tensor lengths differ");
  std::vector<std::vector<SparseVec>> per(ell);
  for (int i = 0; i < ell; ++i) per[i] = band_embedding(big.factor(i), small.factor(i));
  Matrix out(big_block.dim(), small_block.dim());
  for (int col = 0; col < small_block.dim(); ++col) {
    std::vector<int> tup = small.decode(small_block.codes[col]);
    std::vector<std::pair<std::vector<int>, Rational>> terms{{{}, Rational(1)}};
    for (int i = 0; i < ell; ++i) {
      std::vector<std::pair<std::vector<int>, Rational>> next;
      for (const auto& [partial, c] : terms)
        for (const auto& [b, x] : per[i][tup[i]]) {
          auto p = partial;
          p.push_back(static_cast<int>(b));
          next.emplace_back(std::move(p), c * x);
        }
      terms = std::move(next);
    }
    for (const auto& [p, c] : terms) {
      auto it = big_block.index.find(big.encode(p));
      if (it == big_block.index.end()) throw VerificationError("embedded vector leaves the weight block");
      out(it->second, col) += c;
    }
  }
  return out;
}

KZTruncationReport kz_truncation_stability(const std::vector<ModulePtr>& big, const std::vector<ModulePtr>& small,
                                           const Weight& mu, const std::vector<Point>& path, cplx kappa,
                                           double rel_tol, std::mt19937_64& rng) {
  TensorSpace tb(big), ts(small);
  WeightBlock bb = make_block(tb, mu), sb = make_block(ts, mu);
  KZTruncationReport r;
  r.dim_big = bb.dim();
  r.dim_small = sb.dim();
  Matrix T = tensor_embedding(tb, ts, bb, sb);
  QuadraticData qb = quadratic_data(tb, casimir(tb.algebra()), bb);
  QuadraticData qs = quadratic_data(ts, casimir(ts.algebra()), sb);
  r.intertwines = true;
  for (const auto& [key, o] : qb.omega) r.intertwines = r.intertwines && (o * T == T * qs.omega.at(key));
  KZSystem sys_b = make_kz(qb, kappa), sys_s = make_kz(qs, kappa);
  CVec psi0 = random_vector(sb.dim(), rng);
  CMat tc = to_complex(T);
  CVec end_s = integrate_path(sys_s, path, psi0, rel_tol).samples.back().psi;
  CVec end_b = integrate_path(sys_b, path, tc * psi0, rel_tol).samples.back().psi;
  r.deviation = (tc * end_s - end_b).norm() / std::max(end_b.norm(), 1e-300);
  return r;
}

}  // namespace gaudin
