#pragma once

#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaudin/gaudin.hpp"

namespace gaudin {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Point = std::vector<cplx>;

// Minimum distance between any two points along an admissible path.
constexpr double kClearance = 1e-3;

// kappa d_i psi = H^i psi on one weight block (or an invariant subspace of it).
struct KZSystem {
  int ell = 0;
  int dim = 0;
  cplx kappa = 1.0;
  std::map<std::pair<int, int>, CMat> omega;  // i < j

  CMat hamiltonian(const Point& z, int i) const;
  // d psi / dt along the straight segment with velocity dz.
  CMat connection(const Point& z, const Point& dz) const;
};

CMat to_complex(const Matrix& m);
KZSystem make_kz(const QuadraticData& q, cplx kappa, const Matrix* subspace = nullptr);

struct KZSample {
  double t = 0;  // segment s covers [s, s+1]
  Point z;
  CVec psi;
};

struct PathSolution {
  std::vector<Point> path;  // waypoints
  std::vector<KZSample> samples;
  long steps = 0;
};

Point point_on_path(const std::vector<Point>& path, double t);
// Smallest pairwise distance along a piecewise-linear path.
double path_clearance(const std::vector<Point>& path);

PathSolution integrate_path(const KZSystem& sys, const std::vector<Point>& path, const CVec& psi0, double rel_tol);
// Transport of a basis of initial conditions; column j evolves e_j.
CMat transport(const KZSystem& sys, const std::vector<Point>& path, double rel_tol);
CMat monodromy(const KZSystem& sys, const std::vector<Point>& loop, double rel_tol);

// Exact flatness residual: max over i != j of |d_i H^j - d_j H^i - [H^i, H^j] / kappa|, with
// Omega^{(ij)} and Omega^{(ji)} assembled independently.
Rational flatness_residual_exact(const TensorSpace& t, const CasimirTensor& om, const WeightBlock& b,
                                 const std::vector<Rational>& z, const Rational& kappa);
double flatness_residual_numeric(const KZSystem& sys, const Point& z);

// max over samples and raising matrices of |e psi| / |psi|.
double singular_preservation(const PathSolution& sol, const std::vector<CMat>& raising);

// prod_{i<j} (z_i - z_j)^{c d_i d_j / kappa} continued along the path, normalized to 1 at
// the first sample. c = q - p converts super solutions from the plain to the central
// convention, c = p does the same for classical ones; -c converts back.
std::vector<cplx> gauge_factors(const PathSolution& sol, double c, const std::vector<Rational>& levels, cplx kappa);
PathSolution gauge_transform(const PathSolution& sol, double c, const std::vector<Rational>& levels, cplx kappa);

// Numerical rank of a transport matrix (singular values above tol * largest).
int solution_rank(const CMat& fundamental, double tol = 1e-8);

CVec random_vector(int dim, std::mt19937_64& rng);

// Block of the band tensor product mapped into the block of the full one, factor
// by factor through band_embedding. Rows follow `big_block`, columns `small_block`.
Matrix tensor_embedding(const TensorSpace& big, const TensorSpace& small, const WeightBlock& big_block,
                        const WeightBlock& small_block);

// Solve on the band system from psi0 and on the full system from T psi0, compare endpoints.
struct KZTruncationReport {
  int dim_small = 0, dim_big = 0;
  bool intertwines = false;  // Omega_big T == T Omega_small exactly
  double deviation = 0;      // |T psi_small(end) - psi_big(end)| / |psi_big(end)|
};
KZTruncationReport kz_truncation_stability(const std::vector<ModulePtr>& big, const std::vector<ModulePtr>& small,
                                           const Weight& mu, const std::vector<Point>& path, cplx kappa,
                                           double rel_tol, std::mt19937_64& rng);

}  // namespace gaudin
