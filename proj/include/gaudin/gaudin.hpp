#pragma once

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gaudin/module.hpp"

namespace gaudin {

// One elementary term c * left (x) right; a side with is_k set is the central element K.
struct CasimirTerm {
  Rational coeff;
  BasisElement left, right;
  bool left_k = false, right_k = false;
};

struct CasimirTensor {
  Algebra algebra;
  std::vector<CasimirTerm> terms;
};

// Sum_{a,b} (-1)^{2b} E_ab (x) E_ba, minus K (x) E_a + E_a (x) K over negative a
// when the algebra is centrally extended.
CasimirTensor casimir(const Algebra& alg);

// Single-slot action in the convention of the algebra (central action of
// negative Cartan elements when alg.central).
SparseVec apply_slot(const TensorSpace& t, const Algebra& alg, int slot, const BasisElement& e, const SparseVec& v);
// Omega^{(ij)} applied to v.
SparseVec apply_pair_op(const TensorSpace& t, const CasimirTensor& om, int i, int j, const SparseVec& v);

// Block covering every pure tensor (for full-space checks).
WeightBlock full_block(const TensorSpace& t);
// Matrix of a linear map between blocks, columns indexed by `from`.
Matrix block_matrix(const WeightBlock& from, const WeightBlock& to, const std::function<SparseVec(const SparseVec&)>& op);
// Diagonal action Delta(x) from block `from` into the block of weight from.mu + root(x).
Matrix diagonal_action(const TensorSpace& t, const Algebra& alg, const BasisElement& x, const WeightBlock& from,
                       const WeightBlock& to);

enum class HamKind { quadratic, cubicC, cubicD };
std::string kind_name(HamKind k);
HamKind parse_kind(const std::string& s);

void check_points(const std::vector<Rational>& z);

// z-independent pieces of the quadratic Hamiltonians on one block.
struct QuadraticData {
  int ell = 0;
  std::map<std::pair<int, int>, Matrix> omega;  // i < j, Omega^{(ij)} = Omega^{(ji)}
};
QuadraticData quadratic_data(const TensorSpace& t, const CasimirTensor& om, const WeightBlock& b);
// H^i = sum_{j != i} Omega^{(ij)} / (z_i - z_j), slots 0-based.
Matrix quadratic_hamiltonian(const QuadraticData& q, const std::vector<Rational>& z, int i);

// z-independent pieces of the cubic Hamiltonians (plain gl(m|n) or classical I_(0,k) only).
struct CubicData {
  int ell = 0;
  std::map<std::tuple<int, int, int>, Matrix> triple;  // E_rs^(i) E_tr^(j) E_st^(k), distinct slots
  std::map<std::pair<int, int>, Matrix> a, b;          // E_rs^(i) E_tr^(j) E_st^(j) and E_rs^(j) E_tr^(i) E_st^(i)
};
// Sign of the (r,s,t) term: (-1)^{2(s+t)(2(r+t)+1)}.
int cubic_sign(HalfIndex r, HalfIndex s, HalfIndex t);
CubicData cubic_data(const TensorSpace& t, const WeightBlock& b);
Matrix cubic_hamiltonian(const CubicData& c, const std::vector<Rational>& z, int i, HamKind kind);

// (p - q) sum_{j != i} d_i d_j / (z_i - z_j); classical flavor uses -p.
Rational central_shift(const IndexSet& idx, const std::vector<Rational>& levels, const std::vector<Rational>& z, int i);

// Family of Hamiltonians of one kind on a block, optionally restricted to a
// subspace given by basis columns.
struct HamiltonianFamily {
  HamKind kind = HamKind::quadratic;
  std::vector<Rational> z;
  Weight weight;
  std::vector<Matrix> matrices;  // one per slot
};

HamiltonianFamily build_family(const TensorSpace& t, const Algebra& alg, const WeightBlock& b, const Matrix* subspace,
                               const std::vector<Rational>& z, HamKind kind);

Rational commutator_residual(const std::vector<Matrix>& a, const std::vector<Matrix>& b);

struct Eigenvalue {
  std::complex<double> value;
  int multiplicity = 0;
};

struct JointSpectrum {
  std::vector<DiagonalizabilityCertificate> certificates;  // per family member
  bool commuting = false;
  bool diagonalizable = false;
  double residual = 0;                              // max off-diagonal entry after the joint change of basis
  std::vector<std::vector<std::complex<double>>> joint;  // joint[v][i] = eigenvalue of member i on vector v
  std::vector<std::vector<Eigenvalue>> spectra;          // per member, clustered with multiplicities
};

// Exact certificates plus a floating joint eigenbasis from a random combination.
JointSpectrum joint_diagonalize(const std::vector<Matrix>& family, double tol, std::mt19937_64& rng);

struct CyclicReport {
  bool cyclic = false;
  int dimension = 0;
  std::vector<int> profile;  // Krylov span dimension after each degree
  int trials = 0;
};
CyclicReport cyclic_vector_test(const std::vector<Matrix>& family, int trials, std::mt19937_64& rng);

// Pairwise-distinct rational points on the grid (1/7)Z in [0, ell].
std::vector<Rational> sample_points(int ell, std::mt19937_64& rng);

}  // namespace gaudin
