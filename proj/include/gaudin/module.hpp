#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gaudin/linalg.hpp"
#include "gaudin/superalgebra.hpp"
#include "gaudin/weights.hpp"

namespace gaudin {

enum class Provenance { natural, tensor, verma, irreducible, polynomial, restricted };
std::string provenance_name(Provenance p);

// Column j holds the image of basis vector j.
using SparseMatrix = std::vector<SparseVec>;

SparseMatrix sparse_product(const SparseMatrix& x, const SparseMatrix& y);
SparseMatrix sparse_supercommutator(const SparseMatrix& x, int px, const SparseMatrix& y, int py);

// Weight-graded module over the plain algebra with K acting by `level`.
// Weights are stored in the plain convention; central_weight() converts.
// Basis vectors are grouped by weight, each weight space contiguous.
struct WeightModule {
  Algebra algebra;
  Rational level = 0;
  Provenance provenance = Provenance::natural;
  int depth = -1;  // -1 when complete, otherwise the largest height realized
  Weight top;      // highest weight
  std::vector<Weight> weights;
  std::vector<int> offsets;  // size weights.size() + 1
  std::vector<int> heights;  // per weight
  std::vector<int> parities; // per weight
  std::map<std::pair<int, int>, SparseMatrix> action;
  // Irreducible realizations: basis vector i equals f_{word.first} applied to
  // basis vector word.second (simple lowering operator index); top is (-1, -1).
  std::vector<std::pair<int, int>> words;
  // Verma realizations: lowering operators in PBW order and the exponent
  // vector of each basis monomial.
  std::vector<BasisElement> pbw_ops;
  std::vector<std::vector<int>> pbw_exps;

  int dim() const { return offsets.empty() ? 0 : offsets.back(); }
  int num_weights() const { return static_cast<int>(weights.size()); }
  int weight_index(const Weight& w) const;
  int weight_of(int basis) const;
  int weight_dim(int wi) const { return offsets[wi + 1] - offsets[wi]; }
  int parity_of(int basis) const { return parities[weight_of(basis)]; }
  int height_of(int basis) const { return heights[weight_of(basis)]; }
  bool complete() const { return depth < 0; }
  std::map<Weight, int> dims() const;

  const SparseMatrix& matrix(const BasisElement& e) const;
  // Image of a basis vector; throws OutOfBandError when the result could lie
  // beyond the realized depth.
  const SparseVec& act(const BasisElement& e, int basis) const;

  // Rebuilds the weight lookup after weights/offsets change.
  void index_weights();

 private:
  std::map<Weight, int> lookup_;
};

// Central-extension weight of a plain weight at level d.
Weight central_weight(const IndexSet& idx, const Weight& plain, const Rational& d);
// Parity of a weight vector: sum of central coefficients on half-integer indices mod 2.
int weight_parity(const IndexSet& idx, const Weight& plain, const Rational& d);
// Height of w below top in the flavor order.
int weight_height(const IndexSet& idx, const Weight& top, const Weight& w);

WeightModule natural_module(const Algebra& alg);
WeightModule verma_truncated(const Algebra& alg, const Weight& xi, const Rational& level, int depth);
// depth < 0 builds until exhaustion (finite-dimensional modules only).
WeightModule irreducible_truncated(const Algebra& alg, const Weight& xi, const Rational& level, int depth);
WeightModule polynomial_module(const Partition& la, int m, int n);
// Classical irreducible over I_(0,k) labelled by la (highest weight sum la'_i e_{i-1/2}).
WeightModule classical_module(const Partition& la, int k);
// Restriction to the weights supported on the band's index set.
WeightModule restrict_to_band(const WeightModule& mod, const IndexSet& band);

// Contravariant form on a weight space of a truncated Verma module, via the
// action matrices (independent of the irreducible construction).
Matrix verma_gram(const WeightModule& verma, int weight_index);

using ModulePtr = std::shared_ptr<const WeightModule>;

// Tensor product of modules, basis tuples encoded in mixed radix with the first
// factor most significant.
class TensorSpace {
 public:
  explicit TensorSpace(std::vector<ModulePtr> factors);

  int length() const { return static_cast<int>(factors_.size()); }
  const WeightModule& factor(int i) const { return *factors_[i]; }
  const std::vector<ModulePtr>& factors() const { return factors_; }
  const Algebra& algebra() const { return factors_[0]->algebra; }
  Key total_dim() const { return total_; }

  Key encode(const std::vector<int>& tuple) const;
  std::vector<int> decode(Key code) const;
  int component(Key code, int slot) const { return static_cast<int>((code / stride_[slot]) % dims_[slot]); }
  Weight weight_of(Key code) const;
  int parity_of(Key code) const;

  // Codes of the pure tensors of total weight mu, ascending.
  std::vector<Key> weight_basis(const Weight& mu) const;
  std::vector<Weight> all_weights() const;

  // x^{(slot)} with the Koszul sign.
  SparseVec apply(int slot, const BasisElement& e, const SparseVec& v) const;
  // Same, with the central-extension action of Cartan elements on negative indices.
  SparseVec apply_central(int slot, const BasisElement& e, const SparseVec& v) const;
  SparseVec coproduct(const BasisElement& e, const SparseVec& v) const;

 private:
  std::vector<ModulePtr> factors_;
  std::vector<Key> dims_, stride_;
  Key total_ = 1;
};

WeightModule tensor(const std::vector<ModulePtr>& factors);

struct WeightBlock {
  Weight mu;
  std::vector<Key> codes;
  std::map<Key, int> index;
  int dim() const { return static_cast<int>(codes.size()); }
};

WeightBlock make_block(const TensorSpace& t, const Weight& mu);
// Column coordinates of a vector lying in the block; throws if it leaves the block.
Matrix block_column(const WeightBlock& b, const SparseVec& v);

struct SingularSpace {
  WeightBlock block;
  Matrix basis;  // block.dim() x k, columns span the singular vectors
  int dim() const { return basis.cols(); }
};

SingularSpace singular_space(const TensorSpace& t, const Weight& mu);
SingularSpace singular_space(const ModulePtr& mod, const Weight& mu);

}  // namespace gaudin
