#pragma once

#include <string>
#include <vector>

#include "gaudin/gaudin.hpp"

namespace gaudin {

// Matched data on both sides of the correspondence: polynomial gl(m|n)-modules
// labelled by the partitions against classical I_(0,k) modules with the
// conjugate highest weights, and the pair of singular weights from mu.
struct DualitySetup {
  std::vector<Partition> partitions;
  int m = 0, n = 0, k = 0;
  Partition mu;
  Weight super_weight, classical_weight;
  std::vector<ModulePtr> super_modules, classical_modules;
};

DualitySetup build_setup(const std::vector<Partition>& partitions, int m, int n, const Partition& mu);
// All mu of total size sum |la^i| that pass the hook condition for (m, n).
std::vector<Partition> candidate_weights(const std::vector<Partition>& partitions, int m, int n);

struct SlotMatch {
  Polynomial super_charpoly, classical_charpoly;
  bool equal = false;
};

struct SpectrumReport {
  HamKind kind = HamKind::quadratic;
  std::vector<Rational> z;
  int dim_super = 0, dim_classical = 0;
  std::vector<SlotMatch> per_i;
  bool super_diagonalizable = false, classical_diagonalizable = false;
  bool passed = false;
};

SpectrumReport spectrum_match(const DualitySetup& s, const std::vector<Rational>& z, HamKind kind = HamKind::quadratic);

// Central versus plain conventions on a tensor product of unitarizable modules:
// plain = central + shift on every weight space.
struct ShiftReport {
  std::vector<Rational> shifts;  // per slot
  bool matrices_match = false;   // plain - central == shift * I exactly
  bool charpolys_match = false;  // charpoly(plain)(t) == charpoly(central)(t - shift)
  int dim = 0;
};
ShiftReport central_shift_check(const std::vector<ModulePtr>& factors, const Weight& mu, const std::vector<Rational>& z);

// Comparison of a band restriction with the rebuilt smaller-rank irreducible.
struct TruncationReport {
  bool zero = false;         // restriction and smaller module both vanish
  bool dims_match = false;   // weight-by-weight
  bool intertwines = false;  // an explicit isomorphism carries one action to the other
  bool passed = false;
  std::string detail;
};

// T maps the basis of `small` (a module over a sub-band) into `big`, following
// the construction words of `small`. Column i is T(basis vector i).
std::vector<SparseVec> band_embedding(const WeightModule& big, const WeightModule& small);
TruncationReport truncation_check(const WeightModule& big, const IndexSet& band);

}  // namespace gaudin
