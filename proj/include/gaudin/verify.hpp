#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gaudin/io.hpp"

namespace gaudin {

struct CheckResult {
  std::string name;
  bool passed = false;
  Json detail = Json::object();
};

using RankPair = std::pair<int, int>;  // (m, n)

// Parametrized invariant checks; `verify all` and the acceptance runner both use them.
CheckResult check_structure(const std::vector<Algebra>& algebras, int samples, std::mt19937_64& rng);
// Quadratic (and, where defined, cubic) Hamiltonians on every weight block of each
// tensor product: mutual commutators, the sum rule and invariance, exact.
CheckResult check_hamiltonian_algebra(const std::vector<std::vector<ModulePtr>>& spaces, int points, bool cubic,
                                      std::mt19937_64& rng);
CheckResult check_module_oracle(const std::vector<RankPair>& ranks, int max_size);
// Every setup with 2 <= ell <= max_ell nonempty partitions of total size <= max_total.
CheckResult check_duality(const std::vector<RankPair>& ranks, int max_ell, int max_total, HamKind kind, int points,
                          std::mt19937_64& rng);
CheckResult check_duality_closed_case();
CheckResult check_lax(const std::vector<RankPair>& ranks, int points, std::mt19937_64& rng);
// (m, n, ell): singular spaces of natural tensor powers, z = (0, 1, ..., ell-1) plus sampled points.
CheckResult check_cyclic(const std::vector<std::tuple<int, int, int>>& cases, int points, std::mt19937_64& rng);
CheckResult check_central_shift(int points, std::mt19937_64& rng);
CheckResult check_truncation();

CheckResult check_kz_flatness(const RankPair& rank, int ell, std::mt19937_64& rng);
CheckResult check_kz_scalar(double rel_tol);
CheckResult check_kz_monodromy(double rel_tol);
CheckResult check_kz_singular(const RankPair& rank, int ell, double rel_tol, std::mt19937_64& rng);
CheckResult check_kz_gauge(double rel_tol, std::mt19937_64& rng);
CheckResult check_kz_truncation(double rel_tol, std::mt19937_64& rng);
CheckResult check_kz_rank(const RankPair& rank, int ell, double rel_tol);
// Log-derivative of the local solution along a random direction, on the joint
// eigenvectors at a rational basepoint, against the joint eigenvalues over kappa.
CheckResult check_kz_eigen(const RankPair& rank, int ell, double rel_tol, std::mt19937_64& rng);

struct VerifyOptions {
  int m = 1, n = 1, ell = 3;
  std::uint64_t seed = 7;
  double tol = 1e-8;
};

std::vector<std::string> check_names();
// Runs the named checks (all when `only` is empty); throws PreconditionError on unknown names.
std::vector<CheckResult> run_verify(const VerifyOptions& opt, const std::vector<std::string>& only = {});
Json verify_report(const VerifyOptions& opt, const std::vector<CheckResult>& results);

}  // namespace gaudin
