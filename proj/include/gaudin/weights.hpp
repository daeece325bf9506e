#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gaudin/rational.hpp"

namespace gaudin {

// An index i in the nonzero half-integers, stored as 2i.
struct HalfIndex {
  int doubled = 0;

  static HalfIndex integer(int i) { return HalfIndex{2 * i}; }
  // The half-integer j - 1/2.
  static HalfIndex half_below(int j) { return HalfIndex{2 * j - 1}; }

  int parity() const { return doubled % 2 == 0 ? 0 : 1; }
  bool negative() const { return doubled < 0; }
  std::string str() const;

  friend bool operator==(HalfIndex a, HalfIndex b) { return a.doubled == b.doubled; }
  friend bool operator!=(HalfIndex a, HalfIndex b) { return a.doubled != b.doubled; }
  // Numeric order; flavor orders go through IndexSet::precedes.
  friend bool operator<(HalfIndex a, HalfIndex b) { return a.doubled < b.doubled; }
};

enum class Flavor { wide, classical, super };

std::string flavor_name(Flavor f);
Flavor parse_flavor(const std::string& s);

// Finite index set with its total order.
//   classical: half-integers in (-p, n)
//   super:     integers -p..m (nonzero) and half-integers in (-q, n), ordered
//              -p < ... < -1 < -(q-1/2) < ... < -1/2 < 1 < ... < m < 1/2 < ... < n-1/2
//   wide:      all of 1/2 Z* in [-p, n], numeric order
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(Flavor flavor, int p, int q, int m, int n);

  static IndexSet classical(int p, int n) { return IndexSet(Flavor::classical, p, 0, 0, n); }
  static IndexSet super(int q, int m, int p, int n) { return IndexSet(Flavor::super, p, q, m, n); }
  static IndexSet glmn(int m, int n) { return super(0, m, 0, n); }
  static IndexSet wide(int p, int n) { return IndexSet(Flavor::wide, p, 0, 0, n); }

  Flavor flavor() const { return flavor_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int m() const { return m_; }
  int n() const { return n_; }

  const std::vector<HalfIndex>& ordered() const { return order_; }
  int size() const { return static_cast<int>(order_.size()); }
  bool contains(HalfIndex i) const { return pos_.count(i.doubled) > 0; }
  int position(HalfIndex i) const;
  bool precedes(HalfIndex a, HalfIndex b) const { return position(a) < position(b); }
  int even_count() const;
  int odd_count() const;
  // Same flavor with (p, n) replaced by a band (r, k).
  IndexSet band(int r, int k) const;
  std::string str() const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.flavor_ == b.flavor_ && a.p_ == b.p_ && a.q_ == b.q_ && a.m_ == b.m_ && a.n_ == b.n_;
  }

 private:
  Flavor flavor_ = Flavor::super;
  int p_ = 0, q_ = 0, m_ = 0, n_ = 0;
  std::vector<HalfIndex> order_;
  std::map<int, int> pos_;
};

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  // 1-based part, zero beyond the length.
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<int> parts_;
};

Partition conjugate(const Partition& la);
std::vector<Partition> partitions_of(int n);
// Hook condition for gl(m|n): la'_{n+1} <= m.
bool hook_ok(const Partition& la, int m, int n);

class GeneralizedPartition {
 public:
  explicit GeneralizedPartition(std::vector<int> parts);
  int depth() const { return static_cast<int>(parts_.size()); }
  int part(int i) const { return parts_.at(i - 1); }
  const std::vector<int>& parts() const { return parts_; }
  Partition plus() const;
  Partition minus() const;

 private:
  std::vector<int> parts_;
};

class Weight {
 public:
  Weight() = default;
  explicit Weight(Rational level) : level_(std::move(level)) {}
  static Weight epsilon(HalfIndex i, long c = 1);

  long coeff(HalfIndex i) const;
  void set(HalfIndex i, long c);
  void add(HalfIndex i, long c);
  const std::map<int, long>& coeffs() const { return coeffs_; }
  const Rational& level() const { return level_; }
  void set_level(Rational d) { level_ = std::move(d); }
  long total() const;
  std::string str() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight& operator+=(const Weight& o);
  friend bool operator==(const Weight& a, const Weight& b) { return a.coeffs_ == b.coeffs_ && a.level_ == b.level_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b);

 private:
  std::map<int, long> coeffs_;
  Rational level_ = 0;
};

// (theta_{1/2}, theta_1, theta_{3/2}, ...) truncated to `length` entries.
std::vector<int> frobenius_theta(const Partition& la, int length);

// Level-d weight on the wide index set of rank (p, n).
Weight weight_wide(const Partition& plus, const Partition& minus, const Rational& d, int p, int n);
// Level-d weight on the classical index set I_(p,n).
Weight weight_classical(const Partition& plus, const Partition& minus, const Rational& d, int p, int n);
// Level-d weight on the super index set with parameters (q, m) truncated to (p, n).
Weight weight_super(const Partition& plus, const Partition& minus, const Rational& d, int q, int m, int p, int n);
// Highest weight of the unitarizable module labelled by la (plain algebra, level 0).
Weight unitarizable_weight(const GeneralizedPartition& la, int p, int q, int m, int n);
// True iff xi = unitarizable_weight(la) for some la of depth d.
bool unitarizable_at_depth(const Weight& xi, int p, int q, int m, int n, int d, std::vector<int>* parts_out);
// Inverse of unitarizable_weight when the weight lies in its image with depth <= max_depth.
bool decompose_unitarizable(const Weight& xi, int p, int q, int m, int n, int max_depth, int* depth_out,
                            std::vector<int>* parts_out);

// (super-side weight over gl(m|n), classical-side weight over I_(0,k)).
std::pair<Weight, Weight> hook_correspondence(const Partition& la, int m, int n, int k);

// Sign pattern and support of the lattice for the flavor of `band`, restricted to
// the band's index set.
bool in_lattice(const Weight& w, const IndexSet& band);

// Brute-force count of (m|n)-hook semistandard tableaux of shape la with content w.
long hook_multiplicity_oracle(const Partition& la, int m, int n, const Weight& w);
constexpr int kOracleBoxBudget = 8;

}  // namespace gaudin
