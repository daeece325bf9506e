#include "gaudin/weights.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "gaudin/errors.hpp"

namespace gaudin {

namespace {

int clip(int r) { return r > 0 ? r : 0; }

}  // namespace

std::string HalfIndex::str() const {
  if (doubled % 2 == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::wide: return "wide";
    case Flavor::classical: return "classical";
    case Flavor::super: return "super";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "wide") return Flavor::wide;
  if (s == "classical") return Flavor::classical;
  if (s == "super") return Flavor::super;
  throw PreconditionError("unknown flavor '" + s + "'");
}

IndexSet::IndexSet(Flavor flavor, int p, int q, int m, int n) : flavor_(flavor), p_(p), q_(q), m_(m), n_(n) {
  if (p < 0 || q < 0 || m < 0 || n < 0) throw PreconditionError("index set parameters must be nonnegative");
  switch (flavor) {
    case Flavor::classical:
      for (int d = -2 * p + 1; d <= 2 * n - 1; d += 2) order_.push_back(HalfIndex{d});
      break;
    case Flavor::super:
      for (int d = -2 * p; d <= -2; d += 2) order_.push_back(HalfIndex{d});
      for (int d = -(2 * q - 1); d <= -1; d += 2) order_.push_back(HalfIndex{d});
      for (int d = 2; d <= 2 * m; d += 2) order_.push_back(HalfIndex{d});
      for (int d = 1; d <= 2 * n - 1; d += 2) order_.push_back(HalfIndex{d});
      break;
    case Flavor::wide:
      for (int d = -2 * p; d <= 2 * n; ++d)
        if (d != 0) order_.push_back(HalfIndex{d});
      break;
  }
  if (order_.empty()) throw PreconditionError("empty index set " + str());
  for (size_t i = 0; i < order_.size(); ++i) pos_[order_[i].doubled] = static_cast<int>(i);
}

int IndexSet::position(HalfIndex i) const {
  auto it = pos_.find(i.doubled);
  if (it == pos_.end()) throw PreconditionError("index " + i.str() + " outside " + str());
  return it->second;
}

int IndexSet::even_count() const {
  return static_cast<int>(std::count_if(order_.begin(), order_.end(), [](HalfIndex i) { return i.parity() == 0; }));
}

int IndexSet::odd_count() const { return size() - even_count(); }

IndexSet IndexSet::band(int r, int k) const { return IndexSet(flavor_, r, q_, m_, k); }

std::string IndexSet::str() const {
  std::ostringstream os;
  os << flavor_name(flavor_) << "(p=" << p_ << ",q=" << q_ << ",m=" << m_ << ",n=" << n_ << ")";
  return os.str();
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw PreconditionError("partition parts must be nonnegative");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw PreconditionError("partition parts must be weakly decreasing");
  }
}

int Partition::size() const {
  int s = 0;
  for (int x : parts_) s += x;
  return s;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ")";
  return os.str();
}

Partition conjugate(const Partition& la) {
  std::vector<int> c(la.part(1), 0);
  for (int x : la.parts())
    for (int j = 0; j < x; ++j) ++c[j];
  return Partition(std::move(c));
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int x = std::min(rest, cap); x >= 1; --x) {
      cur.push_back(x);
      rec(rest - x, x);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

bool hook_ok(const Partition& la, int m, int n) { return conjugate(la).part(n + 1) <= m; }

GeneralizedPartition::GeneralizedPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw PreconditionError("generalized partition needs positive depth");
  for (size_t i = 1; i < parts_.size(); ++i)
    if (parts_[i] > parts_[i - 1]) throw PreconditionError("generalized partition must be decreasing");
}

Partition GeneralizedPartition::plus() const {
  std::vector<int> v;
  for (int x : parts_) v.push_back(clip(x));
  return Partition(v);
}

Partition GeneralizedPartition::minus() const {
  std::vector<int> v;
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) v.push_back(clip(-*it));
  return Partition(v);
}

Weight Weight::epsilon(HalfIndex i, long c) {
  Weight w;
  w.set(i, c);
  return w;
}

long Weight::coeff(HalfIndex i) const {
  auto it = coeffs_.find(i.doubled);
  return it == coeffs_.end() ? 0 : it->second;
}

void Weight::set(HalfIndex i, long c) {
  if (c == 0)
    coeffs_.erase(i.doubled);
  else
    coeffs_[i.doubled] = c;
}

void Weight::add(HalfIndex i, long c) { set(i, coeff(i) + c); }

long Weight::total() const {
  long s = 0;
  for (const auto& [k, v] : coeffs_) s += v;
  return s;
}

std::string Weight::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : coeffs_) {
    if (!first) os << (v >= 0 ? "+" : "");
    first = false;
    if (v == -1)
      os << "-";
    else if (v != 1)
      os << v;
    os << "e[" << HalfIndex{k}.str() << "]";
  }
  if (level_ != 0) os << (first ? "" : "+") << level_.get_str() << "L0";
  if (first && level_ == 0) os << "0";
  return os.str();
}

Weight Weight::operator+(const Weight& o) const {
  Weight w = *this;
  w += o;
  return w;
}

Weight& Weight::operator+=(const Weight& o) {
  for (const auto& [k, v] : o.coeffs_) add(HalfIndex{k}, v);
  level_ += o.level_;
  return *this;
}

Weight Weight::operator-(const Weight& o) const {
  Weight w = *this;
  for (const auto& [k, v] : o.coeffs_) w.add(HalfIndex{k}, -v);
  w.level_ -= o.level_;
  return w;
}

bool operator<(const Weight& a, const Weight& b) {
  if (a.coeffs_ != b.coeffs_) return a.coeffs_ < b.coeffs_;
  return a.level_ < b.level_;
}

std::vector<int> frobenius_theta(const Partition& la, int length) {
  if (length < 1) throw PreconditionError("frobenius_theta length must be positive");
  Partition c = conjugate(la);
  std::vector<int> out(length);
  for (int t = 0; t < length; ++t) {
    if (t % 2 == 0) {
      int i = t / 2 + 1;  // theta_{i-1/2}
      out[t] = clip(c.part(i) - i + 1);
    } else {
      int i = (t + 1) / 2;  // theta_i
      out[t] = clip(la.part(i) - i);
    }
  }
  return out;
}

Weight weight_wide(const Partition& plus, const Partition& minus, const Rational& d, int p, int n) {
  Weight w(d);
  auto place = [&](const Partition& la, int bound, int sign) {
    int len = 2 * (la.size() + 1);
    std::vector<int> th = frobenius_theta(la, len);
    for (int t = 0; t < len; ++t) {
      if (th[t] == 0) continue;
      int doubled = t + 1;  // theta index r = (t+1)/2
      if (doubled > 2 * bound)
        throw PreconditionError("partition " + la.str() + " does not fit the band of rank " + std::to_string(bound));
      w.set(HalfIndex{sign * doubled}, sign * th[t]);
    }
  };
  place(plus, n, 1);
  place(minus, p, -1);
  return w;
}

Weight weight_classical(const Partition& plus, const Partition& minus, const Rational& d, int p, int n) {
  Partition cp = conjugate(plus), cm = conjugate(minus);
  if (cp.part(n + 1) != 0) throw PreconditionError("(lambda+)'_{n+1} = 0 violated");
  if (cm.part(p + 1) != 0) throw PreconditionError("(lambda-)'_{p+1} = 0 violated");
  Weight w(d);
  for (int i = 1; i <= n; ++i) w.set(HalfIndex::half_below(i), cp.part(i));
  for (int r = 1; r <= p; ++r) w.set(HalfIndex{-(2 * r - 1)}, -cm.part(r));
  return w;
}

Weight weight_super(const Partition& plus, const Partition& minus, const Rational& d, int q, int m, int p, int n) {
  Partition cp = conjugate(plus), cm = conjugate(minus);
  if (cp.part(n + 1) > m) throw PreconditionError("(lambda+)'_{n+1} <= m violated");
  if (minus.part(p + 1) > q) throw PreconditionError("(lambda-)_{p+1} <= q violated");
  Weight w(d);
  for (int r = 1; r <= p; ++r) w.set(HalfIndex::integer(-r), -clip(minus.part(r) - q));
  for (int s = 1; s <= q; ++s) w.set(HalfIndex{-(2 * s - 1)}, -cm.part(s));
  for (int i = 1; i <= m; ++i) w.set(HalfIndex::integer(i), plus.part(i));
  for (int j = 1; j <= n; ++j) w.set(HalfIndex::half_below(j), clip(cp.part(j) - m));
  return w;
}

Weight unitarizable_weight(const GeneralizedPartition& la, int p, int q, int m, int n) {
  const int d = la.depth();
  if (m + 1 <= d && la.part(m + 1) > n) throw PreconditionError("lambda_{m+1} <= n violated");
  if (d - p >= 1 && la.part(d - p) < -q) throw PreconditionError("lambda_{d-p} >= -q violated");
  Weight w = weight_super(la.plus(), la.minus(), 0, q, m, p, n);
  for (int r = 1; r <= p; ++r) w.add(HalfIndex::integer(-r), -d);
  for (int s = 1; s <= q; ++s) w.add(HalfIndex{-(2 * s - 1)}, d);
  w.set_level(0);
  return w;
}

namespace {

// Rebuilds a partition from its first `rows` parts and the clipped column excess
// <la'_j - rows> for j = 1..cols. Returns false if inconsistent.
bool rebuild_hook(const std::vector<long>& row_parts, const std::vector<long>& col_excess, int rows,
                  std::vector<int>* out) {
  std::vector<int> parts;
  for (long x : row_parts) {
    if (x < 0) return false;
    parts.push_back(static_cast<int>(x));
  }
  long deepest = 0;
  for (long e : col_excess) {
    if (e < 0) return false;
    deepest = std::max(deepest, e);
  }
  for (long i = rows + 1; i <= rows + deepest; ++i) {
    int cnt = 0;
    for (long e : col_excess)
      if (e >= i - rows) ++cnt;
    parts.push_back(cnt);
  }
  for (size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1]) return false;
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  *out = parts;
  return true;
}

}  // namespace

bool unitarizable_at_depth(const Weight& xi, int p, int q, int m, int n, int d, std::vector<int>* parts_out) {
  Weight bar = xi;
  for (int r = 1; r <= p; ++r) bar.add(HalfIndex::integer(-r), d);
  for (int s = 1; s <= q; ++s) bar.add(HalfIndex{-(2 * s - 1)}, -d);
  std::vector<long> rows_plus, cols_plus, rows_minus, cols_minus;
  for (int i = 1; i <= m; ++i) rows_plus.push_back(bar.coeff(HalfIndex::integer(i)));
  for (int j = 1; j <= n; ++j) cols_plus.push_back(bar.coeff(HalfIndex::half_below(j)));
  // On the negative side the conjugate of la- is a hook partition with q rows
  // given by -coeff(-s+1/2) and column excess -coeff(-r).
  for (int s = 1; s <= q; ++s) rows_minus.push_back(-bar.coeff(HalfIndex{-(2 * s - 1)}));
  for (int r = 1; r <= p; ++r) cols_minus.push_back(-bar.coeff(HalfIndex::integer(-r)));
  std::vector<int> plus_parts, minus_conj_parts;
  if (!rebuild_hook(rows_plus, cols_plus, m, &plus_parts)) return false;
  if (!rebuild_hook(rows_minus, cols_minus, q, &minus_conj_parts)) return false;
  Partition plus(plus_parts);
  Partition minus = conjugate(Partition(minus_conj_parts));
  if (plus.length() + minus.length() > d) return false;
  std::vector<int> parts(d, 0);
  for (int i = 0; i < plus.length(); ++i) parts[i] = plus.parts()[i];
  for (int i = 0; i < minus.length(); ++i) parts[d - 1 - i] = -minus.parts()[i];
  try {
    Weight back = unitarizable_weight(GeneralizedPartition(parts), p, q, m, n);
    Weight plain = xi;
    plain.set_level(0);
    if (back != plain) return false;
  } catch (const PreconditionError&) {
    return false;
  }
  if (parts_out) *parts_out = parts;
  return true;
}

bool decompose_unitarizable(const Weight& xi, int p, int q, int m, int n, int max_depth, int* depth_out,
                            std::vector<int>* parts_out) {
  for (int d = 1; d <= max_depth; ++d)
    if (unitarizable_at_depth(xi, p, q, m, n, d, parts_out)) {
      *depth_out = d;
      return true;
    }
  return false;
}

std::pair<Weight, Weight> hook_correspondence(const Partition& la, int m, int n, int k) {
  if (!hook_ok(la, m, n)) throw PreconditionError("hook condition lambda'_{n+1} <= m violated for " + la.str());
  if (la.part(1) > k) throw PreconditionError("rank k too small: lambda_1 > k");
  Partition c = conjugate(la);
  Weight sup, cls;
  for (int i = 1; i <= m; ++i) sup.set(HalfIndex::integer(i), la.part(i));
  for (int j = 1; j <= n; ++j) sup.set(HalfIndex::half_below(j), clip(c.part(j) - m));
  for (int i = 1; i <= k; ++i) cls.set(HalfIndex::half_below(i), c.part(i));
  return {sup, cls};
}

bool in_lattice(const Weight& w, const IndexSet& band) {
  for (const auto& [d, c] : w.coeffs()) {
    HalfIndex i{d};
    if (!band.contains(i)) return false;
    if (i.negative() ? c > 0 : c < 0) return false;
  }
  return true;
}

long hook_multiplicity_oracle(const Partition& la, int m, int n, const Weight& w) {
  if (la.size() > kOracleBoxBudget) throw PreconditionError("oracle budget exceeded (more than 8 boxes)");
  // Alphabet in super order: even letters 1..m, then odd letters 1/2..n-1/2.
  std::vector<HalfIndex> letters;
  for (int i = 1; i <= m; ++i) letters.push_back(HalfIndex::integer(i));
  for (int j = 1; j <= n; ++j) letters.push_back(HalfIndex::half_below(j));
  std::vector<long> need(letters.size());
  long total = 0;
  for (const auto& [d, c] : w.coeffs()) {
    auto it = std::find(letters.begin(), letters.end(), HalfIndex{d});
    if (it == letters.end() || c < 0) return 0;
    need[it - letters.begin()] = c;
    total += c;
  }
  if (total != la.size()) return 0;
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < la.length(); ++r)
    for (int c = 0; c < la.parts()[r]; ++c) cells.emplace_back(r, c);
  std::vector<std::vector<int>> fill(la.length());
  for (int r = 0; r < la.length(); ++r) fill[r].assign(la.parts()[r], -1);
  long count = 0;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[k];
    for (size_t x = 0; x < letters.size(); ++x) {
      if (need[x] == 0) continue;
      bool odd = letters[x].parity() == 1;
      if (c > 0) {
        int left = fill[r][c - 1];
        if (static_cast<int>(x) < left || (static_cast<int>(x) == left && odd)) continue;
      }
      if (r > 0) {
        int up = fill[r - 1][c];
        if (static_cast<int>(x) < up || (static_cast<int>(x) == up && !odd)) continue;
      }
      fill[r][c] = static_cast<int>(x);
      --need[x];
      rec(k + 1);
      ++need[x];
      fill[r][c] = -1;
    }
  };
  rec(0);
  return count;
}

}  // namespace gaudin
