#include "gaudin/rational.hpp"

#include "gaudin/errors.hpp"

namespace gaudin {

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw PreconditionError("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw PreconditionError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void add_entry(SparseVec& y, Key k, const Rational& a) {
  if (a == 0) return;
  auto [it, inserted] = y.try_emplace(k, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) y.erase(it);
  }
}

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) add_entry(y, k, a * v);
}

SparseVec scaled(const SparseVec& x, const Rational& a) {
  SparseVec out;
  if (a == 0) return out;
  for (const auto& [k, v] : x) out.emplace(k, a * v);
  return out;
}

}  // namespace gaudin
