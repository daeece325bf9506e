#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>

namespace gaudin {

using Rational = mpq_class;
using Key = std::int64_t;

// Sparse vector over a keyed basis. Zero entries are never stored.
using SparseVec = std::map<Key, Rational>;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);
Rational make_rational(long num, long den = 1);

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);
void add_entry(SparseVec& y, Key k, const Rational& a);
SparseVec scaled(const SparseVec& x, const Rational& a);

}  // namespace gaudin
