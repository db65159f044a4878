#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace dq {

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as every value enters through the helpers below.
using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" text form; integers are written "p/1".
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Sparse rational vector indexed by a flat basis position. Zero entries are
// never stored.
using SparseVec = std::map<std::size_t, Rational>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);
void add_entry(SparseVec& y, std::size_t index, const Rational& value);
SparseVec scaled(const SparseVec& x, const Rational& a);
bool is_zero(const SparseVec& v);

}  // namespace dq
