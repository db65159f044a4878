#include "dq/rational.hpp"

#include "dq/errors.hpp"

#include <vector>

namespace dq {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  Rational q;
  try {
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
      q = Rational(Integer(s, 10));
    } else {
      Integer num(s.substr(0, slash), 10);
      Integer den(s.substr(slash + 1), 10);
      if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
      q = Rational(num, den);
      q.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational \"" + s + "\"");
  }
  return q;
}

Rational factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return Rational(r);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

void add_entry(SparseVec& y, std::size_t index, const Rational& value) {
  if (is_zero(value)) return;
  auto [it, inserted] = y.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (is_zero(it->second)) y.erase(it);
  }
}

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (is_zero(a)) return;
  for (const auto& [i, v] : x) add_entry(y, i, a * v);
}

SparseVec scaled(const SparseVec& x, const Rational& a) {
  SparseVec out;
  if (is_zero(a)) return out;
  for (const auto& [i, v] : x) out.emplace(i, a * v);
  return out;
}

bool is_zero(const SparseVec& v) { return v.empty(); }

}  // namespace dq
