#include "dq/polyops.hpp"

#include "dq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>

namespace dq {

namespace {

// Sorts indices in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::vector<unsigned>& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// ∂^α x^m = c x^{m−α}; returns false when the result vanishes.
bool mono_derivative(const Monomial& m, const MultiIndex& alpha, Monomial& out, Rational& c) {
  out = m;
  c = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (alpha[i] > m[i]) return false;
    for (unsigned k = 0; k < alpha[i]; ++k) c *= (m[i] - k);
    out[i] = m[i] - alpha[i];
  }
  return true;
}

void check_dim(unsigned a, unsigned b) {
  if (a != b) throw DomainError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::map<unsigned, PolyDiffOp> by_arity(const PolyDiffOp& a) {
  std::map<unsigned, PolyDiffOp> out;
  for (const auto& [k, c] : a.terms()) {
    auto it = out.try_emplace(k.slots.size(), PolyDiffOp(a.dim())).first;
    it->second.add_term(k.monomial, k.slots, c);
  }
  return out;
}

// Calls f(parts, coefficient) for every (γ₀,…,γ_m) with Σγ = α, where the
// coefficient is the multinomial α!/Πγ_k!.
void split_multiindex(const MultiIndex& alpha, std::size_t parts,
                      const std::function<void(const std::vector<MultiIndex>&, const Rational&)>& f) {
  std::vector<MultiIndex> cur(parts, MultiIndex(alpha.size(), 0));
  std::function<void(std::size_t, std::size_t, unsigned, Rational)> rec =
      [&](std::size_t var, std::size_t part, unsigned left, Rational coeff) {
        if (var == alpha.size()) {
          f(cur, coeff);
          return;
        }
        if (part + 1 == parts) {
          cur[part][var] = left;
          rec(var + 1, 0, var + 1 < alpha.size() ? alpha[var + 1] : 0,
              coeff * factorial(alpha[var]) / factorial(left));
          return;
        }
        for (unsigned k = 0; k <= left; ++k) {
          cur[part][var] = k;
          rec(var, part + 1, left - k, coeff / factorial(k));
        }
      };
  if (alpha.empty()) {
    f(cur, Rational(1));
    return;
  }
  rec(0, 0, alpha[0], Rational(1));
}

template <class F>
void for_each_permutation(std::size_t n, F f) {
  std::vector<unsigned> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do {
    std::vector<unsigned> q = p;
    int s = sort_with_sign(q);
    f(p, s);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

Monomial unit_monomial(unsigned dim, unsigned i) {
  Monomial m(dim, 0);
  m.at(i) = 1;
  return m;
}

void poly_add(Poly& y, const Rational& a, const Poly& x) {
  if (is_zero(a)) return;
  for (const auto& [m, c] : x) {
    auto [it, ins] = y.try_emplace(m, a * c);
    if (!ins) {
      it->second += a * c;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) poly_add(r, ca * cb, Poly{{mono_mul(ma, mb), Rational(1)}});
  return r;
}

Poly poly_derivative(const Poly& p, const MultiIndex& alpha) {
  Poly r;
  for (const auto& [m, c] : p) {
    Monomial out;
    Rational k;
    if (mono_derivative(m, alpha, out, k)) poly_add(r, c * k, Poly{{out, Rational(1)}});
  }
  return r;
}

Poly poly_monomial(const Monomial& m, const Rational& c) {
  if (is_zero(c)) return {};
  return Poly{{m, c}};
}

std::vector<std::string> variable_names(unsigned dim) {
  std::vector<std::string> out;
  if (dim <= 3) {
    const char* names[] = {"x", "y", "z"};
    for (unsigned i = 0; i < dim; ++i) out.emplace_back(names[i]);
  } else {
    for (unsigned i = 1; i <= dim; ++i) out.push_back("x" + std::to_string(i));
  }
  return out;
}

std::string monomial_label(const Monomial& m, unsigned dim) {
  auto names = variable_names(dim);
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string poly_to_string(const Poly& p, unsigned dim) {
  if (p.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : p) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")*" + monomial_label(m, dim);
  }
  return s;
}

void PolyVectorField::add_term(const Monomial& f, std::vector<unsigned> indices, const Rational& c) {
  check_dim(static_cast<unsigned>(f.size()), dim_);
  for (unsigned i : indices)
    if (i >= dim_) throw DomainError("polyvector index out of range");
  int s = sort_with_sign(indices);
  if (s == 0 || dq::is_zero(c)) return;
  PVKey key{f, std::move(indices)};
  Rational v = s > 0 ? c : Rational(-c);
  auto [it, ins] = terms_.try_emplace(std::move(key), v);
  if (!ins) {
    it->second += v;
    if (dq::is_zero(it->second)) terms_.erase(it);
  }
}

void PolyVectorField::add(const PolyVectorField& other, const Rational& c) {
  check_dim(dim_, other.dim_);
  for (const auto& [k, v] : other.terms_) add_term(k.monomial, k.indices, c * v);
}

std::optional<unsigned> PolyVectorField::arity() const {
  std::optional<unsigned> a;
  for (const auto& [k, v] : terms_) {
    unsigned n = static_cast<unsigned>(k.indices.size());
    if (a && *a != n) return std::nullopt;
    a = n;
  }
  return a;
}

void PolyDiffOp::add_term(const Monomial& f, std::vector<MultiIndex> slots, const Rational& c) {
  check_dim(static_cast<unsigned>(f.size()), dim_);
  for (const auto& s : slots) check_dim(static_cast<unsigned>(s.size()), dim_);
  if (dq::is_zero(c)) return;
  auto [it, ins] = terms_.try_emplace(PDKey{f, std::move(slots)}, c);
  if (!ins) {
    it->second += c;
    if (dq::is_zero(it->second)) terms_.erase(it);
  }
}

void PolyDiffOp::add(const PolyDiffOp& other, const Rational& c) {
  check_dim(dim_, other.dim_);
  for (const auto& [k, v] : other.terms_) add_term(k.monomial, k.slots, c * v);
}

std::optional<unsigned> PolyDiffOp::arity() const {
  std::optional<unsigned> a;
  for (const auto& [k, v] : terms_) {
    unsigned n = static_cast<unsigned>(k.slots.size());
    if (a && *a != n) return std::nullopt;
    a = n;
  }
  return a;
}

Poly PolyDiffOp::evaluate(const std::vector<Poly>& args) const {
  Poly r;
  for (const auto& [k, c] : terms_) {
    if (k.slots.size() != args.size())
      throw DomainError("operator of arity " + std::to_string(k.slots.size()) + " applied to " +
                        std::to_string(args.size()) + " arguments");
    Poly prod{{k.monomial, Rational(1)}};
    for (std::size_t j = 0; j < args.size() && !prod.empty(); ++j)
      prod = poly_mul(prod, poly_derivative(args[j], k.slots[j]));
    poly_add(r, c, prod);
  }
  return r;
}

int internal_degree(const PVKey& k) {
  return static_cast<int>(total_degree(k.monomial)) - static_cast<int>(k.indices.size());
}

int internal_degree(const PDKey& k) {
  int d = static_cast<int>(total_degree(k.monomial));
  for (const auto& s : k.slots) d -= static_cast<int>(total_degree(s));
  return d;
}

namespace {

// (f ξ_I)(g ξ_J) as superfunctions.
void add_product(PolyVectorField& out, const Rational& c, const Monomial& f, const std::vector<unsigned>& I,
                 const Monomial& g, const std::vector<unsigned>& J) {
  std::vector<unsigned> idx = I;
  idx.insert(idx.end(), J.begin(), J.end());
  out.add_term(mono_mul(f, g), std::move(idx), c);
}

// Σ_i (∂^R_{ξ_i} a)(∂_{x_i} b) on single terms.
void add_half_bracket(PolyVectorField& out, const Rational& c, const PVKey& a, const PVKey& b, unsigned dim) {
  std::size_t p = a.indices.size();
  for (std::size_t k = 0; k < p; ++k) {
    unsigned i = a.indices[k];
    Monomial db;
    Rational cd;
    if (!mono_derivative(b.monomial, unit_monomial(dim, i), db, cd)) continue;
    std::vector<unsigned> rest = a.indices;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    Rational sign = ((p - 1 - k) % 2 == 0) ? 1 : -1;
    add_product(out, c * sign * cd, a.monomial, rest, db, b.indices);
  }
}

}  // namespace

PolyVectorField schouten_bracket(const PolyVectorField& a, const PolyVectorField& b) {
  check_dim(a.dim(), b.dim());
  PolyVectorField out(a.dim());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      long p = static_cast<long>(ka.indices.size()), q = static_cast<long>(kb.indices.size());
      Rational c = ca * cb;
      Rational sign = (((p - 1) * (q - 1)) % 2 == 0) ? 1 : -1;
      add_half_bracket(out, sign * c, ka, kb, a.dim());
      add_half_bracket(out, -c, kb, ka, a.dim());
    }
  return out;
}

PolyVectorField wedge(const PolyVectorField& a, const PolyVectorField& b) {
  check_dim(a.dim(), b.dim());
  PolyVectorField out(a.dim());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) add_product(out, ca * cb, ka.monomial, ka.indices, kb.monomial, kb.indices);
  return out;
}

PolyDiffOp circle(const PolyDiffOp& a, const PolyDiffOp& b) {
  check_dim(a.dim(), b.dim());
  unsigned dim = a.dim();
  PolyDiffOp out(dim);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::size_t n = ka.slots.size(), m = kb.slots.size();
      for (std::size_t i = 0; i < n; ++i) {
        Rational sign = ((i * (m + 1)) % 2 == 0) ? 1 : -1;  // (−1)^{i(m−1)}
        split_multiindex(ka.slots[i], m + 1, [&](const std::vector<MultiIndex>& g, const Rational& mult) {
          Monomial dg;
          Rational cd;
          if (!mono_derivative(kb.monomial, g[0], dg, cd)) return;
          std::vector<MultiIndex> slots(ka.slots.begin(), ka.slots.begin() + static_cast<std::ptrdiff_t>(i));
          for (std::size_t k = 0; k < m; ++k) {
            MultiIndex s = kb.slots[k];
            for (unsigned v = 0; v < dim; ++v) s[v] += g[k + 1][v];
            slots.push_back(std::move(s));
          }
          slots.insert(slots.end(), ka.slots.begin() + static_cast<std::ptrdiff_t>(i) + 1, ka.slots.end());
          out.add_term(mono_mul(ka.monomial, dg), std::move(slots), sign * mult * cd * ca * cb);
        });
      }
    }
  return out;
}

PolyDiffOp gerstenhaber_bracket(const PolyDiffOp& a, const PolyDiffOp& b) {
  check_dim(a.dim(), b.dim());
  PolyDiffOp out(a.dim());
  auto pa = by_arity(a), pb = by_arity(b);
  for (const auto& [na, xa] : pa)
    for (const auto& [nb, xb] : pb) {
      long s = (static_cast<long>(na) - 1) * (static_cast<long>(nb) - 1);
      out.add(circle(xa, xb));
      out.add(circle(xb, xa), s % 2 == 0 ? Rational(-1) : Rational(1));
    }
  return out;
}

PolyDiffOp multiplication_cochain(unsigned dim) {
  PolyDiffOp mu(dim);
  mu.add_term(Monomial(dim, 0), {MultiIndex(dim, 0), MultiIndex(dim, 0)}, Rational(1));
  return mu;
}

PolyDiffOp hochschild_differential(const PolyDiffOp& a) {
  return gerstenhaber_bracket(multiplication_cochain(a.dim()), a);
}

PolyDiffOp cup(const PolyDiffOp& a, const PolyDiffOp& b) {
  check_dim(a.dim(), b.dim());
  PolyDiffOp out(a.dim());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<MultiIndex> slots = ka.slots;
      slots.insert(slots.end(), kb.slots.begin(), kb.slots.end());
      out.add_term(mono_mul(ka.monomial, kb.monomial), std::move(slots), ca * cb);
    }
  return out;
}

PolyDiffOp hkr(const PolyVectorField& a) {
  unsigned dim = a.dim();
  PolyDiffOp out(dim);
  for (const auto& [k, c] : a.terms()) {
    std::size_t n = k.indices.size();
    Rational w = c / factorial(static_cast<unsigned>(n));
    for_each_permutation(n, [&](const std::vector<unsigned>& p, int s) {
      std::vector<MultiIndex> slots;
      for (unsigned j : p) slots.push_back(unit_monomial(dim, k.indices[j]));
      out.add_term(k.monomial, std::move(slots), s > 0 ? w : Rational(-w));
    });
  }
  return out;
}

PolyDiffOp antisymmetrize(const PolyDiffOp& a) {
  PolyDiffOp out(a.dim());
  for (const auto& [k, c] : a.terms()) {
    std::size_t n = k.slots.size();
    Rational w = c / factorial(static_cast<unsigned>(n));
    // a(x_σ(1),…,x_σ(n)) puts α_j on argument σ(j).
    for_each_permutation(n, [&](const std::vector<unsigned>& p, int s) {
      std::vector<MultiIndex> slots(n);
      for (std::size_t j = 0; j < n; ++j) slots[p[j]] = k.slots[j];
      out.add_term(k.monomial, std::move(slots), s > 0 ? w : Rational(-w));
    });
  }
  return out;
}

PolyDiffOp first_order_part(const PolyDiffOp& a) {
  PolyDiffOp out(a.dim());
  for (const auto& [k, c] : a.terms())
    if (std::all_of(k.slots.begin(), k.slots.end(), [](const MultiIndex& s) { return total_degree(s) == 1; }))
      out.add_term(k.monomial, k.slots, c);
  return out;
}

PolyVectorField from_alternating(const PolyDiffOp& a) {
  PolyVectorField out(a.dim());
  for (const auto& [k, c] : a.terms()) {
    std::vector<unsigned> idx;
    for (const auto& s : k.slots) {
      if (total_degree(s) != 1) throw DomainError("operator is not of order one in each slot");
      idx.push_back(static_cast<unsigned>(std::find(s.begin(), s.end(), 1u) - s.begin()));
    }
    if (std::is_sorted(idx.begin(), idx.end()) && std::adjacent_find(idx.begin(), idx.end()) == idx.end())
      out.add_term(k.monomial, idx, c * factorial(static_cast<unsigned>(idx.size())));
  }
  if (!(hkr(out) == a)) throw DomainError("operator is not alternating");
  return out;
}

// ---------------------------------------------------------------------------
// Expression parsing

namespace {

struct ExprParser {
  std::string s;
  std::size_t pos = 0;
  unsigned dim;
  std::vector<std::string> names;

  ExprParser(std::string text, unsigned d) : s(std::move(text)), dim(d), names(variable_names(d)) {
    // Accept the Unicode wedge as '^'.
    std::string w = "\xE2\x88\xA7";
    for (std::size_t p; (p = s.find(w)) != std::string::npos;) s.replace(p, w.size(), "^");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos) + " in \"" + s + "\"");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool at_digit() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  std::string digits() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected digits");
    return s.substr(b, pos - b);
  }
  std::string ident() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected identifier");
    return s.substr(b, pos - b);
  }
  int var_index(const std::string& n) const {
    for (unsigned i = 0; i < dim; ++i)
      if (names[i] == n) return static_cast<int>(i);
    return -1;
  }

  // term := factor (('*' | '^') factor)*
  void term(PolyVectorField& out, Rational coeff, bool allow_d) {
    Monomial mono(dim, 0);
    std::vector<unsigned> idx;
    int last_var = -1;
    bool first = true;
    while (true) {
      if (!first) {
        skip();
        if (pos >= s.size() || (s[pos] != '*' && s[pos] != '^')) break;
        char op = s[pos++];
        if (op == '^' && at_digit()) {
          if (last_var < 0) fail("exponent without variable");
          mono[last_var] += static_cast<unsigned>(std::stoul(digits())) - 1;
          last_var = -1;
          continue;
        }
      }
      first = false;
      last_var = -1;
      if (at_digit()) {
        Rational q(Integer(digits(), 10));
        if (eat('/')) {
          Integer den(digits(), 10);
          if (den == 0) fail("zero denominator");
          q /= Rational(den);
        }
        coeff *= q;
        continue;
      }
      std::string id = ident();
      int v = var_index(id);
      if (v >= 0) {
        mono[v] += 1;
        last_var = v;
        continue;
      }
      if (allow_d && id.size() > 1 && id[0] == 'd' && var_index(id.substr(1)) >= 0) {
        idx.push_back(static_cast<unsigned>(var_index(id.substr(1))));
        continue;
      }
      fail("unknown symbol \"" + id + "\"");
    }
    out.add_term(mono, idx, coeff);
  }

  PolyVectorField parse(bool allow_d) {
    PolyVectorField out(dim);
    skip();
    if (pos >= s.size()) fail("empty expression");
    bool first = true;
    while (true) {
      skip();
      if (pos >= s.size()) break;
      Rational sign = 1;
      if (eat('+')) {
      } else if (eat('-')) {
        sign = -1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      term(out, sign, allow_d);
    }
    return out;
  }
};

}  // namespace

Poly parse_poly(const std::string& text, unsigned dim) {
  Poly p;
  PolyVectorField parsed = ExprParser(text, dim).parse(false);
  for (const auto& [k, c] : parsed.terms()) poly_add(p, c, Poly{{k.monomial, Rational(1)}});
  return p;
}

PolyVectorField parse_polyvector(const std::string& text, unsigned dim) { return ExprParser(text, dim).parse(true); }

std::string polyvector_term_label(const PVKey& k, unsigned dim) {
  auto names = variable_names(dim);
  std::string w;
  for (unsigned i : k.indices) w += (w.empty() ? "d" : "^d") + names[i];
  if (w.empty()) return monomial_label(k.monomial, dim);
  if (total_degree(k.monomial) == 0) return w;
  return monomial_label(k.monomial, dim) + "*" + w;
}

std::string polyvector_to_string(const PolyVectorField& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : p.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")*" + polyvector_term_label(k, p.dim());
  }
  return s;
}

std::string polydiff_term_label(const PDKey& k, unsigned dim) {
  std::string s = monomial_label(k.monomial, dim);
  for (const auto& a : k.slots) {
    s += "|";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "." : "") + std::to_string(a[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Star product

std::vector<Poly> first_order_star(const PolyVectorField& pi, const Poly& a, const Poly& b, unsigned order) {
  if (order == 0 || order > 2) throw DomainError("first-order star product needs 1 <= N <= 2");
  if (!pi.is_zero() && pi.arity() != 2u) throw DomainError("star product needs a bivector");
  std::vector<Poly> out{poly_mul(a, b)};
  if (order == 2) out.push_back(hkr(pi).evaluate({a, b}));
  return out;
}

std::vector<Monomial> monomials_of_degree(unsigned dim, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(dim, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i + 1 == dim) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      m[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (dim == 0) {
    if (degree == 0) out.push_back(m);
    return out;
  }
  rec(0, degree);
  return out;
}

StarProductReport star_product_report(const PolyVectorField& pi, unsigned max_degree) {
  if (pi.arity() != 2u) throw DomainError("star product needs a nonzero bivector");
  unsigned dim = pi.dim();
  StarProductReport rep;
  PolyDiffOp B = hkr(pi);
  PolyVectorField jac = schouten_bracket(pi, pi);
  rep.poisson = jac.is_zero();
  rep.obstruction = circle(B, B);

  // ε² part of d_H(εB) + ½[εB, εB].
  PolyDiffOp res(dim);
  res.add(gerstenhaber_bracket(B, B), Rational(1, 2));
  rep.obstruction_matches_residual = res == rep.obstruction;

  PolyVectorField half(dim);
  half.add(jac, Rational(1, 2));
  rep.alternation_matches_bracket = first_order_part(antisymmetrize(rep.obstruction)) == hkr(half);

  std::vector<Monomial> monos;
  for (unsigned d = 0; d <= max_degree; ++d)
    for (auto& m : monomials_of_degree(dim, d)) monos.push_back(m);
  for (const auto& ma : monos)
    for (const auto& mb : monos)
      for (const auto& mc : monos) {
        if (total_degree(ma) + total_degree(mb) + total_degree(mc) > max_degree) continue;
        ++rep.triples;
        Poly a = poly_monomial(ma), b = poly_monomial(mb), c = poly_monomial(mc);
        auto ab = first_order_star(pi, a, b, 2), bc = first_order_star(pi, b, c, 2);
        // ε-coefficient of (a⋆b)⋆c − a⋆(b⋆c)
        Poly e1;
        poly_add(e1, 1, poly_mul(ab[1], c));
        poly_add(e1, 1, B.evaluate({ab[0], c}));
        poly_add(e1, -1, poly_mul(a, bc[1]));
        poly_add(e1, -1, B.evaluate({a, bc[0]}));
        if (!e1.empty()) rep.first_order_associative = false;
        Poly e2;
        poly_add(e2, 1, B.evaluate({ab[1], c}));
        poly_add(e2, -1, B.evaluate({a, bc[1]}));
        if (e2 != rep.obstruction.evaluate({a, b, c})) rep.obstruction_evaluations_match = false;
      }
  return rep;
}

}  // namespace dq
