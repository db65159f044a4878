#pragma once

#include "dq/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dq {

// Exponent vector of a monomial in x₁..x_d.
using Monomial = std::vector<unsigned>;
using MultiIndex = std::vector<unsigned>;
using Poly = std::map<Monomial, Rational>;

unsigned total_degree(const Monomial& m);
Monomial unit_monomial(unsigned dim, unsigned i);

void poly_add(Poly& y, const Rational& a, const Poly& x);
Poly poly_mul(const Poly& a, const Poly& b);
// ∂^α p
Poly poly_derivative(const Poly& p, const MultiIndex& alpha);
Poly poly_monomial(const Monomial& m, const Rational& c = Rational(1));

// Variable names: x, y, z for d ≤ 3, otherwise x1..xd.
std::vector<std::string> variable_names(unsigned dim);
std::string monomial_label(const Monomial& m, unsigned dim);
std::string poly_to_string(const Poly& p, unsigned dim);

// f ∂_{i₁}∧…∧∂_{i_n} with strictly increasing 0-based indices.
struct PVKey {
  Monomial monomial;
  std::vector<unsigned> indices;
  auto operator<=>(const PVKey&) const = default;
};

class PolyVectorField {
 public:
  PolyVectorField() = default;
  explicit PolyVectorField(unsigned dim) : dim_(dim) {}

  // Adds c·f ∂_{i₁}∧…∧∂_{i_n}; indices in any order, sorted with sign.
  void add_term(const Monomial& f, std::vector<unsigned> indices, const Rational& c);
  void add(const PolyVectorField& other, const Rational& c = Rational(1));

  unsigned dim() const { return dim_; }
  const std::map<PVKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Arity if all terms share it.
  std::optional<unsigned> arity() const;
  bool operator==(const PolyVectorField& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

 private:
  unsigned dim_ = 1;
  std::map<PVKey, Rational> terms_;
};

// f ∂^{α₁}⊗…⊗∂^{α_n}
struct PDKey {
  Monomial monomial;
  std::vector<MultiIndex> slots;
  auto operator<=>(const PDKey&) const = default;
};

class PolyDiffOp {
 public:
  PolyDiffOp() = default;
  explicit PolyDiffOp(unsigned dim) : dim_(dim) {}

  void add_term(const Monomial& f, std::vector<MultiIndex> slots, const Rational& c);
  void add(const PolyDiffOp& other, const Rational& c = Rational(1));

  unsigned dim() const { return dim_; }
  const std::map<PDKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<unsigned> arity() const;
  bool operator==(const PolyDiffOp& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  // Value on polynomial arguments; the argument count must match every term.
  Poly evaluate(const std::vector<Poly>& args) const;

 private:
  unsigned dim_ = 1;
  std::map<PDKey, Rational> terms_;
};

// deg f − n for a polyvector term, deg f − Σ|α_j| for an operator term.
int internal_degree(const PVKey& k);
int internal_degree(const PDKey& k);

// [P,Q] = Σ_i (−1)^{(p−1)(q−1)}(∂^R_{ξ_i}P)(∂_{x_i}Q) − (∂^R_{ξ_i}Q)(∂_{x_i}P) on superfunctions f·ξ_I.
PolyVectorField schouten_bracket(const PolyVectorField& a, const PolyVectorField& b);
PolyVectorField wedge(const PolyVectorField& a, const PolyVectorField& b);

// a∘b = Σ_i (−1)^{(i−1)(|b|−1)} a(…, b(…), …) with |b| the arity of b.
PolyDiffOp circle(const PolyDiffOp& a, const PolyDiffOp& b);
PolyDiffOp gerstenhaber_bracket(const PolyDiffOp& a, const PolyDiffOp& b);
// μ(a,b) = ab
PolyDiffOp multiplication_cochain(unsigned dim);
// d_H a = [μ, a]
PolyDiffOp hochschild_differential(const PolyDiffOp& a);
PolyDiffOp cup(const PolyDiffOp& a, const PolyDiffOp& b);

PolyDiffOp hkr(const PolyVectorField& a);
// (1/n!) Σ_σ sgn(σ) a(x_σ(1), …, x_σ(n)) on each homogeneous arity.
PolyDiffOp antisymmetrize(const PolyDiffOp& a);
// Alternating operators of order one in each slot, read back as polyvectors.
// Throws DomainError on terms that are not of that form.
PolyVectorField from_alternating(const PolyDiffOp& a);
// Terms of order exactly one in every slot.
PolyDiffOp first_order_part(const PolyDiffOp& a);

// Expression parsing: polynomials such as "x^2*y - 3/2" and polyvectors such
// as "x*dx^dy + dz".
Poly parse_poly(const std::string& text, unsigned dim);
PolyVectorField parse_polyvector(const std::string& text, unsigned dim);
std::string polyvector_to_string(const PolyVectorField& p);
std::string polyvector_term_label(const PVKey& k, unsigned dim);
std::string polydiff_term_label(const PDKey& k, unsigned dim);

// a⋆b = ab + ε·hkr(π)(a,b) over Q[ε]/(ε^N), N ≤ 2. Entry k is the ε^k part.
std::vector<Poly> first_order_star(const PolyVectorField& pi, const Poly& a, const Poly& b, unsigned order);

struct StarProductReport {
  std::size_t triples = 0;
  bool first_order_associative = true;  // associator ≡ 0 mod ε²
  bool poisson = true;                  // [π,π] = 0
  PolyDiffOp obstruction;               // B(B(a,b),c) − B(a,B(b,c)), B = hkr(π)
  bool obstruction_matches_residual = true;   // equals ε² part of the MC residual of εB
  bool obstruction_evaluations_match = true;  // brute-force evaluation on monomial triples
  bool alternation_matches_bracket = true;    // first-order Alt(O) = hkr(½[π,π]) on coordinates
};

// Sweeps monomial triples of total degree ≤ max_degree.
StarProductReport star_product_report(const PolyVectorField& pi, unsigned max_degree);

// Monomials of exact total degree.
std::vector<Monomial> monomials_of_degree(unsigned dim, unsigned degree);

}  // namespace dq
