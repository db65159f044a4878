#pragma once

#include "dq/dgla.hpp"
#include "dq/linalg.hpp"
#include "dq/polyops.hpp"

#include <optional>
#include <vector>

namespace dq {

// Truncated cosimplicial cochain complex A⁰ ⇉ A¹ … A^{n_max}.
struct CosimplicialComplex {
  unsigned n_max = 0;
  std::vector<CochainComplex> levels;                       // 0..n_max
  std::vector<std::vector<GradedLinearMap>> cofaces;        // [n][i]: Aⁿ⁻¹ → Aⁿ, 1 ≤ n, 0 ≤ i ≤ n
  std::vector<std::vector<GradedLinearMap>> codegeneracies; // [n][j]: Aⁿ⁺¹ → Aⁿ, n < n_max, 0 ≤ j ≤ n
  std::vector<DglaPtr> lie;  // optional DG-Lie structure per level, same spaces as `levels`
};

// Throws StructuralError on a violated identity or a structure map that is
// not a chain map.
void check_cosimplicial_identities(const CosimplicialComplex& a);

CosimplicialComplex constant_cosimplicial(const CochainComplex& a, unsigned n_max);
CosimplicialComplex constant_cosimplicial(DglaPtr g, unsigned n_max);

// Product total complex with d = δ + (−1)ⁿ d_int, δ = Σ(−1)^i dⁱ. Labels
// "n:label". The coface part out of level n_max is dropped.
CochainComplex unnormalized_cochain(const CosimplicialComplex& a);

struct NormalizedCochains {
  CochainComplex complex;
  GradedLinearMap inclusion;  // into unnormalized_cochain(a)
  unsigned n_max = 0;
};

// Common kernels of the codegeneracies.
NormalizedCochains normalized_cochain(const CosimplicialComplex& a);

// Polynomial forms on Δ[n] in coordinates t₁..t_n (t₀ = 1 − Σt_i eliminated).
struct FormKey {
  Monomial poly;               // exponents of t₁..t_n
  std::vector<unsigned> dts;   // increasing 0-based indices into t₁..t_n
  auto operator<=>(const FormKey&) const = default;
};
using Form = std::map<FormKey, Rational>;

unsigned form_degree(const FormKey& k);
// Polynomial degree plus form degree.
unsigned total_degree(const FormKey& k);

struct SimplexDeRham {
  unsigned n = 0;
  unsigned cap = 0;  // bound on total_degree

  std::vector<FormKey> basis() const;
  static Form d(const Form& w);
  static Form wedge(const Form& a, const Form& b);
  // Restriction to the i-th face: Ω(Δ[n]) → Ω(Δ[n−1]).
  Form face(unsigned i, const Form& w) const;
  // Pullback along the j-th degeneracy Δ[n+1] → Δ[n].
  Form degeneracy(unsigned j, const Form& w) const;
};

void form_add(Form& y, const Rational& a, const Form& x);
std::string form_label(const FormKey& k);

// Exact integral over {t_i ≥ 0, Σt_i ≤ 1} with orientation dt₁∧…∧dt_n.
// Throws DomainError if w has a component of form degree ≠ n.
Rational integrate_form(unsigned n, const Form& w);

struct ThomSullivan {
  unsigned n_max = 0;
  unsigned cap = 0;
  struct Cell {
    unsigned level;
    FormKey form;
    std::size_t a;  // basis index in A^level
  };
  std::map<int, std::vector<Cell>> cells;  // ambient coordinates per total degree
  CochainComplex complex;
  std::vector<SparseVec> ambient;  // basis vector i in the cells of its degree
  DglaPtr algebra;                 // set when the input carries a DG-Lie structure
};

// The end over Δ_{≤n_max} of Ω(Δ[•])_{≤cap} ⊗ A^•. With a DG-Lie input the
// componentwise bracket is installed; a bracket that needs forms beyond the
// cap raises OverflowError.
ThomSullivan thom_sullivan(const CosimplicialComplex& a, unsigned cap);

struct TsComparison {
  GradedLinearMap map;  // ThomSullivan → normalized cochains
  QuasiIsoReport verdict;
};

// c ↦ Σ_n ∫_{Δ[n]} c_n; verdict over [lo, hi].
TsComparison ts_comparison(const ThomSullivan& ts, const CosimplicialComplex& a, const NormalizedCochains& n, int lo,
                           int hi);

}  // namespace dq
