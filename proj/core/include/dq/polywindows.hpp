#pragma once

#include "dq/dgla.hpp"
#include "dq/linfty.hpp"
#include "dq/polyops.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dq {

// Internal-degree window for Hochschild cohomology computations. A cap of 0
// selects the default: order_cap = arity_max + 1, coeff_cap = max_w + order_cap.
struct InternalDegreeWindow {
  int min_w = 0;
  int max_w = 0;
  unsigned order_cap = 0;  // bound on Σ|α_j|
  unsigned coeff_cap = 0;  // bound on the coefficient degree
};

struct HkrRow {
  unsigned arity = 0;
  int internal_degree = 0;
  std::size_t complex_dim = 0;  // window dimension in this arity
  std::size_t cohomology_dim = 0;
  std::size_t tpoly_dim = 0;
  bool hkr_cocycles = true;
  bool spans = true;  // hkr representatives are independent mod coboundaries and span
  bool ok() const { return cohomology_dim == tpoly_dim && hkr_cocycles && spans; }
};

struct HkrReport {
  unsigned dim = 1;
  unsigned order_cap = 0;
  unsigned coeff_cap = 0;
  std::vector<HkrRow> rows;
  bool ok() const;
};

// Throws StructuralError if d_H leaves the window.
HkrReport hkr_quasi_iso_report(unsigned dim, const InternalDegreeWindow& window, unsigned arity_min, unsigned arity_max);

// Operators f·∂^{α₁}⊗…⊗∂^{α_n} of internal degree w with Σ|α_j| ≤ order_cap
// and deg f ≤ coeff_cap.
std::vector<PDKey> dpoly_window_basis(unsigned dim, unsigned arity, int w, unsigned order_cap, unsigned coeff_cap);

// A finite DG-Lie algebra spanned by polyvector or polydifferential terms.
// Terms of weight above the cap are dropped (quotient by an ideal); any other
// term outside the basis is an error.
template <class Key, class Elem>
struct PolyWindowDgla {
  unsigned dim = 1;
  std::vector<Key> basis;
  std::map<Key, std::size_t> index;
  std::function<bool(const Key&)> beyond;
  DglaPtr algebra;

  SparseVec encode(const Elem& x) const {
    SparseVec v;
    for (const auto& [k, c] : x.terms()) {
      auto it = index.find(k);
      if (it != index.end()) {
        add_entry(v, it->second, c);
      } else if (!beyond || !beyond(k)) {
        throw DomainError("term outside the window");
      }
    }
    return v;
  }
  Elem decode(const SparseVec& v) const {
    Elem x(dim);
    for (const auto& [i, c] : v) add_to(x, basis.at(i), c);
    return x;
  }

 private:
  static void add_to(PolyVectorField& x, const PVKey& k, const Rational& c) { x.add_term(k.monomial, k.indices, c); }
  static void add_to(PolyDiffOp& x, const PDKey& k, const Rational& c) { x.add_term(k.monomial, k.slots, c); }
};

using TpolyWindow = PolyWindowDgla<PVKey, PolyVectorField>;
using DpolyWindow = PolyWindowDgla<PDKey, PolyDiffOp>;

// Polyvectors f∂_I graded by G = deg f − 1 ∈ [0, weight_cap], Schouten
// bracket, zero differential. DG-Lie degree of an n-vector is n − 1.
TpolyWindow tpoly_window(unsigned dim, unsigned weight_cap);
// Constant polyvectors ∂_I with 1 ≤ n and 2n − 1 ≤ weight_cap (abelian).
TpolyWindow tpoly_constant_window(unsigned dim, unsigned weight_cap);
// Constant-coefficient operators of arity n ≥ 1 graded by
// T = Σ|α_j| + n − 1 ∈ [0, weight_cap], Gerstenhaber bracket, d_H.
DpolyWindow dpoly_constant_window(unsigned dim, unsigned weight_cap);

// hkr between windows as a degree-0 linear map.
GradedLinearMap hkr_window_map(const TpolyWindow& source, const DpolyWindow& target);

// i_f = [f, −] on a T_poly window, for polynomials f without constant term.
ContractionAction tpoly_contractions(const TpolyWindow& window, const std::vector<Poly>& fs);

// Taylor components U_q: Sym^q(T_poly[1]) → D_poly[1]. The arity-1 component
// is hkr or an explicit table; higher components are explicit tables.
class PolyTower {
 public:
  PolyTower(unsigned dim, unsigned arity_bound, bool hkr_linear);
  static PolyTower hkr_tower(unsigned dim) { return PolyTower(dim, 1, true); }

  unsigned dim() const { return dim_; }
  unsigned arity_bound() const { return arity_bound_; }
  // Stores a value on a word of basis terms given in any order.
  void set(std::vector<PVKey> word, const PolyDiffOp& value);
  PolyDiffOp component(const std::vector<PVKey>& word) const;
  // Multilinear extension to arbitrary polyvectors.
  PolyDiffOp eval(const std::vector<PolyVectorField>& args) const;

 private:
  unsigned dim_;
  unsigned arity_bound_;
  bool hkr_linear_;
  std::map<std::vector<PVKey>, PolyDiffOp> table_;
};

struct PropertyViolation {
  std::string property;  // "P4", "P5" or "P3'"
  std::vector<std::string> word;
};

struct PropertyReport {
  std::size_t p4_checked = 0;
  std::size_t p5_checked = 0;
  std::size_t p3_checked = 0;
  std::vector<PropertyViolation> violations;
  bool holds(const std::string& property) const;
};

// Words of basis polyvectors with arity ≤ arity_max and coefficient degree ≤
// coeff_cap, of length up to the tower's arity bound.
PropertyReport check_properties(const PolyTower& u, unsigned arity_max, unsigned coeff_cap,
                                std::size_t max_violations = 32);

// Linear vector fields x_i ∂_j.
std::vector<PolyVectorField> gl_basis(unsigned dim);

}  // namespace dq
