#pragma once

#include "dq/linalg.hpp"
#include "dq/polyops.hpp"
#include "dq/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace dq {

// Caps for the truncated coordinate ring Q[x0, x1^{±1}, x2, …, xM]: generator
// cap M, jet cap T (t-series kept up to t^T) and the x1 exponent window [−L, L].
struct CoordRing1 {
  unsigned gen_cap = 10;
  unsigned jet_cap = 8;
  int laurent_cap = 24;
};

// Exponents by generator index; only x1 may carry a negative exponent.
using CoordMonomial = std::map<unsigned, int>;

struct CoordKey {
  CoordMonomial mono;
  std::vector<unsigned> dx;  // strictly increasing indices of dx_j
  auto operator<=>(const CoordKey&) const = default;
};

// Differential form on the coordinate ring.
class CoordForm {
 public:
  CoordForm() = default;
  static CoordForm constant(const Rational& c);
  static CoordForm generator(unsigned j, int power = 1);
  static CoordForm differential(unsigned j);

  void add_term(const CoordKey& key, const Rational& c);
  void add(const CoordForm& other, const Rational& scale = 1);
  const std::map<CoordKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const CoordForm& other) const = default;

 private:
  std::map<CoordKey, Rational> terms_;
};

CoordForm wedge(const CoordForm& a, const CoordForm& b);
CoordForm exterior_d(const CoordForm& a);
std::string to_string(const CoordForm& a);
// Largest |exponent of x1| and largest generator index that occur.
int laurent_extent(const CoordForm& a);
unsigned generator_extent(const CoordForm& a);
// Throws OverflowError("laurent_cap") if some x1 exponent leaves [−L, L].
void require_laurent(const CoordForm& a, int cap);

// The derivation v̄ of the ring induced by a truncated Witt element v.
struct RingDerivation {
  std::map<unsigned, Rational> coeffs;  // Σ α_i δ_i
  CoordForm on_generator(unsigned j) const;
};
// Derivation extension to functions (0-forms).
CoordForm apply_derivation(const RingDerivation& v, const CoordForm& f);
// Contraction of forms with the vector field of v.
CoordForm contract(const RingDerivation& v, const CoordForm& a);

// δ_i(x_j) = −(j−i+1) x_{j−i+1}, with x_j = 0 for j < 0.
CoordForm witt_act(unsigned i, unsigned j);
RingDerivation witt_generator(unsigned i);

struct WittFailure {
  unsigned i = 0, j = 0;
  std::string generator;
  CoordForm defect;
};
struct WittReport {
  std::size_t checked = 0;
  std::vector<WittFailure> failures;
  bool holds() const { return failures.empty(); }
};
// [δ_i, δ_j] = (j−i) δ_{i+j−1} on x_0..x_gen_cap and x1^{−1}, all i, j ≤ max_index.
WittReport check_witt_relations(unsigned max_index, unsigned gen_cap);

// Power series in t with form coefficients, known modulo t^{cap+1}.
// `truncated` records that nonzero terms beyond the cap were dropped.
struct Series {
  unsigned cap = 0;
  std::vector<CoordForm> coeffs;
  bool truncated = false;

  explicit Series(unsigned c = 0) : cap(c), coeffs(c + 1) {}
  bool is_zero() const;
};
Series series_mul(const Series& a, const Series& b);

// f ↦ f̃ for f ∈ Q[x], the ring map with x ↦ Σ_{i≤T} x_i tⁱ.
Series tilde_expand(const Poly& f, unsigned jet_cap);

// L_{v̄}(f̃) + L_v(f̃) up to t^T; zero certifies the instance.
Series check_invariance(const Poly& f, const RingDerivation& v, unsigned jet_cap);

// ω = Σ_k g_k t^k ∂_t with g_k ∈ Ω¹.
struct MaurerCartanForm1 {
  unsigned jet_cap = 0;
  std::vector<CoordForm> g;
};

MaurerCartanForm1 mc_form(const CoordRing1& ring);

struct McFormReport {
  Series defining_residual;   // (d + ω)(x̃), coefficients t^0..t^T
  Series mc_residual;         // d₀ω + ½[ω,ω], coefficients t^0..t^{T−1}
  std::map<unsigned, Series> contraction_residual;  // i_{δ̄_i}ω − tⁱ
  bool defining_ok = false;
  bool mc_ok = false;
  bool contraction_ok = false;
  bool holds() const { return defining_ok && mc_ok && contraction_ok; }
};
McFormReport verify_mc_form(const MaurerCartanForm1& omega, const CoordRing1& ring, unsigned contraction_max);

struct Gl1Report {
  std::vector<std::pair<unsigned, CoordForm>> invariants;  // y_i = x1^{−i} x_i
  bool weights_ok = true;      // δ̄₁ x_i = −i x_i
  bool invariants_ok = true;   // δ̄₁ y_i = 0
  bool x_tilde_invariant = true;
  bool holds() const { return weights_ok && invariants_ok && x_tilde_invariant; }
};
Gl1Report gl1_invariants(unsigned gen_cap, unsigned jet_cap = 4);

// Ω_{R^aff} ⊗ R for R = Q[x], in the generators u = y0 − x, y2, …, yM and their
// differentials. Weight counts u, y_i, du, dy_i with 1 and x with 0.
struct DeltaKey {
  unsigned xpow = 0;
  std::vector<unsigned> exps;   // exponents of u, y2, …, yM
  std::vector<unsigned> dgens;  // strictly increasing positions of du, dy_i
  auto operator<=>(const DeltaKey&) const = default;
};
using DeltaForm = std::map<DeltaKey, Rational>;

unsigned delta_weight(const DeltaKey& k);
std::string delta_label(const DeltaKey& k, unsigned gen_cap);
DeltaForm delta_d(const DeltaForm& a);
DeltaForm delta_phi0(const DeltaForm& a);
// h(ω) = ∫_{z=0}^{1} H(ω), with H(ω) written as α(z) + dz·β(z).
DeltaForm homotopy_h(const DeltaForm& a);

struct AcyclicityReport {
  unsigned gen_cap = 0, weight_cap = 0, x_cap = 0;
  std::size_t basis_size = 0;
  std::vector<std::string> identity_failures;  // labels where dh + hd ≠ φ1 − φ0
  std::map<int, std::size_t> cohomology;        // by form degree
  bool h0_is_r = false;
  bool higher_vanish = false;
  bool holds() const { return identity_failures.empty() && h0_is_r && higher_vanish; }
};
// Monomial basis with weight ≤ weight_cap and x-degree ≤ x_cap.
std::vector<DeltaKey> delta_basis(unsigned gen_cap, unsigned weight_cap, unsigned x_cap);
AcyclicityReport acyclicity_homotopy(unsigned gen_cap, unsigned weight_cap, unsigned x_cap);

// Degree-n part of Q → Q ⊗ Ω_{Q[t1..tm]} with deg t = deg dt = 1.
struct PoincarePiece {
  unsigned vars = 0, weight = 0;
  std::map<int, std::size_t> cohomology;  // augmented, so exact iff all zero
  bool exact = false;
};
PoincarePiece graded_poincare_piece(unsigned vars, unsigned weight);

}  // namespace dq
