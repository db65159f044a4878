#include "dq/coordbundle.hpp"

#include "dq/errors.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace dq {

namespace {

// Merges two increasing index lists; nullopt if they share an index.
std::optional<std::pair<std::vector<unsigned>, int>> merge_odd(const std::vector<unsigned>& a,
                                                               const std::vector<unsigned>& b) {
  std::vector<unsigned> out;
  out.reserve(a.size() + b.size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j] < a[i]) {
      if ((a.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b[j++]);
    } else {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(out), sign);
}

CoordMonomial mono_mul(const CoordMonomial& a, const CoordMonomial& b) {
  CoordMonomial r = a;
  for (const auto& [j, e] : b) {
    int& slot = r[j];
    slot += e;
    if (slot == 0) r.erase(j);
  }
  return r;
}

}  // namespace

CoordForm CoordForm::constant(const Rational& c) {
  CoordForm f;
  f.add_term({}, c);
  return f;
}

CoordForm CoordForm::generator(unsigned j, int power) {
  CoordForm f;
  CoordKey k;
  if (power != 0) k.mono[j] = power;
  f.add_term(k, 1);
  return f;
}

CoordForm CoordForm::differential(unsigned j) {
  CoordForm f;
  f.add_term({{}, {j}}, 1);
  return f;
}

void CoordForm::add_term(const CoordKey& key, const Rational& c) {
  if (dq::is_zero(c)) return;
  for (const auto& [j, e] : key.mono)
    if (e < 0 && j != 1) throw DomainError("only x1 may be inverted");
  auto [it, fresh] = terms_.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (dq::is_zero(it->second)) terms_.erase(it);
  }
}

void CoordForm::add(const CoordForm& other, const Rational& scale) {
  for (const auto& [k, c] : other.terms_) add_term(k, c * scale);
}

CoordForm wedge(const CoordForm& a, const CoordForm& b) {
  CoordForm r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      auto merged = merge_odd(ka.dx, kb.dx);
      if (!merged) continue;
      r.add_term({mono_mul(ka.mono, kb.mono), merged->first}, ca * cb * merged->second);
    }
  return r;
}

CoordForm exterior_d(const CoordForm& a) {
  CoordForm r;
  for (const auto& [k, c] : a.terms())
    for (const auto& [j, e] : k.mono) {
      CoordMonomial m = k.mono;
      if (--m[j] == 0) m.erase(j);
      auto merged = merge_odd({j}, k.dx);
      if (!merged) continue;
      r.add_term({m, merged->first}, c * e * merged->second);
    }
  return r;
}

std::string to_string(const CoordForm& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    for (const auto& [j, e] : k.mono) {
      out += "*x" + std::to_string(j);
      if (e != 1) out += "^" + std::to_string(e);
    }
    for (std::size_t i = 0; i < k.dx.size(); ++i) out += (i == 0 ? "*dx" : "^dx") + std::to_string(k.dx[i]);
  }
  return out;
}

int laurent_extent(const CoordForm& a) {
  int m = 0;
  for (const auto& [k, c] : a.terms()) {
    auto it = k.mono.find(1);
    if (it != k.mono.end()) m = std::max(m, std::abs(it->second));
  }
  return m;
}

unsigned generator_extent(const CoordForm& a) {
  unsigned m = 0;
  for (const auto& [k, c] : a.terms()) {
    if (!k.mono.empty()) m = std::max(m, k.mono.rbegin()->first);
    if (!k.dx.empty()) m = std::max(m, k.dx.back());
  }
  return m;
}

void require_laurent(const CoordForm& a, int cap) {
  int e = laurent_extent(a);
  if (e > cap)
    throw OverflowError("laurent_cap", "x1 exponent " + std::to_string(e) + " exceeds laurent cap " +
                                           std::to_string(cap));
}

CoordForm witt_act(unsigned i, unsigned j) {
  int m = static_cast<int>(j) - static_cast<int>(i) + 1;
  if (m <= 0) return {};
  CoordForm r = CoordForm::generator(static_cast<unsigned>(m));
  CoordForm out;
  out.add(r, Rational(-m));
  return out;
}

RingDerivation witt_generator(unsigned i) {
  RingDerivation v;
  v.coeffs[i] = 1;
  return v;
}

CoordForm RingDerivation::on_generator(unsigned j) const {
  CoordForm r;
  for (const auto& [i, a] : coeffs) r.add(witt_act(i, j), a);
  return r;
}

CoordForm apply_derivation(const RingDerivation& v, const CoordForm& f) {
  CoordForm r;
  for (const auto& [k, c] : f.terms()) {
    if (!k.dx.empty()) throw DomainError("apply_derivation expects a function");
    for (const auto& [j, e] : k.mono) {
      CoordForm partial;
      CoordMonomial m = k.mono;
      if (--m[j] == 0) m.erase(j);
      partial.add_term({m, {}}, c * e);
      r.add(wedge(partial, v.on_generator(j)));
    }
  }
  return r;
}

CoordForm contract(const RingDerivation& v, const CoordForm& a) {
  CoordForm r;
  for (const auto& [k, c] : a.terms())
    for (std::size_t p = 0; p < k.dx.size(); ++p) {
      std::vector<unsigned> rest = k.dx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      CoordForm head;
      head.add_term({k.mono, rest}, p % 2 == 0 ? c : Rational(-c));
      r.add(wedge(head, v.on_generator(k.dx[p])));
    }
  return r;
}

WittReport check_witt_relations(unsigned max_index, unsigned gen_cap) {
  WittReport rep;
  std::vector<std::pair<std::string, CoordForm>> gens;
  for (unsigned k = 0; k <= gen_cap; ++k) gens.emplace_back("x" + std::to_string(k), CoordForm::generator(k));
  gens.emplace_back("x1^-1", CoordForm::generator(1, -1));
  for (unsigned i = 0; i <= max_index; ++i)
    for (unsigned j = 0; j <= max_index; ++j) {
      RingDerivation di = witt_generator(i), dj = witt_generator(j);
      for (const auto& [name, f] : gens) {
        CoordForm lhs = apply_derivation(di, apply_derivation(dj, f));
        lhs.add(apply_derivation(dj, apply_derivation(di, f)), -1);
        if (i + j >= 1) {
          Rational coeff = Rational(static_cast<int>(j) - static_cast<int>(i));
          lhs.add(apply_derivation(witt_generator(i + j - 1), f), -coeff);
        }
        ++rep.checked;
        if (!lhs.is_zero()) rep.failures.push_back({i, j, name, lhs});
      }
    }
  return rep;
}

bool Series::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const CoordForm& f) { return f.is_zero(); });
}

Series series_mul(const Series& a, const Series& b) {
  Series r(std::min(a.cap, b.cap));
  r.truncated = a.truncated || b.truncated;
  for (unsigned i = 0; i <= a.cap; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (unsigned j = 0; j <= b.cap; ++j) {
      if (b.coeffs[j].is_zero()) continue;
      if (i + j > r.cap) {
        r.truncated = true;
        break;
      }
      r.coeffs[i + j].add(wedge(a.coeffs[i], b.coeffs[j]));
    }
  }
  return r;
}

Series tilde_expand(const Poly& f, unsigned jet_cap) {
  Series x(jet_cap);
  for (unsigned i = 0; i <= jet_cap; ++i) x.coeffs[i] = CoordForm::generator(i);
  x.truncated = true;
  unsigned top = 0;
  for (const auto& [m, c] : f) {
    if (m.size() > 1) throw DomainError("tilde_expand expects a polynomial in one variable");
    top = std::max(top, m.empty() ? 0u : m[0]);
  }
  Series out(jet_cap);
  Series power(jet_cap);
  power.coeffs[0] = CoordForm::constant(1);
  for (unsigned n = 0; n <= top; ++n) {
    if (n > 0) power = series_mul(power, x);
    auto it = f.find(Monomial{n});
    if (n == 0 && it == f.end()) it = f.find(Monomial{});
    if (it == f.end()) continue;
    for (unsigned k = 0; k <= jet_cap; ++k) out.coeffs[k].add(power.coeffs[k], it->second);
    out.truncated = out.truncated || power.truncated;
  }
  return out;
}

Series check_invariance(const Poly& f, const RingDerivation& v, unsigned jet_cap) {
  Series ft = tilde_expand(f, jet_cap + 1);
  Series out(jet_cap);
  for (unsigned k = 0; k <= jet_cap; ++k) {
    out.coeffs[k] = apply_derivation(v, ft.coeffs[k]);
    for (const auto& [i, a] : v.coeffs) {
      int src = static_cast<int>(k) - static_cast<int>(i) + 1;
      if (src < 0) continue;
      out.coeffs[k].add(ft.coeffs[static_cast<unsigned>(src)], a * src);
    }
  }
  return out;
}

MaurerCartanForm1 mc_form(const CoordRing1& ring) {
  const unsigned T = ring.jet_cap;
  if (ring.gen_cap < T + 1) throw DomainError("mc_form needs gen_cap >= jet_cap + 1");
  MaurerCartanForm1 w;
  w.jet_cap = T;
  const CoordForm inv = CoordForm::generator(1, -1);
  for (unsigned k = 0; k <= T; ++k) {
    CoordForm num;
    num.add(CoordForm::differential(k), -1);
    for (unsigned j = 0; j < k; ++j)
      num.add(wedge(w.g[j], CoordForm::generator(k - j + 1)), -Rational(k - j + 1));
    CoordForm gk = wedge(num, inv);
    require_laurent(gk, ring.laurent_cap);
    w.g.push_back(std::move(gk));
  }
  return w;
}

McFormReport verify_mc_form(const MaurerCartanForm1& omega, const CoordRing1& ring, unsigned contraction_max) {
  const unsigned T = omega.jet_cap;
  if (omega.g.size() != T + 1) throw DomainError("Maurer-Cartan form has the wrong number of coefficients");
  if (contraction_max > T) throw DomainError("contraction index beyond the jet cap");
  McFormReport rep;

  rep.defining_residual = Series(T);
  for (unsigned k = 0; k <= T; ++k) {
    CoordForm& r = rep.defining_residual.coeffs[k];
    r.add(CoordForm::differential(k));
    for (unsigned j = 0; j <= k; ++j) r.add(wedge(omega.g[j], CoordForm::generator(k - j + 1)), Rational(k - j + 1));
    require_laurent(r, ring.laurent_cap);
  }
  rep.defining_ok = rep.defining_residual.is_zero();

  rep.mc_residual = Series(T == 0 ? 0 : T - 1);
  if (T > 0)
    for (unsigned k = 0; k + 1 <= T; ++k) {
      CoordForm& r = rep.mc_residual.coeffs[k];
      r.add(exterior_d(omega.g[k]));
      // ½ Σ_{i+j−1=k} g_i g_j [δ_i, δ_j]
      for (unsigned i = 0; i <= k + 1; ++i) {
        unsigned j = k + 1 - i;
        Rational c = Rational(static_cast<int>(j) - static_cast<int>(i), 2);
        r.add(wedge(omega.g[i], omega.g[j]), c);
      }
      require_laurent(r, ring.laurent_cap);
    }
  rep.mc_ok = rep.mc_residual.is_zero();

  rep.contraction_ok = true;
  for (unsigned i = 0; i <= contraction_max; ++i) {
    Series s(T);
    RingDerivation v = witt_generator(i);
    for (unsigned k = 0; k <= T; ++k) {
      s.coeffs[k] = contract(v, omega.g[k]);
      if (k == i) s.coeffs[k].add(CoordForm::constant(-1));
    }
    if (!s.is_zero()) rep.contraction_ok = false;
    rep.contraction_residual.emplace(i, std::move(s));
  }
  return rep;
}

Gl1Report gl1_invariants(unsigned gen_cap, unsigned jet_cap) {
  Gl1Report rep;
  RingDerivation euler = witt_generator(1);
  for (unsigned i = 0; i <= gen_cap; ++i) {
    CoordForm w = apply_derivation(euler, CoordForm::generator(i));
    CoordForm expect;
    expect.add(CoordForm::generator(i), -Rational(i));
    if (!(w == expect)) rep.weights_ok = false;
    if (i == 1) continue;
    CoordForm y = wedge(CoordForm::generator(1, -static_cast<int>(i)), CoordForm::generator(i));
    if (!apply_derivation(euler, y).is_zero()) rep.invariants_ok = false;
    rep.invariants.emplace_back(i, std::move(y));
  }
  rep.x_tilde_invariant = check_invariance(Poly{{Monomial{1}, Rational(1)}}, euler, jet_cap).is_zero();
  return rep;
}

namespace {

std::string delta_name(unsigned p) { return p == 0 ? "u" : "y" + std::to_string(p + 1); }

std::string label_with(const DeltaKey& k, const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  std::string out;
  auto put = [&](const std::string& s) { out += (out.empty() ? "" : "*") + s; };
  if (k.xpow > 0) put(k.xpow == 1 ? "x" : "x^" + std::to_string(k.xpow));
  for (std::size_t p = 0; p < k.exps.size(); ++p)
    if (k.exps[p] > 0) put(k.exps[p] == 1 ? even[p] : even[p] + "^" + std::to_string(k.exps[p]));
  for (unsigned p : k.dgens) put(odd[p]);
  return out.empty() ? "1" : out;
}

void delta_add(DeltaForm& f, const DeltaKey& k, const Rational& c) {
  if (dq::is_zero(c)) return;
  auto [it, fresh] = f.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (dq::is_zero(it->second)) f.erase(it);
  }
}

// Elements of Δ ⊗ Q[z, dz], written dz^b · z^n · (Δ-monomial).
struct ZKey {
  DeltaKey key;
  unsigned z = 0;
  bool dz = false;
  auto operator<=>(const ZKey&) const = default;
};
using ZForm = std::map<ZKey, Rational>;

ZForm zmul(const ZForm& a, const ZForm& b) {
  ZForm r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      if (ka.dz && kb.dz) continue;
      auto merged = merge_odd(ka.key.dgens, kb.key.dgens);
      if (!merged) continue;
      int sign = merged->second;
      if (kb.dz && ka.key.dgens.size() % 2 == 1) sign = -sign;
      ZKey k;
      k.key.xpow = ka.key.xpow + kb.key.xpow;
      k.key.exps = ka.key.exps;
      for (std::size_t p = 0; p < kb.key.exps.size(); ++p) k.key.exps[p] += kb.key.exps[p];
      k.key.dgens = merged->first;
      k.z = ka.z + kb.z;
      k.dz = ka.dz || kb.dz;
      Rational c = ca * cb * sign;
      auto [it, fresh] = r.emplace(k, c);
      if (!fresh) {
        it->second += c;
        if (dq::is_zero(it->second)) r.erase(it);
      }
    }
  return r;
}

ZForm big_h(const DeltaKey& k) {
  const std::size_t n = k.exps.size();
  ZKey one;
  one.key.exps.assign(n, 0);
  one.key.xpow = k.xpow;
  ZForm out{{one, Rational(1)}};
  for (std::size_t p = 0; p < n; ++p) {
    ZKey g;
    g.key.exps.assign(n, 0);
    g.key.exps[p] = 1;
    g.z = 1;
    ZForm hg{{g, Rational(1)}};
    for (unsigned e = 0; e < k.exps[p]; ++e) out = zmul(out, hg);
  }
  for (unsigned p : k.dgens) {
    // H(dg) = d(z g) = dz·g + z·dg
    ZKey a;
    a.key.exps.assign(n, 0);
    a.key.exps[p] = 1;
    a.dz = true;
    ZKey b;
    b.key.exps.assign(n, 0);
    b.key.dgens = {p};
    b.z = 1;
    out = zmul(out, ZForm{{a, Rational(1)}, {b, Rational(1)}});
  }
  return out;
}

DeltaForm homotopy_h_key(const DeltaKey& k) {
  DeltaForm r;
  for (const auto& [zk, c] : big_h(k))
    if (zk.dz) delta_add(r, zk.key, c / Rational(zk.z + 1));
  return r;
}

std::vector<DeltaKey> keys_of_weight(unsigned n, unsigned weight, unsigned xpow) {
  std::vector<DeltaKey> out;
  DeltaKey k;
  k.xpow = xpow;
  k.exps.assign(n, 0);
  std::vector<unsigned> odd;
  // choose the odd set, then distribute the remaining weight over the even generators
  std::function<void(unsigned, unsigned)> even = [&](unsigned p, unsigned left) {
    if (p + 1 == n) {
      k.exps[p] = left;
      out.push_back(k);
      k.exps[p] = 0;
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      k.exps[p] = e;
      even(p + 1, left - e);
    }
    k.exps[p] = 0;
  };
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    k.dgens.clear();
    for (unsigned p = 0; p < n; ++p)
      if (mask & (1u << p)) k.dgens.push_back(p);
    if (k.dgens.size() > weight) continue;
    unsigned left = weight - static_cast<unsigned>(k.dgens.size());
    if (n == 0) {
      if (left == 0) out.push_back(k);
    } else {
      even(0, left);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

unsigned delta_weight(const DeltaKey& k) {
  unsigned w = static_cast<unsigned>(k.dgens.size());
  for (unsigned e : k.exps) w += e;
  return w;
}

std::string delta_label(const DeltaKey& k, unsigned gen_cap) {
  std::vector<std::string> even, odd;
  for (std::size_t p = 0; p < k.exps.size(); ++p) {
    even.push_back(delta_name(static_cast<unsigned>(p)));
    odd.push_back("d" + even.back());
  }
  (void)gen_cap;
  return label_with(k, even, odd);
}

DeltaForm delta_d(const DeltaForm& a) {
  DeltaForm r;
  for (const auto& [k, c] : a)
    for (std::size_t p = 0; p < k.exps.size(); ++p) {
      if (k.exps[p] == 0) continue;
      auto merged = merge_odd({static_cast<unsigned>(p)}, k.dgens);
      if (!merged) continue;
      DeltaKey nk = k;
      nk.exps[p] -= 1;
      nk.dgens = merged->first;
      delta_add(r, nk, c * k.exps[p] * merged->second);
    }
  return r;
}

DeltaForm delta_phi0(const DeltaForm& a) {
  DeltaForm r;
  for (const auto& [k, c] : a)
    if (delta_weight(k) == 0) delta_add(r, k, c);
  return r;
}

DeltaForm homotopy_h(const DeltaForm& a) {
  DeltaForm r;
  for (const auto& [k, c] : a)
    for (const auto& [hk, hc] : homotopy_h_key(k)) delta_add(r, hk, c * hc);
  return r;
}

std::vector<DeltaKey> delta_basis(unsigned gen_cap, unsigned weight_cap, unsigned x_cap) {
  if (gen_cap < 2) throw DomainError("acyclicity window needs gen_cap >= 2");
  const unsigned n = gen_cap;  // u, y2, …, yM
  std::vector<DeltaKey> out;
  for (unsigned a = 0; a <= x_cap; ++a)
    for (unsigned w = 0; w <= weight_cap; ++w)
      for (auto& k : keys_of_weight(n, w, a)) out.push_back(std::move(k));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct BuiltComplex {
  CochainComplex complex;
  std::map<DeltaKey, std::pair<int, std::size_t>> where;
};

BuiltComplex build_complex(const std::vector<DeltaKey>& keys,
                           const std::function<std::string(const DeltaKey&)>& label, bool augmented) {
  std::map<int, std::vector<std::string>> basis;
  BuiltComplex out;
  for (const auto& k : keys) {
    int deg = static_cast<int>(k.dgens.size());
    out.where[k] = {deg, basis[deg].size()};
    basis[deg].push_back(label(k));
  }
  if (augmented) basis[-1].push_back("aug");
  SpacePtr space = make_space(basis);
  GradedLinearMap d(space, space, 1);
  for (const auto& k : keys) {
    std::size_t col = space->index(static_cast<int>(k.dgens.size()), label(k));
    for (const auto& [t, c] : delta_d(DeltaForm{{k, Rational(1)}}))
      d.add(col, space->index(static_cast<int>(t.dgens.size()), label(t)), c);
  }
  if (augmented) {
    std::size_t col = space->index(-1, "aug");
    for (const auto& k : keys)
      if (delta_weight(k) == 0) d.add(col, space->index(0, label(k)), 1);
  }
  out.complex = CochainComplex(space, d);
  return out;
}

}  // namespace

AcyclicityReport acyclicity_homotopy(unsigned gen_cap, unsigned weight_cap, unsigned x_cap) {
  AcyclicityReport rep;
  rep.gen_cap = gen_cap;
  rep.weight_cap = weight_cap;
  rep.x_cap = x_cap;
  std::vector<DeltaKey> keys = delta_basis(gen_cap, weight_cap, x_cap);
  rep.basis_size = keys.size();
  for (const auto& k : keys) {
    DeltaForm b{{k, Rational(1)}};
    DeltaForm lhs = delta_d(homotopy_h(b));
    for (const auto& [t, c] : homotopy_h(delta_d(b))) delta_add(lhs, t, c);
    DeltaForm rhs = b;
    for (const auto& [t, c] : delta_phi0(b)) delta_add(rhs, t, -c);
    for (const auto& [t, c] : lhs) {
      if (delta_weight(t) > weight_cap || t.xpow > x_cap)
        throw OverflowError("weight_cap", "homotopy left the truncation at " + delta_label(t, gen_cap));
    }
    if (lhs != rhs) rep.identity_failures.push_back(delta_label(k, gen_cap));
  }
  auto built = build_complex(keys, [&](const DeltaKey& k) { return delta_label(k, gen_cap); }, false);
  for (int deg : built.complex.space()->degrees())
    rep.cohomology[deg] = cohomology(built.complex, deg).dimension;
  rep.h0_is_r = rep.cohomology[0] == x_cap + 1;
  rep.higher_vanish = true;
  for (const auto& [deg, dim] : rep.cohomology)
    if (deg > 0 && dim != 0) rep.higher_vanish = false;
  return rep;
}

PoincarePiece graded_poincare_piece(unsigned vars, unsigned weight) {
  PoincarePiece piece;
  piece.vars = vars;
  piece.weight = weight;
  std::vector<std::string> even, odd;
  for (unsigned p = 0; p < vars; ++p) {
    even.push_back("t" + std::to_string(p + 1));
    odd.push_back("dt" + std::to_string(p + 1));
  }
  auto keys = keys_of_weight(vars, weight, 0);
  auto built = build_complex(keys, [&](const DeltaKey& k) { return label_with(k, even, odd); }, weight == 0);
  piece.exact = true;
  for (int deg : built.complex.space()->degrees()) {
    std::size_t dim = cohomology(built.complex, deg).dimension;
    piece.cohomology[deg] = dim;
    if (dim != 0) piece.exact = false;
  }
  return piece;
}

}  // namespace dq
