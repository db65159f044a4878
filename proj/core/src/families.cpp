#include "dq/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dq {

int rand_int(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

namespace {

void put(BracketTable& t, std::size_t a, std::size_t b, SparseVec v) {
  t[{a, b}] = v;
  t[{b, a}] = scaled(v, Rational(-1));
}

std::string form_label(const FormMonomial& m) {
  static const char* names[] = {"s", "t", "u", "v", "w"};
  static const char* odd_names[] = {"ea", "eb", "ec", "ed"};
  std::string out;
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
  }
  for (std::size_t i = 0; i < m.exps.size(); ++i) {
    if (!((m.mask >> i) & 1u)) continue;
    if (!out.empty()) out += '*';
    out += std::string("d") + names[i];
  }
  for (std::size_t j = 0; j < 4; ++j) {
    if (!((m.mask >> (m.exps.size() + j)) & 1u)) continue;
    if (!out.empty()) out += '*';
    out += odd_names[j];
  }
  return out.empty() ? "1" : out;
}

int wedge_sign(unsigned s, unsigned t) {
  int sign = 1;
  for (unsigned a = 0; a < 32; ++a) {
    if (!((s >> a) & 1u)) continue;
    for (unsigned b = 0; b < a; ++b)
      if ((t >> b) & 1u) sign = -sign;
  }
  return sign;
}

}  // namespace

LieAlgebraData lie_abelian(unsigned n) {
  LieAlgebraData l;
  l.name = "abelian" + std::to_string(n);
  for (unsigned i = 0; i < n; ++i) l.labels.push_back("a" + std::to_string(i));
  return l;
}

LieAlgebraData lie_affine2() {
  LieAlgebraData l{"affine2", {"a", "b"}, {}};
  put(l.brackets, 0, 1, {{1, Rational(1)}});
  return l;
}

LieAlgebraData lie_heisenberg() {
  LieAlgebraData l{"heisenberg", {"x", "y", "z"}, {}};
  put(l.brackets, 0, 1, {{2, Rational(1)}});
  return l;
}

LieAlgebraData lie_sl2() {
  LieAlgebraData l{"sl2", {"h", "e", "f"}, {}};
  put(l.brackets, 0, 1, {{1, Rational(2)}});
  put(l.brackets, 0, 2, {{2, Rational(-2)}});
  put(l.brackets, 1, 2, {{0, Rational(1)}});
  return l;
}

LieAlgebraData lie_broken_jacobi() {
  // [x,y] = y, [y,z] = x, [x,z] = 0: Jacobiator on (x,y,z) is −x ≠ 0
  LieAlgebraData l{"broken", {"x", "y", "z"}, {}};
  put(l.brackets, 0, 1, {{1, Rational(1)}});
  put(l.brackets, 1, 2, {{0, Rational(1)}});
  return l;
}

DGLieAlgebra lie_algebra(const LieAlgebraData& lie) {
  SpacePtr s = make_space({{0, lie.labels}});
  return DGLieAlgebra(CochainComplex(s, GradedLinearMap(s, s, 1)), lie.brackets);
}

unsigned FormMonomial::weight() const {
  return std::accumulate(exps.begin(), exps.end(), 0u) + static_cast<unsigned>(std::popcount(mask));
}

int FormMonomial::degree() const { return std::popcount(mask); }

std::optional<std::size_t> FormsAlgebra::find(const FormMonomial& m) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].exps == m.exps && basis[i].mask == m.mask) return i;
  return std::nullopt;
}

std::optional<std::pair<std::size_t, int>> FormsAlgebra::multiply(std::size_t a, std::size_t b) const {
  const FormMonomial& x = basis[a];
  const FormMonomial& y = basis[b];
  if (x.mask & y.mask) return std::nullopt;
  FormMonomial m{x.exps, x.mask | y.mask};
  for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += y.exps[i];
  if (m.weight() > weight_cap) return std::nullopt;
  return std::make_pair(*find(m), wedge_sign(x.mask, y.mask));
}

std::vector<std::pair<std::size_t, Rational>> FormsAlgebra::d(std::size_t a) const {
  std::vector<std::pair<std::size_t, Rational>> out;
  const FormMonomial& x = basis[a];
  for (unsigned i = 0; i < vars; ++i) {
    if (x.exps[i] == 0 || ((x.mask >> i) & 1u)) continue;
    FormMonomial m = x;
    m.exps[i] -= 1;
    m.mask |= 1u << i;
    // ds_i moves past the ds_j with j < i
    const int sign = (std::popcount(x.mask & ((1u << i) - 1)) & 1) ? -1 : 1;
    out.emplace_back(*find(m), Rational(sign * static_cast<int>(x.exps[i])));
  }
  return out;
}

std::vector<std::pair<std::size_t, Rational>> FormsAlgebra::contract(const std::vector<std::vector<int>>& a,
                                                                     std::size_t k) const {
  std::map<std::size_t, Rational> acc;
  const FormMonomial& x = basis[k];
  int pos = 0;
  for (unsigned i = 0; i < vars; ++i) {
    if (!((x.mask >> i) & 1u)) continue;
    const int sign = (pos & 1) ? -1 : 1;
    ++pos;
    for (unsigned j = 0; j < vars; ++j) {
      if (a[i][j] == 0) continue;
      FormMonomial m = x;
      m.mask &= ~(1u << i);
      m.exps[j] += 1;
      auto idx = find(m);
      if (!idx) continue;  // beyond the cap cannot occur: weight is preserved
      acc[*idx] += sign * a[i][j];
    }
  }
  std::vector<std::pair<std::size_t, Rational>> out;
  for (auto& [i, c] : acc)
    if (!is_zero(c)) out.emplace_back(i, c);
  return out;
}

FormsAlgebra forms_algebra(unsigned vars, unsigned weight_cap, unsigned odd) {
  if (vars == 0 || vars > 5) throw DomainError("forms algebra supports 1..5 variables");
  if (odd > 4) throw DomainError("forms algebra supports at most 4 odd generators");
  FormsAlgebra f;
  f.vars = vars;
  f.odd = odd;
  f.weight_cap = weight_cap;
  std::vector<FormMonomial> all;
  std::vector<unsigned> e(vars, 0);
  auto rec = [&](auto&& self, unsigned i, unsigned used) -> void {
    if (i == vars) {
      for (unsigned mask = 0; mask < (1u << (vars + odd)); ++mask) {
        FormMonomial m{e, mask};
        if (m.weight() <= weight_cap) all.push_back(m);
      }
      return;
    }
    for (unsigned k = 0; used + k <= weight_cap; ++k) {
      e[i] = k;
      self(self, i + 1, used + k);
    }
    e[i] = 0;
  };
  rec(rec, 0, 0);
  std::stable_sort(all.begin(), all.end(), [](const FormMonomial& a, const FormMonomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.mask != b.mask) return a.mask < b.mask;
    return a.exps > b.exps;
  });
  f.basis = all;
  for (const auto& m : all) f.labels.push_back(form_label(m));
  return f;
}

std::size_t LieForms::index(std::size_t lie_idx, std::size_t form_idx) const {
  const GradedSpace& s = *algebra->space();
  return s.index(forms.basis[form_idx].degree(), lie.labels[lie_idx] + ":" + forms.labels[form_idx]);
}

LieForms lie_tensor_forms(const LieAlgebraData& lie, unsigned vars, unsigned weight_cap, unsigned odd) {
  LieForms lf;
  lf.lie = lie;
  lf.forms = forms_algebra(vars, weight_cap, odd);
  std::map<int, std::vector<std::string>> basis;
  for (std::size_t f = 0; f < lf.forms.basis.size(); ++f)
    for (const auto& l : lie.labels) basis[lf.forms.basis[f].degree()].push_back(l + ":" + lf.forms.labels[f]);
  SpacePtr s = make_space(basis);
  auto idx = [&](std::size_t li, std::size_t fi) {
    return s->index(lf.forms.basis[fi].degree(), lie.labels[li] + ":" + lf.forms.labels[fi]);
  };
  GradedLinearMap d(s, s, 1);
  for (std::size_t f = 0; f < lf.forms.basis.size(); ++f)
    for (std::size_t l = 0; l < lie.labels.size(); ++l)
      for (const auto& [g, c] : lf.forms.d(f)) d.add(idx(l, f), idx(l, g), c);
  BracketTable table;
  for (const auto& [key, val] : lie.brackets)
    for (std::size_t f = 0; f < lf.forms.basis.size(); ++f)
      for (std::size_t g = 0; g < lf.forms.basis.size(); ++g) {
        auto prod = lf.forms.multiply(f, g);
        if (!prod) continue;
        SparseVec v;
        for (const auto& [t, c] : val) v.emplace(idx(t, prod->first), c * prod->second);
        table[{idx(key.first, f), idx(key.second, g)}] = v;
      }
  lf.algebra = std::make_shared<const DGLieAlgebra>(CochainComplex(s, std::move(d)), std::move(table));
  return lf;
}

GradedLinearMap lie_forms_contraction(const LieForms& lf, const std::vector<std::vector<int>>& a) {
  if (a.size() != lf.forms.vars) throw DomainError("vector field matrix has the wrong size");
  const SpacePtr& s = lf.algebra->space();
  GradedLinearMap out(s, s, -1);
  for (std::size_t f = 0; f < lf.forms.basis.size(); ++f)
    for (std::size_t l = 0; l < lf.lie.labels.size(); ++l)
      for (const auto& [g, c] : lf.forms.contract(a, f)) out.add(lf.index(l, f), lf.index(l, g), c);
  return out;
}

ContractionAction lie_forms_action(const LieForms& lf, const std::vector<std::string>& names,
                                   const std::vector<std::vector<std::vector<int>>>& fields) {
  ContractionAction act;
  act.algebra = lf.algebra;
  act.names = names;
  for (const auto& a : fields) act.contractions.push_back(lie_forms_contraction(lf, a));
  return act;
}

GradedLinearMap lie_forms_projection(const LieForms& from, const LieForms& to) {
  if (from.lie.labels != to.lie.labels || from.forms.vars != to.forms.vars || from.forms.odd != to.forms.odd)
    throw DomainError("projection between unrelated algebras");
  GradedLinearMap out(from.algebra->space(), to.algebra->space(), 0);
  for (std::size_t f = 0; f < from.forms.basis.size(); ++f) {
    auto g = to.forms.find(from.forms.basis[f]);
    if (!g) continue;
    for (std::size_t l = 0; l < from.lie.labels.size(); ++l) out.add(from.index(l, f), to.index(l, *g), Rational(1));
  }
  return out;
}

DGLieAlgebra random_abelian(Rng& rng, int min_deg, int max_deg, unsigned dim_per_degree) {
  std::map<int, std::vector<std::string>> basis;
  for (int p = min_deg; p <= max_deg; ++p)
    for (unsigned k = 0; k < dim_per_degree; ++k) basis[p].push_back("x" + std::to_string(p) + "_" + std::to_string(k));
  SpacePtr s = make_space(basis);
  GradedLinearMap d(s, s, 1);
  // d sends the first element of each degree to a random multiple of the
  // last element of the next degree, keeping d² = 0.
  for (int p = min_deg; p < max_deg; ++p) {
    if (dim_per_degree < 2 && p > min_deg) break;
    auto [a0, a1] = s->range(p);
    auto [b0, b1] = s->range(p + 1);
    (void)a1;
    const int c = rand_int(rng, 1, 3);
    d.add(a0, b1 - 1, Rational(c));
  }
  return DGLieAlgebra::abelian(CochainComplex(s, std::move(d)));
}

DGLieAlgebra random_basis_change(const DGLieAlgebra& g, Rng& rng) {
  const GradedSpace& s = *g.space();
  std::map<int, std::vector<SparseVec>> cols;
  std::map<int, std::vector<std::string>> labels;
  for (int deg : s.degrees()) {
    auto [b0, b1] = s.range(deg);
    std::vector<std::size_t> perm(b1 - b0);
    std::iota(perm.begin(), perm.end(), b0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng() % i)]);
    for (std::size_t k = 0; k < perm.size(); ++k) {
      SparseVec v{{perm[k], Rational(1)}};
      for (std::size_t l = k + 1; l < perm.size(); ++l) {
        int r = rand_int(rng, -1, 1);
        if (r != 0) v.emplace(perm[l], Rational(r));
      }
      cols[deg].push_back(std::move(v));
      labels[deg].push_back("b" + std::to_string(deg) + "_" + std::to_string(k));
    }
  }
  return rebase(g, cols, labels);
}

MCElement random_mc(DglaPtr g, unsigned order, Rng& rng) {
  const GradedSpace& s = *g->space();
  KernelImage ki = kernel_image(g->d(), 1);
  CohomologyReport h1 = cohomology(g->complex(), 1);
  auto [c0, c1] = s.range(1);
  std::vector<SparseVec> dcols(g->d().columns().begin() + static_cast<long>(c0),
                               g->d().columns().begin() + static_cast<long>(c1));
  EpsSeries pi(order);
  auto random_cocycle = [&]() {
    // one random cocycle plus one random class representative
    SparseVec v;
    if (!ki.kernel.empty())
      axpy(v, Rational(rand_int(rng, -2, 2)), ki.kernel[rng() % ki.kernel.size()].coords);
    if (!h1.representatives.empty())
      axpy(v, Rational(rand_int(rng, -2, 2)), h1.representatives[rng() % h1.representatives.size()].coords);
    return v;
  };
  for (unsigned k = 1; k < order; ++k) {
    SparseVec rhs;
    for (unsigned i = 1; i < k; ++i) axpy(rhs, Rational(-1, 2), g->bracket(pi[i], pi[k - i]));
    SparseVec part;
    if (!rhs.empty()) {
      auto x = sparse_solve(dcols, rhs);
      if (!x) throw DomainError("Maurer-Cartan obstruction at order " + std::to_string(k));
      for (const auto& [j, c] : *x) part.emplace(c0 + j, c);
    }
    axpy(part, Rational(1), random_cocycle());
    pi[k] = std::move(part);
  }
  MCElement out(g, order, std::move(pi));
  if (!series_is_zero(mc_residual(out))) throw StructuralError("random Maurer-Cartan construction failed");
  return out;
}

EpsSeries random_gauge_parameter(const DGLieAlgebra& g, unsigned order, Rng& rng) {
  const GradedSpace& s = *g.space();
  auto [b0, b1] = s.range(0);
  EpsSeries u(order);
  if (b0 == b1) return u;
  for (unsigned k = 1; k < order; ++k) {
    const int terms = rand_int(rng, 1, 3);
    for (int t = 0; t < terms; ++t)
      add_entry(u[k], b0 + rng() % (b1 - b0), Rational(rand_int(rng, -2, 2)));
  }
  return u;
}

AbelianizationMorphism random_abelianization(const DGLieAlgebra& g, const std::vector<GradedLinearMap>& extra,
                                             unsigned arity, Rng& rng) {
  const GradedSpace& s = *g.space();
  std::map<int, std::vector<SparseVec>> killed;
  for (std::size_t i = 0; i < s.size(); ++i) {
    SparseVec dv = g.d().column(i);
    if (!dv.empty()) killed[s.degree(i) + 1].push_back(dv);
    for (const auto& f : extra) {
      const SparseVec& c = f.column(i);
      if (!c.empty()) killed[s.degree(c.begin()->first)].push_back(c);
    }
  }
  for (const auto& [key, v] : g.table())
    if (!v.empty()) killed[s.degree(key.first) + s.degree(key.second)].push_back(v);

  std::map<int, std::vector<std::string>> qlabels;
  std::map<int, std::vector<std::size_t>> complement;
  std::map<int, std::vector<SparseVec>> spans;
  for (int deg : s.degrees()) {
    auto [b0, b1] = s.range(deg);
    std::vector<SparseVec> span = killed[deg];
    const std::size_t base_rank = sparse_rank(span);
    std::size_t rank = base_rank;
    for (std::size_t j = b0; j < b1; ++j) {
      span.push_back(SparseVec{{j, Rational(1)}});
      std::size_t r = sparse_rank(span);
      if (r > rank) {
        rank = r;
        complement[deg].push_back(j);
        qlabels[deg].push_back("q:" + s.label(j));
      } else {
        span.pop_back();
      }
    }
    spans[deg] = std::move(span);
  }
  SpacePtr qs = make_space(qlabels);
  GradedLinearMap quotient(g.space(), qs, 0);
  for (int deg : s.degrees()) {
    auto [b0, b1] = s.range(deg);
    const std::vector<SparseVec>& span = spans[deg];
    const std::size_t nkill = span.size() - complement[deg].size();
    auto [q0, q1] = qs->range(deg);
    (void)q1;
    for (std::size_t j = b0; j < b1; ++j) {
      auto x = sparse_solve(span, SparseVec{{j, Rational(1)}});
      if (!x) throw StructuralError("quotient coordinates failed");
      SparseVec col;
      for (const auto& [k, c] : *x)
        if (k >= nkill) col.emplace(q0 + (k - nkill), c);
      quotient.set_column(j, std::move(col));
    }
  }

  // target degrees reachable from quotient words
  std::set<int> tdeg;
  for (unsigned n = 1; n <= arity; ++n)
    for (const Word& w : basis_words(*qs, n)) {
      int t = 1;
      for (auto i : w) t += qs->degree(i) - 1;
      tdeg.insert(t);
    }
  std::map<int, std::vector<std::string>> hl;
  for (int t : tdeg) {
    hl[t].push_back("h" + std::to_string(t) + "_0");
    hl[t].push_back("h" + std::to_string(t) + "_1");
  }
  SpacePtr hs = make_space(hl);
  auto h = std::make_shared<const DGLieAlgebra>(DGLieAlgebra::abelian(CochainComplex(hs, GradedLinearMap(hs, hs, 1))));
  auto psi = std::make_shared<ExplicitTower>(TowerKind::morphism, qs, hs, 0, arity);
  for (unsigned n = 1; n <= arity; ++n)
    for (const Word& w : basis_words(*qs, n)) {
      int t = 1;
      for (auto i : w) t += qs->degree(i) - 1;
      auto [h0, h1] = hs->range(t);
      SparseVec v;
      for (std::size_t k = h0; k < h1; ++k) {
        const int c = rand_int(rng, -2, 2);
        if (c != 0 && rand_int(rng, 0, 1)) v.emplace(k, Rational(c));
      }
      psi->set(w, v);
    }
  return AbelianizationMorphism{h, quotient, precompose(psi, quotient)};
}

ContractionAction zero_action(DglaPtr g, const std::vector<std::string>& names) {
  ContractionAction act;
  act.algebra = g;
  act.names = names;
  for (std::size_t k = 0; k < names.size(); ++k)
    act.contractions.emplace_back(g->space(), g->space(), -1);
  return act;
}

}  // namespace dq
