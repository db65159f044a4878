#include "dq/cosimplicial.hpp"

#include "dq/errors.hpp"
#include "dq/matrix.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dq {

namespace {

std::string map_name(const char* kind, unsigned n, unsigned i) {
  return std::string(kind) + "[" + std::to_string(n) + "][" + std::to_string(i) + "]";
}

void require_equal(const GradedLinearMap& a, const GradedLinearMap& b, const std::string& what) {
  for (std::size_t i = 0; i < a.source()->size(); ++i)
    if (a.column(i) != b.column(i))
      throw StructuralError("cosimplicial identity " + what + " fails on " + a.source()->label(i));
}

// Subspace spanned by kernel vectors of the form produced by
// sparse_kernel_image: each has a private coordinate equal to 1.
struct Subspace {
  std::vector<SparseVec> basis;
  std::vector<std::size_t> key;

  explicit Subspace(std::vector<SparseVec> b) : basis(std::move(b)) {
    std::map<std::size_t, int> count;
    for (const auto& v : basis)
      for (const auto& [i, c] : v) ++count[i];
    for (const auto& v : basis) {
      auto it = std::find_if(v.begin(), v.end(), [&](const auto& e) { return count[e.first] == 1 && e.second == 1; });
      if (it == v.end()) throw Error("subspace basis without a private coordinate");
      key.push_back(it->first);
    }
  }
  // Coordinates of x, which must lie in the span.
  SparseVec coords(const SparseVec& x, const char* what) const {
    SparseVec c;
    SparseVec rest = x;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      auto it = x.find(key[k]);
      if (it == x.end()) continue;
      add_entry(c, k, it->second);
      axpy(rest, -it->second, basis[k]);
    }
    if (!rest.empty()) throw StructuralError(std::string(what) + ": vector outside the subspace");
    return c;
  }
};

int level_sign(unsigned n) { return n % 2 == 0 ? 1 : -1; }

}  // namespace

void check_cosimplicial_identities(const CosimplicialComplex& a) {
  const unsigned N = a.n_max;
  if (a.levels.size() != N + 1) throw StructuralError("expected n_max + 1 levels");
  if (a.cofaces.size() != N + 1 || a.codegeneracies.size() != N + 1)
    throw StructuralError("coface/codegeneracy tables must have n_max + 1 rows");
  for (unsigned n = 1; n <= N; ++n) {
    if (a.cofaces[n].size() != n + 1) throw StructuralError("level " + std::to_string(n) + " needs n + 1 cofaces");
    for (unsigned i = 0; i <= n; ++i) {
      const auto& f = a.cofaces[n][i];
      if (f.source() != a.levels[n - 1].space() || f.target() != a.levels[n].space() || f.degree() != 0)
        throw StructuralError(map_name("coface", n, i) + " has the wrong shape");
      require_chain_map(f, a.levels[n - 1], a.levels[n]);
    }
  }
  for (unsigned n = 0; n < N; ++n) {
    if (a.codegeneracies[n].size() != n + 1)
      throw StructuralError("level " + std::to_string(n) + " needs n + 1 codegeneracies");
    for (unsigned j = 0; j <= n; ++j) {
      const auto& s = a.codegeneracies[n][j];
      if (s.source() != a.levels[n + 1].space() || s.target() != a.levels[n].space() || s.degree() != 0)
        throw StructuralError(map_name("codegeneracy", n, j) + " has the wrong shape");
      require_chain_map(s, a.levels[n + 1], a.levels[n]);
    }
  }
  if (!a.codegeneracies[N].empty()) throw StructuralError("no codegeneracies leave the top level");
  // d^j d^i = d^i d^{j-1}, i < j
  for (unsigned n = 2; n <= N; ++n)
    for (unsigned j = 1; j <= n; ++j)
      for (unsigned i = 0; i < j; ++i)
        require_equal(a.cofaces[n][j].compose(a.cofaces[n - 1][i]), a.cofaces[n][i].compose(a.cofaces[n - 1][j - 1]),
                      "d^j d^i = d^i d^(j-1)");
  // s^j s^i = s^i s^{j+1}, i ≤ j
  for (unsigned n = 0; n + 2 <= N; ++n)
    for (unsigned j = 0; j <= n; ++j)
      for (unsigned i = 0; i <= j; ++i)
        require_equal(a.codegeneracies[n][j].compose(a.codegeneracies[n + 1][i]),
                      a.codegeneracies[n][i].compose(a.codegeneracies[n + 1][j + 1]), "s^j s^i = s^i s^(j+1)");
  // s^j d^i on level n → n+1 → n
  for (unsigned n = 0; n + 1 <= N; ++n)
    for (unsigned j = 0; j <= n; ++j)
      for (unsigned i = 0; i <= n + 1; ++i) {
        GradedLinearMap lhs = a.codegeneracies[n][j].compose(a.cofaces[n + 1][i]);
        if (i == j || i == j + 1) {
          require_equal(lhs, GradedLinearMap::identity(a.levels[n].space()), "s^j d^i = id");
        } else if (i < j) {
          require_equal(lhs, a.cofaces[n][i].compose(a.codegeneracies[n - 1][j - 1]), "s^j d^i = d^i s^(j-1)");
        } else {
          require_equal(lhs, a.cofaces[n][i - 1].compose(a.codegeneracies[n - 1][j]), "s^j d^i = d^(i-1) s^j");
        }
      }
  if (!a.lie.empty()) {
    if (a.lie.size() != N + 1) throw StructuralError("one DG-Lie algebra per level expected");
    for (unsigned n = 0; n <= N; ++n)
      if (a.lie[n]->space() != a.levels[n].space()) throw StructuralError("DG-Lie level does not match its complex");
  }
}

CosimplicialComplex constant_cosimplicial(const CochainComplex& c, unsigned n_max) {
  CosimplicialComplex a;
  a.n_max = n_max;
  a.levels.assign(n_max + 1, c);
  a.cofaces.resize(n_max + 1);
  a.codegeneracies.resize(n_max + 1);
  auto id = GradedLinearMap::identity(c.space());
  for (unsigned n = 1; n <= n_max; ++n) a.cofaces[n].assign(n + 1, id);
  for (unsigned n = 0; n < n_max; ++n) a.codegeneracies[n].assign(n + 1, id);
  return a;
}

CosimplicialComplex constant_cosimplicial(DglaPtr g, unsigned n_max) {
  CosimplicialComplex a = constant_cosimplicial(g->complex(), n_max);
  a.lie.assign(n_max + 1, g);
  return a;
}

CochainComplex unnormalized_cochain(const CosimplicialComplex& a) {
  check_cosimplicial_identities(a);
  std::map<int, std::vector<std::string>> labels;
  for (unsigned n = 0; n <= a.n_max; ++n) {
    const auto& s = *a.levels[n].space();
    for (std::size_t i = 0; i < s.size(); ++i)
      labels[static_cast<int>(n) + s.degree(i)].push_back(std::to_string(n) + ":" + s.label(i));
  }
  SpacePtr space = make_space(labels);
  auto flat = [&](unsigned n, std::size_t i) {
    const auto& s = *a.levels[n].space();
    return space->index(static_cast<int>(n) + s.degree(i), std::to_string(n) + ":" + s.label(i));
  };
  GradedLinearMap d(space, space, 1);
  for (unsigned n = 0; n <= a.n_max; ++n) {
    const auto& s = *a.levels[n].space();
    for (std::size_t i = 0; i < s.size(); ++i) {
      SparseVec col;
      for (const auto& [k, c] : a.levels[n].d().column(i)) add_entry(col, flat(n, k), level_sign(n) * c);
      if (n < a.n_max)
        for (unsigned f = 0; f <= n + 1; ++f)
          for (const auto& [k, c] : a.cofaces[n + 1][f].column(i)) add_entry(col, flat(n + 1, k), level_sign(f) * c);
      d.set_column(flat(n, i), std::move(col));
    }
  }
  return CochainComplex(space, std::move(d));
}

NormalizedCochains normalized_cochain(const CosimplicialComplex& a) {
  CochainComplex full = unnormalized_cochain(a);
  const SpacePtr& fs = full.space();
  // Kernel of the stacked codegeneracies, per level and internal degree.
  std::map<int, std::vector<SparseVec>> pieces;  // total degree → vectors in full coordinates
  for (unsigned n = 0; n <= a.n_max; ++n) {
    const auto& s = *a.levels[n].space();
    for (int q : s.degrees()) {
      auto [lo, hi] = s.range(q);
      std::vector<SparseVec> cols;
      for (std::size_t i = lo; i < hi; ++i) {
        SparseVec col;
        if (n > 0)
          for (unsigned j = 0; j < n; ++j) {
            const auto& sj = a.codegeneracies[n - 1][j];
            std::size_t off = j * sj.target()->size();
            for (const auto& [k, c] : sj.column(i)) add_entry(col, off + k, c);
          }
        cols.push_back(std::move(col));
      }
      for (const auto& v : sparse_kernel_image(cols).kernel) {
        SparseVec w;
        for (const auto& [k, c] : v)
          add_entry(w, fs->index(static_cast<int>(n) + q, std::to_string(n) + ":" + s.label(lo + k)), c);
        pieces[static_cast<int>(n) + q].push_back(std::move(w));
      }
    }
  }
  std::map<int, std::vector<std::string>> labels;
  std::map<int, Subspace> subs;
  for (auto& [k, vs] : pieces) {
    for (std::size_t i = 0; i < vs.size(); ++i) labels[k].push_back("N" + std::to_string(k) + "_" + std::to_string(i));
    subs.emplace(k, Subspace(vs));
  }
  SpacePtr ns = make_space(labels);
  GradedLinearMap inc(ns, fs, 0), d(ns, ns, 1);
  for (auto& [k, sub] : subs) {
    std::size_t first = ns->range(k).first;
    for (std::size_t i = 0; i < sub.basis.size(); ++i) {
      inc.set_column(first + i, sub.basis[i]);
      SparseVec img = full.d().apply(sub.basis[i]);
      if (img.empty()) continue;
      auto it = subs.find(k + 1);
      if (it == subs.end()) throw StructuralError("normalized cochains not closed under d");
      SparseVec c;
      for (const auto& [j, v] : it->second.coords(img, "normalized differential"))
        add_entry(c, ns->range(k + 1).first + j, v);
      d.set_column(first + i, std::move(c));
    }
  }
  return NormalizedCochains{CochainComplex(ns, std::move(d)), std::move(inc), a.n_max};
}

// ---------------------------------------------------------------------------
// Simplex forms

unsigned form_degree(const FormKey& k) { return static_cast<unsigned>(k.dts.size()); }
unsigned total_degree(const FormKey& k) { return total_degree(k.poly) + form_degree(k); }

void form_add(Form& y, const Rational& a, const Form& x) {
  if (is_zero(a)) return;
  for (const auto& [k, c] : x) {
    auto [it, ins] = y.try_emplace(k, a * c);
    if (!ins) {
      it->second += a * c;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

namespace {

void add_form_term(Form& y, FormKey k, const Rational& c) {
  if (is_zero(c)) return;
  auto [it, ins] = y.try_emplace(std::move(k), c);
  if (!ins) {
    it->second += c;
    if (is_zero(it->second)) y.erase(it);
  }
}

// Sign of sorting the concatenation; 0 on a repeat.
int merge_sign(const std::vector<unsigned>& a, const std::vector<unsigned>& b, std::vector<unsigned>& out) {
  out = a;
  out.insert(out.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 1; i < out.size(); ++i)
    for (std::size_t j = i; j > 0 && out[j - 1] >= out[j]; --j) {
      if (out[j - 1] == out[j]) return 0;
      std::swap(out[j - 1], out[j]);
      sign = -sign;
    }
  return sign;
}

// Affine function c₀ + Σ c_l s_l of the target coordinates.
struct Affine {
  Rational c0;
  std::vector<Rational> lin;
};

Form pullback(const Form& w, unsigned m, const std::vector<Affine>& images) {
  Form out;
  for (const auto& [k, c] : w) {
    Poly p{{Monomial(m, 0), Rational(1)}};
    for (std::size_t v = 0; v < k.poly.size(); ++v) {
      Poly lin;
      if (!is_zero(images[v].c0)) lin[Monomial(m, 0)] = images[v].c0;
      for (unsigned l = 0; l < m; ++l)
        if (!is_zero(images[v].lin[l])) lin[unit_monomial(m, l)] = images[v].lin[l];
      for (unsigned e = 0; e < k.poly[v]; ++e) p = poly_mul(p, lin);
    }
    if (p.empty()) continue;
    std::map<std::vector<unsigned>, Rational> wedge{{{}, Rational(1)}};
    for (unsigned v : k.dts) {
      std::map<std::vector<unsigned>, Rational> next;
      for (const auto& [idx, wc] : wedge)
        for (unsigned l = 0; l < m; ++l) {
          if (is_zero(images[v].lin[l])) continue;
          std::vector<unsigned> merged;
          int s = merge_sign(idx, {l}, merged);
          if (s == 0) continue;
          Rational add = wc * images[v].lin[l] * s;
          auto [it, ins] = next.try_emplace(merged, add);
          if (!ins) {
            it->second += add;
            if (is_zero(it->second)) next.erase(it);
          }
        }
      wedge = std::move(next);
    }
    for (const auto& [mono, pc] : p)
      for (const auto& [idx, wc] : wedge) add_form_term(out, FormKey{mono, idx}, c * pc * wc);
  }
  return out;
}

// Coordinate s_k of Δ[m] (k = 0..m) as an affine function of s₁..s_m.
Affine coordinate(unsigned m, unsigned k) {
  Affine a{Rational(0), std::vector<Rational>(m, Rational(0))};
  if (k == 0) {
    a.c0 = 1;
    for (auto& x : a.lin) x = -1;
  } else {
    a.lin[k - 1] = 1;
  }
  return a;
}

Affine sum(const Affine& a, const Affine& b) {
  Affine r = a;
  r.c0 += b.c0;
  for (std::size_t i = 0; i < r.lin.size(); ++i) r.lin[i] += b.lin[i];
  return r;
}

}  // namespace

std::string form_label(const FormKey& k) {
  std::string s;
  for (std::size_t i = 0; i < k.poly.size(); ++i) {
    if (k.poly[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(i + 1);
    if (k.poly[i] > 1) s += "^" + std::to_string(k.poly[i]);
  }
  for (unsigned v : k.dts) s += (s.empty() ? "" : "*") + std::string("dt") + std::to_string(v + 1);
  return s.empty() ? "1" : s;
}

std::vector<FormKey> SimplexDeRham::basis() const {
  std::vector<FormKey> out;
  for (unsigned p = 0; p <= n && p <= cap; ++p) {
    std::vector<std::vector<unsigned>> subsets;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned start) {
      if (cur.size() == p) {
        subsets.push_back(cur);
        return;
      }
      for (unsigned i = start; i < n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    for (unsigned deg = 0; deg + p <= cap; ++deg)
      for (const auto& m : monomials_of_degree(n, deg))
        for (const auto& s : subsets) out.push_back(FormKey{m, s});
  }
  return out;
}

Form SimplexDeRham::d(const Form& w) {
  Form out;
  for (const auto& [k, c] : w)
    for (unsigned v = 0; v < k.poly.size(); ++v) {
      if (k.poly[v] == 0) continue;
      std::vector<unsigned> merged;
      int s = merge_sign({v}, k.dts, merged);
      if (s == 0) continue;
      Monomial m = k.poly;
      m[v] -= 1;
      add_form_term(out, FormKey{m, merged}, c * k.poly[v] * s);
    }
  return out;
}

Form SimplexDeRham::wedge(const Form& a, const Form& b) {
  Form out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      std::vector<unsigned> merged;
      int s = merge_sign(ka.dts, kb.dts, merged);
      if (s == 0) continue;
      Monomial m = ka.poly;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += kb.poly[i];
      add_form_term(out, FormKey{m, merged}, ca * cb * s);
    }
  return out;
}

Form SimplexDeRham::face(unsigned i, const Form& w) const {
  if (n == 0 || i > n) throw DomainError("face index out of range");
  unsigned m = n - 1;
  std::vector<Affine> images;
  for (unsigned k = 1; k <= n; ++k) {
    if (k < i) images.push_back(coordinate(m, k));
    else if (k == i) images.push_back(Affine{Rational(0), std::vector<Rational>(m, Rational(0))});
    else images.push_back(coordinate(m, k - 1));
  }
  return pullback(w, m, images);
}

Form SimplexDeRham::degeneracy(unsigned j, const Form& w) const {
  if (j > n) throw DomainError("degeneracy index out of range");
  unsigned m = n + 1;
  std::vector<Affine> images;
  for (unsigned k = 1; k <= n; ++k) {
    if (k < j) images.push_back(coordinate(m, k));
    else if (k == j) images.push_back(sum(coordinate(m, k), coordinate(m, k + 1)));
    else images.push_back(coordinate(m, k + 1));
  }
  return pullback(w, m, images);
}

Rational integrate_form(unsigned n, const Form& w) {
  Rational total = 0;
  for (const auto& [k, c] : w) {
    if (form_degree(k) != n)
      throw DomainError("integrand over a " + std::to_string(n) + "-simplex must have form degree " + std::to_string(n));
    Rational num = 1;
    for (unsigned e : k.poly) num *= factorial(e);
    total += c * num / factorial(n + total_degree(k.poly));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Thom–Sullivan end

ThomSullivan thom_sullivan(const CosimplicialComplex& a, unsigned cap) {
  check_cosimplicial_identities(a);
  ThomSullivan ts;
  ts.n_max = a.n_max;
  ts.cap = cap;
  std::vector<SimplexDeRham> omega;
  std::vector<std::vector<FormKey>> fbasis;
  for (unsigned n = 0; n <= a.n_max; ++n) {
    omega.push_back(SimplexDeRham{n, cap});
    fbasis.push_back(omega.back().basis());
  }
  // Ambient cells per total degree.
  std::map<int, std::map<std::tuple<unsigned, FormKey, std::size_t>, std::size_t>> cell_index;
  for (unsigned n = 0; n <= a.n_max; ++n) {
    const auto& s = *a.levels[n].space();
    for (const auto& fk : fbasis[n])
      for (std::size_t i = 0; i < s.size(); ++i) {
        int k = static_cast<int>(form_degree(fk)) + s.degree(i);
        auto& cells = ts.cells[k];
        cell_index[k].emplace(std::make_tuple(n, fk, i), cells.size());
        cells.push_back(ThomSullivan::Cell{n, fk, i});
      }
  }
  auto form_of = [](const FormKey& k) { return Form{{k, Rational(1)}}; };

  // Constraint rows: keyed by (kind, level, map index, form key, A index).
  using RowKey = std::tuple<int, unsigned, unsigned, FormKey, std::size_t>;
  std::map<int, Subspace> subs;
  std::map<int, std::vector<std::string>> labels;
  for (auto& [k, cells] : ts.cells) {
    std::map<RowKey, std::size_t> rows;
    auto row = [&](const RowKey& r) { return rows.emplace(r, rows.size()).first->second; };
    std::vector<SparseVec> cols(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& cell = cells[c];
      unsigned n = cell.level;
      Form w = form_of(cell.form);
      // face_i(c_n) − dⁱ(c_{n−1}) = 0 in Ω_{n−1} ⊗ Aⁿ
      if (n >= 1)
        for (unsigned i = 0; i <= n; ++i)
          for (const auto& [fk, fc] : omega[n].face(i, w)) add_entry(cols[c], row({0, n, i, fk, cell.a}), fc);
      if (n + 1 <= a.n_max)
        for (unsigned i = 0; i <= n + 1; ++i)
          for (const auto& [ak, ac] : a.cofaces[n + 1][i].column(cell.a))
            add_entry(cols[c], row({0, n + 1, i, cell.form, ak}), -ac);
      // σ_j*(c_n) − s^j(c_{n+1}) = 0 in Ω_{n+1} ⊗ Aⁿ
      if (n + 1 <= a.n_max)
        for (unsigned j = 0; j <= n; ++j)
          for (const auto& [fk, fc] : omega[n].degeneracy(j, w)) add_entry(cols[c], row({1, n, j, fk, cell.a}), fc);
      if (n >= 1)
        for (unsigned j = 0; j < n; ++j)
          for (const auto& [ak, ac] : a.codegeneracies[n - 1][j].column(cell.a))
            add_entry(cols[c], row({1, n - 1, j, cell.form, ak}), -ac);
    }
    auto kernel = sparse_kernel_image(cols).kernel;
    for (std::size_t i = 0; i < kernel.size(); ++i) labels[k].push_back("TS" + std::to_string(k) + "_" + std::to_string(i));
    if (!kernel.empty()) subs.emplace(k, Subspace(std::move(kernel)));
  }
  SpacePtr space = make_space(labels);
  ts.ambient.resize(space->size());
  for (auto& [k, sub] : subs)
    for (std::size_t i = 0; i < sub.basis.size(); ++i) ts.ambient[space->range(k).first + i] = sub.basis[i];

  // Componentwise differential d_Ω ⊗ 1 + (−1)^p 1 ⊗ d_A.
  auto ambient_d = [&](int k, const SparseVec& v) {
    SparseVec out;
    auto& target = cell_index[k + 1];
    for (const auto& [c, val] : v) {
      const auto& cell = ts.cells[k][c];
      for (const auto& [fk, fc] : SimplexDeRham::d(form_of(cell.form)))
        add_entry(out, target.at({cell.level, fk, cell.a}), val * fc);
      int sign = form_degree(cell.form) % 2 == 0 ? 1 : -1;
      for (const auto& [ak, ac] : a.levels[cell.level].d().column(cell.a))
        add_entry(out, target.at({cell.level, cell.form, ak}), val * ac * sign);
    }
    return out;
  };
  auto express = [&](int k, const SparseVec& amb, const char* what) {
    SparseVec out;
    if (amb.empty()) return out;
    auto it = subs.find(k);
    if (it == subs.end()) throw StructuralError(std::string(what) + ": no Thom-Sullivan cochains in the target degree");
    for (const auto& [j, v] : it->second.coords(amb, what)) add_entry(out, space->range(k).first + j, v);
    return out;
  };
  GradedLinearMap d(space, space, 1);
  for (std::size_t i = 0; i < space->size(); ++i) {
    int k = space->degree(i);
    d.set_column(i, express(k + 1, ambient_d(k, ts.ambient[i]), "Thom-Sullivan differential"));
  }
  ts.complex = CochainComplex(space, std::move(d));

  if (!a.lie.empty()) {
    BracketTable table;
    for (std::size_t x = 0; x < space->size(); ++x)
      for (std::size_t y = 0; y < space->size(); ++y) {
        int kx = space->degree(x), ky = space->degree(y);
        std::map<std::tuple<unsigned, FormKey, std::size_t>, Rational> amb;
        for (const auto& [cx, vx] : ts.ambient[x]) {
          const auto& ex = ts.cells[kx][cx];
          for (const auto& [cy, vy] : ts.ambient[y]) {
            const auto& ey = ts.cells[ky][cy];
            if (ex.level != ey.level) continue;
            const auto& br = a.lie[ex.level]->bracket_basis(ex.a, ey.a);
            if (br.empty()) continue;
            int qa = a.levels[ex.level].space()->degree(ex.a);
            int sign = (qa * static_cast<int>(form_degree(ey.form))) % 2 == 0 ? 1 : -1;
            for (const auto& [fk, fc] : SimplexDeRham::wedge(form_of(ex.form), form_of(ey.form))) {
              if (total_degree(fk) > cap)
                throw OverflowError("form_cap", "Thom-Sullivan bracket needs forms of degree " +
                                                    std::to_string(total_degree(fk)) + " > " + std::to_string(cap));
              for (const auto& [bk, bc] : br) {
                auto key = std::make_tuple(ex.level, fk, bk);
                amb[key] += vx * vy * fc * bc * sign;
              }
            }
          }
        }
        SparseVec v;
        for (const auto& [key, val] : amb)
          if (!is_zero(val)) add_entry(v, cell_index[kx + ky].at(key), val);
        SparseVec e = express(kx + ky, v, "Thom-Sullivan bracket");
        if (!e.empty()) table.emplace(std::make_pair(x, y), std::move(e));
      }
    ts.algebra = std::make_shared<const DGLieAlgebra>(ts.complex, std::move(table));
  }
  return ts;
}

TsComparison ts_comparison(const ThomSullivan& ts, const CosimplicialComplex& a, const NormalizedCochains& nc, int lo,
                           int hi) {
  const SpacePtr& src = ts.complex.space();
  const SpacePtr& tgt = nc.complex.space();
  const SpacePtr& full = nc.inclusion.target();
  // Normalized cochains by degree, to express integrals in the N basis.
  std::map<int, Subspace> subs;
  for (int k : tgt->degrees()) {
    auto [b, e] = tgt->range(k);
    std::vector<SparseVec> vs;
    for (std::size_t i = b; i < e; ++i) vs.push_back(nc.inclusion.column(i));
    // Normalized basis vectors are kernel vectors with private coordinates.
    subs.emplace(k, Subspace(std::move(vs)));
  }
  GradedLinearMap map(src, tgt, 0);
  for (std::size_t i = 0; i < src->size(); ++i) {
    int k = src->degree(i);
    SparseVec img;
    for (const auto& [c, v] : ts.ambient[i]) {
      const auto& cell = ts.cells.at(k)[c];
      if (form_degree(cell.form) != cell.level) continue;
      Rational val = integrate_form(cell.level, Form{{cell.form, Rational(1)}});
      unsigned n = cell.level;
      const auto& s = *a.levels[n].space();
      add_entry(img, full->index(k, std::to_string(n) + ":" + s.label(cell.a)), v * val);
    }
    if (img.empty()) continue;
    auto it = subs.find(k);
    if (it == subs.end()) throw StructuralError("integration leaves the normalized cochains");
    SparseVec col;
    for (const auto& [j, v] : it->second.coords(img, "integration map")) add_entry(col, tgt->range(k).first + j, v);
    map.set_column(i, std::move(col));
  }
  require_chain_map(map, ts.complex, nc.complex);
  QuasiIsoReport verdict = is_quasi_iso(map, ts.complex, nc.complex, lo, hi);
  return TsComparison{std::move(map), std::move(verdict)};
}

}  // namespace dq
