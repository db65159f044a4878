#include "dq/cech.hpp"

#include "dq/errors.hpp"

#include <algorithm>
#include <functional>

namespace dq {

SparseVec FiniteAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  SparseVec r;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = mult.find({i, j});
      if (it != mult.end()) axpy(r, x * y, it->second);
    }
  return r;
}

FiniteAlgebra FiniteAlgebra::rationals() {
  FiniteAlgebra a;
  a.labels = {"1"};
  a.mult[{0, 0}] = SparseVec{{0, Rational(1)}};
  a.unit = SparseVec{{0, Rational(1)}};
  return a;
}

FiniteAlgebra FiniteAlgebra::truncated_polynomial(unsigned k) {
  if (k == 0) throw DomainError("Q[x]/(x^k) needs k >= 1");
  FiniteAlgebra a;
  for (unsigned i = 0; i < k; ++i) a.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; i + j < k; ++j) a.mult[{i, j}] = SparseVec{{i + j, Rational(1)}};
  a.unit = SparseVec{{0, Rational(1)}};
  return a;
}

FiniteAlgebra FiniteAlgebra::product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  FiniteAlgebra p;
  for (const auto& l : a.labels) p.labels.push_back("(" + l + ",0)");
  for (const auto& l : b.labels) p.labels.push_back("(0," + l + ")");
  std::size_t off = a.dim();
  for (const auto& [k, v] : a.mult) p.mult[k] = v;
  for (const auto& [k, v] : b.mult) {
    SparseVec w;
    for (const auto& [i, c] : v) w.emplace(i + off, c);
    p.mult[{k.first + off, k.second + off}] = w;
  }
  p.unit = a.unit;
  for (const auto& [i, c] : b.unit) p.unit.emplace(i + off, c);
  return p;
}

void check_algebra(const FiniteAlgebra& a) {
  std::size_t n = a.dim();
  auto e = [](std::size_t i) { return SparseVec{{i, Rational(1)}}; };
  for (std::size_t i = 0; i < n; ++i) {
    if (a.multiply(a.unit, e(i)) != e(i)) throw StructuralError("unit fails on " + a.labels[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (a.multiply(e(i), e(j)) != a.multiply(e(j), e(i)))
        throw StructuralError("not commutative on " + a.labels[i] + ", " + a.labels[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (a.multiply(a.multiply(e(i), e(j)), e(k)) != a.multiply(e(i), a.multiply(e(j), e(k))))
          throw StructuralError("not associative on " + a.labels[i] + ", " + a.labels[j] + ", " + a.labels[k]);
    }
  }
}

std::vector<Subset> nonempty_subsets(unsigned n) {
  std::vector<Subset> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Subset s;
    for (unsigned i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::string subset_label(const Subset& s) {
  std::string out;
  for (unsigned i : s) out += std::to_string(i + 1);
  return out.empty() ? "0" : out;
}

namespace {

bool is_subset(const Subset& a, const Subset& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::vector<SparseVec> compose_columns(const std::vector<SparseVec>& outer, const std::vector<SparseVec>& inner) {
  std::vector<SparseVec> r;
  for (const auto& col : inner) {
    SparseVec v;
    for (const auto& [k, c] : col) axpy(v, c, outer.at(k));
    r.push_back(std::move(v));
  }
  return r;
}

}  // namespace

std::vector<SparseVec> AlgebraCover::restriction(const Subset& from, const Subset& to) const {
  if (!is_subset(from, to)) throw DomainError("restriction needs J ⊆ J'");
  if (from == to) {
    std::vector<SparseVec> id;
    for (std::size_t i = 0; i < values.at(from).dim(); ++i) id.push_back(SparseVec{{i, Rational(1)}});
    return id;
  }
  auto it = restrictions.find({from, to});
  if (it != restrictions.end()) return it->second;
  for (unsigned extra : to) {
    if (std::binary_search(from.begin(), from.end(), extra)) continue;
    Subset mid = from;
    mid.insert(std::lower_bound(mid.begin(), mid.end(), extra), extra);
    if (mid == to) continue;
    if (restrictions.count({from, mid}))
      return compose_columns(restriction(mid, to), restrictions.at({from, mid}));
  }
  throw DomainError("missing restriction map " + subset_label(from) + " -> " + subset_label(to));
}

void check_cover(const AlgebraCover& c) {
  auto subsets = nonempty_subsets(c.n);
  for (const auto& s : subsets) {
    auto it = c.values.find(s);
    if (it == c.values.end()) throw DomainError("missing value on U_" + subset_label(s));
    check_algebra(it->second);
  }
  for (const auto& a : subsets)
    for (const auto& b : subsets) {
      if (!is_subset(a, b) || a == b) continue;
      const auto& A = c.values.at(a);
      const auto& B = c.values.at(b);
      auto r = c.restriction(a, b);
      if (r.size() != A.dim()) throw StructuralError("restriction " + subset_label(a) + " -> " + subset_label(b) + " has the wrong size");
      auto apply = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [k, x] : v) axpy(out, x, r.at(k));
        return out;
      };
      if (apply(A.unit) != B.unit) throw StructuralError("restriction does not preserve the unit");
      for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
          if (apply(A.multiply({{i, Rational(1)}}, {{j, Rational(1)}})) !=
              B.multiply(r.at(i), r.at(j)))
            throw StructuralError("restriction " + subset_label(a) + " -> " + subset_label(b) + " is not multiplicative");
      for (const auto& m : subsets)
        if (is_subset(a, m) && is_subset(m, b) && m != a && m != b)
          if (compose_columns(c.restriction(m, b), c.restriction(a, m)) != r)
            throw StructuralError("restrictions do not compose through U_" + subset_label(m));
    }
}

AlgebraCover constant_cover(unsigned n, const FiniteAlgebra& a) {
  AlgebraCover c;
  c.n = n;
  for (const auto& s : nonempty_subsets(n)) c.values[s] = a;
  std::vector<SparseVec> id;
  for (std::size_t i = 0; i < a.dim(); ++i) id.push_back(SparseVec{{i, Rational(1)}});
  for (const auto& s : nonempty_subsets(n))
    for (const auto& t : nonempty_subsets(n))
      if (is_subset(s, t) && s != t) c.restrictions[{s, t}] = id;
  return c;
}

GradedLinearMap DglaCover::restriction(const Subset& from, const Subset& to) const {
  if (from == to) return GradedLinearMap::identity(values.at(from)->space());
  auto it = restrictions.find({from, to});
  if (it != restrictions.end()) return it->second;
  for (unsigned extra : to) {
    if (std::binary_search(from.begin(), from.end(), extra)) continue;
    Subset mid = from;
    mid.insert(std::lower_bound(mid.begin(), mid.end(), extra), extra);
    if (mid == to) continue;
    if (restrictions.count({from, mid})) return restriction(mid, to).compose(restrictions.at({from, mid}));
  }
  throw DomainError("missing restriction map " + subset_label(from) + " -> " + subset_label(to));
}

DglaCover abelian_cover(const AlgebraCover& c) {
  check_cover(c);
  DglaCover d;
  d.n = c.n;
  std::map<Subset, SpacePtr> spaces;
  for (const auto& [s, a] : c.values) {
    spaces[s] = make_space({{0, a.labels}});
    d.values[s] = std::make_shared<const DGLieAlgebra>(
        DGLieAlgebra::abelian(CochainComplex(spaces[s], GradedLinearMap::zero(spaces[s], spaces[s], 1))));
  }
  for (const auto& s : nonempty_subsets(c.n))
    for (const auto& t : nonempty_subsets(c.n))
      if (is_subset(s, t) && s != t) d.restrictions.emplace(std::make_pair(s, t), GradedLinearMap(spaces[s], spaces[t], 0, c.restriction(s, t)));
  return d;
}

DglaCover lie_tensor_cover(DglaPtr g, const AlgebraCover& c) {
  check_cover(c);
  DglaCover d;
  d.n = c.n;
  const auto& gs = *g->space();
  std::map<Subset, SpacePtr> spaces;
  for (const auto& [s, a] : c.values) {
    std::map<int, std::vector<std::string>> labels;
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (const auto& l : a.labels) labels[gs.degree(i)].push_back(gs.label(i) + "@" + l);
    SpacePtr sp = make_space(labels);
    spaces[s] = sp;
    auto idx = [&](std::size_t gi, std::size_t ai) { return sp->index(gs.degree(gi), gs.label(gi) + "@" + a.labels[ai]); };
    GradedLinearMap dd(sp, sp, 1);
    BracketTable table;
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t ai = 0; ai < a.dim(); ++ai) {
        SparseVec col;
        for (const auto& [k, v] : g->d().column(i)) add_entry(col, idx(k, ai), v);
        dd.set_column(idx(i, ai), std::move(col));
        for (std::size_t j = 0; j < gs.size(); ++j)
          for (std::size_t bi = 0; bi < a.dim(); ++bi) {
            const auto& br = g->bracket_basis(i, j);
            if (br.empty()) continue;
            SparseVec prod = a.multiply({{ai, Rational(1)}}, {{bi, Rational(1)}});
            SparseVec v;
            for (const auto& [k, x] : br)
              for (const auto& [m, y] : prod) add_entry(v, idx(k, m), x * y);
            if (!v.empty()) table.emplace(std::make_pair(idx(i, ai), idx(j, bi)), std::move(v));
          }
      }
    d.values[s] = std::make_shared<const DGLieAlgebra>(CochainComplex(sp, std::move(dd)), std::move(table));
  }
  for (const auto& s : nonempty_subsets(c.n))
    for (const auto& t : nonempty_subsets(c.n)) {
      if (!is_subset(s, t) || s == t) continue;
      auto r = c.restriction(s, t);
      const auto& A = c.values.at(s);
      const auto& B = c.values.at(t);
      GradedLinearMap m(spaces[s], spaces[t], 0);
      for (std::size_t i = 0; i < gs.size(); ++i)
        for (std::size_t ai = 0; ai < A.dim(); ++ai) {
          SparseVec col;
          for (const auto& [bi, x] : r[ai])
            add_entry(col, spaces[t]->index(gs.degree(i), gs.label(i) + "@" + B.labels[bi]), x);
          m.set_column(spaces[s]->index(gs.degree(i), gs.label(i) + "@" + A.labels[ai]), std::move(col));
        }
      d.restrictions.emplace(std::make_pair(s, t), std::move(m));
    }
  return d;
}

namespace {

std::vector<std::vector<unsigned>> nondecreasing_tuples(unsigned n, unsigned len) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned start) {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (unsigned i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Subset support(const std::vector<unsigned>& t) {
  Subset s(t.begin(), t.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string tuple_label(const std::vector<unsigned>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "." : "") + std::to_string(t[i] + 1);
  return s;
}

void check_lie_hom(const GradedLinearMap& f, const DGLieAlgebra& a, const DGLieAlgebra& b, const std::string& what) {
  for (std::size_t i = 0; i < a.space()->size(); ++i)
    for (std::size_t j = 0; j < a.space()->size(); ++j)
      if (f.apply(a.bracket_basis(i, j)) != b.bracket(f.column(i), f.column(j)))
        throw StructuralError(what + " is not a Lie homomorphism");
}

}  // namespace

CosimplicialComplex ordered_cech(const DglaCover& cover, unsigned n_max) {
  for (const auto& s : nonempty_subsets(cover.n))
    if (!cover.values.count(s)) throw DomainError("missing value on U_" + subset_label(s));
  for (const auto& s : nonempty_subsets(cover.n))
    for (const auto& t : nonempty_subsets(cover.n))
      if (is_subset(s, t) && s != t) {
        auto r = cover.restriction(s, t);
        std::string what = "restriction " + subset_label(s) + " -> " + subset_label(t);
        require_chain_map(r, cover.values.at(s)->complex(), cover.values.at(t)->complex());
        check_lie_hom(r, *cover.values.at(s), *cover.values.at(t), what);
      }

  CosimplicialComplex a;
  a.n_max = n_max;
  std::vector<std::vector<std::vector<unsigned>>> tuples;
  for (unsigned m = 0; m <= n_max; ++m) {
    tuples.push_back(nondecreasing_tuples(cover.n, m + 1));
    std::map<int, std::vector<std::string>> labels;
    for (const auto& t : tuples[m]) {
      const auto& s = *cover.values.at(support(t))->space();
      for (std::size_t i = 0; i < s.size(); ++i) labels[s.degree(i)].push_back(tuple_label(t) + ":" + s.label(i));
    }
    SpacePtr sp = make_space(labels);
    auto idx = [&](const std::vector<unsigned>& t, const GradedSpace& s, std::size_t i) {
      return sp->index(s.degree(i), tuple_label(t) + ":" + s.label(i));
    };
    GradedLinearMap d(sp, sp, 1);
    BracketTable table;
    for (const auto& t : tuples[m]) {
      const auto& g = *cover.values.at(support(t));
      const auto& s = *g.space();
      for (std::size_t i = 0; i < s.size(); ++i) {
        SparseVec col;
        for (const auto& [k, v] : g.d().column(i)) add_entry(col, idx(t, s, k), v);
        d.set_column(idx(t, s, i), std::move(col));
        for (std::size_t j = 0; j < s.size(); ++j) {
          const auto& br = g.bracket_basis(i, j);
          if (br.empty()) continue;
          SparseVec v;
          for (const auto& [k, x] : br) add_entry(v, idx(t, s, k), x);
          table.emplace(std::make_pair(idx(t, s, i), idx(t, s, j)), std::move(v));
        }
      }
    }
    CochainComplex cx(sp, std::move(d));
    a.levels.push_back(cx);
    a.lie.push_back(std::make_shared<const DGLieAlgebra>(cx, std::move(table)));
  }
  a.cofaces.resize(n_max + 1);
  a.codegeneracies.resize(n_max + 1);
  auto level_index = [&](unsigned m, const std::vector<unsigned>& t, std::size_t i) {
    const auto& s = *cover.values.at(support(t))->space();
    return a.levels[m].space()->index(s.degree(i), tuple_label(t) + ":" + s.label(i));
  };
  // (dⁱc)(j₀…j_m) = ρ c(j₀…ĵ_i…j_m)
  for (unsigned m = 1; m <= n_max; ++m)
    for (unsigned i = 0; i <= m; ++i) {
      GradedLinearMap f(a.levels[m - 1].space(), a.levels[m].space(), 0);
      for (const auto& t : tuples[m]) {
        std::vector<unsigned> src = t;
        src.erase(src.begin() + i);
        auto r = cover.restriction(support(src), support(t));
        for (std::size_t k = 0; k < r.source()->size(); ++k)
          for (const auto& [l, v] : r.column(k)) f.add(level_index(m - 1, src, k), level_index(m, t, l), v);
      }
      a.cofaces[m].push_back(std::move(f));
    }
  // (sʲc)(j₀…j_m) = c(j₀…j_j j_j…j_m)
  for (unsigned m = 0; m < n_max; ++m)
    for (unsigned j = 0; j <= m; ++j) {
      GradedLinearMap f(a.levels[m + 1].space(), a.levels[m].space(), 0);
      for (const auto& t : tuples[m]) {
        std::vector<unsigned> src = t;
        src.insert(src.begin() + j, t[j]);
        const auto& s = *cover.values.at(support(t))->space();
        for (std::size_t k = 0; k < s.size(); ++k) f.add(level_index(m + 1, src, k), level_index(m, t, k), Rational(1));
      }
      a.codegeneracies[m].push_back(std::move(f));
    }
  check_cosimplicial_identities(a);
  return a;
}

// ---------------------------------------------------------------------------
// Linear categories

std::size_t LinearCategory::hom_dim(std::size_t x, std::size_t y) const {
  auto it = homs.find({x, y});
  return it == homs.end() ? 0 : it->second.size();
}

SparseVec LinearCategory::composite(std::size_t x, std::size_t y, std::size_t z, const SparseVec& g,
                                    const SparseVec& h) const {
  SparseVec r;
  if (g.empty() || h.empty()) return r;
  const auto& table = compose.at({x, y, z});
  for (const auto& [i, a] : g)
    for (const auto& [j, b] : h) axpy(r, a * b, table.at(i).at(j));
  return r;
}

void check_category(const LinearCategory& u) {
  std::size_t n = u.objects.size();
  auto e = [](std::size_t i) { return SparseVec{{i, Rational(1)}}; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t i = 0; i < u.hom_dim(x, y); ++i) {
        if (u.composite(x, y, y, u.identity.at(y), e(i)) != e(i) || u.composite(x, x, y, e(i), u.identity.at(x)) != e(i))
          throw StructuralError("identity fails on " + u.objects[x] + " -> " + u.objects[y]);
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t j = 0; j < u.hom_dim(y, z); ++j)
            for (std::size_t w = 0; w < n; ++w)
              for (std::size_t k = 0; k < u.hom_dim(z, w); ++k)
                if (u.composite(x, z, w, e(k), u.composite(x, y, z, e(j), e(i))) !=
                    u.composite(x, y, w, u.composite(y, z, w, e(k), e(j)), e(i)))
                  throw StructuralError("composition is not associative");
      }
}

LinearCategory category_from_cover(const AlgebraCover& c) {
  check_cover(c);
  LinearCategory u;
  auto subsets = nonempty_subsets(c.n);
  for (const auto& s : subsets) u.objects.push_back(subset_label(s));
  std::size_t n = subsets.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (is_subset(subsets[x], subsets[y])) u.homs[{x, y}] = c.values.at(subsets[y]).labels;
  for (std::size_t x = 0; x < n; ++x) u.identity[x] = c.values.at(subsets[x]).unit;
  // g∘h = g·ρ(h) in A(U_z)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (!u.hom_dim(x, y) || !u.hom_dim(y, z)) continue;
        const auto& Az = c.values.at(subsets[z]);
        auto r = c.restriction(subsets[y], subsets[z]);
        std::vector<std::vector<SparseVec>> table(u.hom_dim(y, z), std::vector<SparseVec>(u.hom_dim(x, y)));
        for (std::size_t g = 0; g < table.size(); ++g)
          for (std::size_t h = 0; h < table[g].size(); ++h) table[g][h] = Az.multiply({{g, Rational(1)}}, r.at(h));
        u.compose[{x, y, z}] = std::move(table);
      }
  return u;
}

LinearCategory full_subcategory(const LinearCategory& u, const std::vector<std::size_t>& objects) {
  LinearCategory v;
  for (std::size_t o : objects) v.objects.push_back(u.objects.at(o));
  for (std::size_t a = 0; a < objects.size(); ++a) {
    v.identity[a] = u.identity.at(objects[a]);
    for (std::size_t b = 0; b < objects.size(); ++b) {
      auto it = u.homs.find({objects[a], objects[b]});
      if (it != u.homs.end()) v.homs[{a, b}] = it->second;
      for (std::size_t c = 0; c < objects.size(); ++c) {
        auto jt = u.compose.find({objects[a], objects[b], objects[c]});
        if (jt != u.compose.end()) v.compose[{a, b, c}] = jt->second;
      }
    }
  }
  return v;
}

LinearCategory path_category_a2() {
  LinearCategory u;
  u.objects = {"x0", "x1"};
  u.homs[{0, 0}] = {"id0"};
  u.homs[{1, 1}] = {"id1"};
  u.homs[{0, 1}] = {"f"};
  SparseVec one{{0, Rational(1)}};
  u.identity[0] = one;
  u.identity[1] = one;
  u.compose[{0, 0, 0}] = {{one}};
  u.compose[{1, 1, 1}] = {{one}};
  u.compose[{0, 0, 1}] = {{one}};
  u.compose[{0, 1, 1}] = {{one}};
  return u;
}

LinearCategory one_object_category(const FiniteAlgebra& a) {
  check_algebra(a);
  LinearCategory u;
  u.objects = {"*"};
  u.homs[{0, 0}] = a.labels;
  u.identity[0] = a.unit;
  std::vector<std::vector<SparseVec>> table(a.dim(), std::vector<SparseVec>(a.dim()));
  for (std::size_t g = 0; g < a.dim(); ++g)
    for (std::size_t h = 0; h < a.dim(); ++h) table[g][h] = a.multiply({{g, Rational(1)}}, {{h, Rational(1)}});
  u.compose[{0, 0, 0}] = std::move(table);
  return u;
}

namespace {

// Chains U₀ → … → U_p with all consecutive homs and u(U₀, U_p) nonzero.
std::vector<std::vector<std::size_t>> valid_chains(const LinearCategory& u, unsigned p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == p + 1) {
      if (u.hom_dim(cur.front(), cur.back())) out.push_back(cur);
      return;
    }
    for (std::size_t o = 0; o < u.objects.size(); ++o) {
      if (!cur.empty() && !u.hom_dim(cur.back(), o)) continue;
      cur.push_back(o);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

std::string cochain_label(const LinearCategory& u, const std::vector<std::size_t>& chain,
                          const std::vector<std::size_t>& args, std::size_t t) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? ">" : "") + u.objects[chain[i]];
  s += "|";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
  return s + "|" + std::to_string(t);
}

// Argument tuples a₁ ∈ u(U_{p−1}, U_p), …, a_p ∈ u(U₀, U₁).
std::vector<std::vector<std::size_t>> arg_tuples(const LinearCategory& u, const std::vector<std::size_t>& chain) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::size_t p = chain.size() - 1;
  for (std::size_t i = 1; i <= p; ++i) {
    std::size_t dim = u.hom_dim(chain[p - i], chain[p - i + 1]);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : out)
      for (std::size_t b = 0; b < dim; ++b) {
        auto n = t;
        n.push_back(b);
        next.push_back(std::move(n));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

CochainComplex category_hochschild(const LinearCategory& u, unsigned cap) {
  check_category(u);
  std::map<int, std::vector<std::string>> labels;
  for (unsigned p = 0; p <= cap; ++p) {
    auto& ls = labels[static_cast<int>(p)];
    for (const auto& ch : valid_chains(u, p))
      for (const auto& args : arg_tuples(u, ch))
        for (std::size_t t = 0; t < u.hom_dim(ch.front(), ch.back()); ++t) ls.push_back(cochain_label(u, ch, args, t));
  }
  SpacePtr sp = make_space(labels);
  std::vector<SparseVec> cols(sp->size());
  for (unsigned p = 0; p < cap; ++p) {
    int src_deg = static_cast<int>(p);
    auto coord = [&](const std::vector<std::size_t>& ch, const std::vector<std::size_t>& args, std::size_t t) {
      return sp->find(src_deg, cochain_label(u, ch, args, t));
    };
    for (const auto& ch : valid_chains(u, p + 1)) {
      std::size_t x0 = ch.front(), xl = ch.back();
      for (const auto& args : arg_tuples(u, ch)) {
        // value of df on this argument tuple, as a map from source coordinates to vectors in u(x0, xl)
        auto contribute = [&](std::optional<std::size_t> src, const SparseVec& value, const Rational& c) {
          if (!src) return;
          for (const auto& [t, v] : value) {
            std::size_t row = sp->index(src_deg + 1, cochain_label(u, ch, args, t));
            add_entry(cols[*src], row, c * v);
          }
        };
        // a₁ ∘ f(a₂, …): f on U₀…U_p
        {
          std::vector<std::size_t> sub(ch.begin(), ch.end() - 1);
          std::vector<std::size_t> rest(args.begin() + 1, args.end());
          if (u.hom_dim(sub.front(), sub.back()))
            for (std::size_t t = 0; t < u.hom_dim(sub.front(), sub.back()); ++t)
              contribute(coord(sub, rest, t),
                         u.composite(x0, sub.back(), xl, {{args[0], Rational(1)}}, {{t, Rational(1)}}), Rational(1));
        }
        // (−1)^i f(…, a_i∘a_{i+1}, …): drop U_{p+1−i}
        for (std::size_t i = 1; i <= p; ++i) {
          std::size_t drop = p + 1 - i;
          std::vector<std::size_t> sub = ch;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          SparseVec comp = u.composite(ch[drop - 1], ch[drop], ch[drop + 1], {{args[i - 1], Rational(1)}},
                                       {{args[i], Rational(1)}});
          Rational sign = i % 2 == 0 ? 1 : -1;
          for (const auto& [b, cb] : comp) {
            std::vector<std::size_t> a2;
            for (std::size_t k = 0; k < args.size(); ++k) {
              if (k == i - 1) a2.push_back(b);
              else if (k != i) a2.push_back(args[k]);
            }
            for (std::size_t t = 0; t < u.hom_dim(x0, xl); ++t)
              contribute(coord(sub, a2, t), SparseVec{{t, Rational(1)}}, sign * cb);
          }
        }
        // (−1)^{p+1} f(a₁, …, a_p) ∘ a_{p+1}: f on U₁…U_{p+1}
        {
          std::vector<std::size_t> sub(ch.begin() + 1, ch.end());
          std::vector<std::size_t> rest(args.begin(), args.end() - 1);
          Rational sign = (p + 1) % 2 == 0 ? 1 : -1;
          for (std::size_t t = 0; t < u.hom_dim(sub.front(), sub.back()); ++t)
            contribute(coord(sub, rest, t),
                       u.composite(x0, ch[1], xl, {{t, Rational(1)}}, {{args.back(), Rational(1)}}), sign);
        }
      }
    }
  }
  return CochainComplex(sp, GradedLinearMap(sp, sp, 1, std::move(cols)));
}

GradedLinearMap hochschild_restriction(const CochainComplex& cu, const CochainComplex& cv) {
  const auto& su = *cu.space();
  GradedLinearMap m(cu.space(), cv.space(), 0);
  for (std::size_t i = 0; i < su.size(); ++i)
    if (auto j = cv.space()->find(su.degree(i), su.label(i))) m.add(i, *j, Rational(1));
  require_chain_map(m, cu, cv);
  return m;
}

bool DoubleComplexReport::ok() const {
  return vertical_commutes &&
         std::all_of(rows.begin(), rows.end(), [](const DoubleComplexRow& r) { return r.exact && r.squares_to_zero; });
}

DoubleComplexReport double_complex_check(const AlgebraCover& c, unsigned cap) {
  LinearCategory u = category_from_cover(c);
  auto subsets = nonempty_subsets(c.n);
  // C(u_J) for J = ∅ and every nonempty J
  std::map<Subset, CochainComplex> cx;
  cx.emplace(Subset{}, category_hochschild(u, cap));
  for (const auto& j : subsets) {
    std::vector<std::size_t> objs;
    for (std::size_t o = 0; o < subsets.size(); ++o)
      if (is_subset(j, subsets[o])) objs.push_back(o);
    cx.emplace(j, category_hochschild(full_subcategory(u, objs), cap));
  }
  DoubleComplexReport rep;
  rep.cover_size = c.n;
  rep.cap = cap;
  // Restriction maps C(u_J) → C(u_{J'}) for J ⊂ J', |J'| = |J| + 1.
  std::map<std::pair<Subset, Subset>, GradedLinearMap> res;
  for (const auto& [j, cj] : cx)
    for (unsigned extra = 0; extra < c.n; ++extra) {
      if (std::binary_search(j.begin(), j.end(), extra)) continue;
      Subset k = j;
      k.insert(std::lower_bound(k.begin(), k.end(), extra), extra);
      try {
        res.emplace(std::make_pair(j, k), hochschild_restriction(cj, cx.at(k)));
      } catch (const ChainMapError&) {
        rep.vertical_commutes = false;
        return rep;
      }
    }
  // Columns m = −1..n−1 are the sets of size m + 1.
  std::vector<std::vector<Subset>> by_size(c.n + 1);
  by_size[0].push_back(Subset{});
  for (const auto& j : subsets) by_size[j.size()].push_back(j);
  for (unsigned p = 0; p <= cap; ++p) {
    DoubleComplexRow row;
    row.degree = p;
    int deg = static_cast<int>(p);
    // Offsets of each summand inside column m.
    std::vector<std::map<Subset, std::size_t>> offset(c.n + 1);
    for (unsigned m = 0; m <= c.n; ++m) {
      std::size_t total = 0;
      for (const auto& j : by_size[m]) {
        offset[m][j] = total;
        total += cx.at(j).space()->dim(deg);
      }
      row.dims.push_back(total);
    }
    std::vector<std::vector<SparseVec>> maps;
    for (unsigned m = 0; m < c.n; ++m) {
      std::vector<SparseVec> cols(row.dims[m]);
      for (const auto& k : by_size[m + 1])
        for (std::size_t i = 0; i < k.size(); ++i) {
          Subset j = k;
          j.erase(j.begin() + static_cast<std::ptrdiff_t>(i));
          const auto& r = res.at({j, k});
          Rational sign = i % 2 == 0 ? 1 : -1;
          auto [lo, hi] = cx.at(j).space()->range(deg);
          auto tlo = cx.at(k).space()->range(deg).first;
          for (std::size_t s = lo; s < hi; ++s)
            for (const auto& [t, v] : r.column(s))
              add_entry(cols[offset[m][j] + s - lo], offset[m + 1][k] + t - tlo, sign * v);
        }
      maps.push_back(std::move(cols));
    }
    for (const auto& mp : maps) row.ranks.push_back(sparse_rank(mp));
    for (std::size_t m = 0; m + 1 < maps.size(); ++m)
      for (const auto& col : maps[m]) {
        SparseVec v;
        for (const auto& [k, x] : col) axpy(v, x, maps[m + 1][k]);
        if (!v.empty()) row.squares_to_zero = false;
      }
    for (std::size_t m = 0; m < row.dims.size(); ++m) {
      std::size_t in = m == 0 ? 0 : row.ranks[m - 1];
      std::size_t out = m < row.ranks.size() ? row.ranks[m] : 0;
      if (row.dims[m] != in + out) row.exact = false;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dq
