#include "dq/json_io.hpp"

#include "dq/errors.hpp"

#include <set>

namespace dq {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

long long as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

int parse_degree(const std::string& key) {
  try {
    std::size_t used = 0;
    int d = std::stoi(key, &used);
    if (used != key.size()) throw ParseError("bad degree key \"" + key + "\"");
    return d;
  } catch (const std::logic_error&) {
    throw ParseError("bad degree key \"" + key + "\"");
  }
}

// Index of a label that must be unique across degrees.
std::size_t find_unique(const GradedSpace& s, const std::string& label) {
  std::optional<std::size_t> hit;
  for (int d : s.degrees())
    if (auto i = s.find(d, label)) {
      if (hit) throw ParseError("label \"" + label + "\" occurs in several degrees");
      hit = i;
    }
  if (!hit) throw ParseError("unknown label \"" + label + "\"");
  return *hit;
}

Json flat_vector_json(const std::vector<std::string>& labels, const SparseVec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v) out[labels.at(i)] = rational_json(c);
  return out;
}

SparseVec flat_vector_from_json(const std::vector<std::string>& labels, const Json& j) {
  if (!j.is_object()) throw ParseError("vector must be an object {label: \"p/q\"}");
  SparseVec v;
  for (const auto& [label, value] : j.items()) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ParseError("unknown label \"" + label + "\"");
    add_entry(v, static_cast<std::size_t>(it - labels.begin()), rational_from_json(value));
  }
  return v;
}

Json monomial_json(const Monomial& m) { return Json(m); }

Monomial monomial_from_json(unsigned dim, const Json& j) {
  if (!j.is_array() || j.size() != dim) throw ParseError("monomial must be an exponent list of length dim");
  Monomial m;
  for (const auto& e : j) {
    long long v = as_int(e, "exponent");
    if (v < 0) throw ParseError("negative exponent");
    m.push_back(static_cast<unsigned>(v));
  }
  return m;
}

std::vector<unsigned> index_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<unsigned> out;
  for (const auto& e : j) {
    long long v = as_int(e, what);
    if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

Subset subset_from_label(const std::string& s) {
  Subset out;
  for (char c : s) {
    if (c < '1' || c > '9') throw ParseError("bad cover subset \"" + s + "\"");
    out.push_back(static_cast<unsigned>(c - '1'));
  }
  if (out.empty() || !std::is_sorted(out.begin(), out.end()) ||
      std::adjacent_find(out.begin(), out.end()) != out.end())
    throw ParseError("bad cover subset \"" + s + "\"");
  return out;
}

Json complex_json(const CochainComplex& c) { return Json{{"basis", space_json(*c.space())}, {"d", map_json(c.d())}}; }

CochainComplex complex_from_json(const Json& j) {
  SpacePtr s = space_from_json(field(j, "basis"));
  return CochainComplex(s, map_from_json(s, s, 1, field(j, "d")));
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  return parse_rational(as_string(j, "rational"));
}

Json graded_vector_json(const GradedSpace& s, const SparseVec& v) {
  Json out = Json::object();
  for (const auto& [i, c] : v) out[std::to_string(s.degree(i))][s.label(i)] = rational_json(c);
  return out;
}

SparseVec graded_vector_from_json(const GradedSpace& s, const Json& j) {
  if (!j.is_object()) throw ParseError("graded vector must be an object");
  SparseVec v;
  for (const auto& [deg, entries] : j.items()) {
    int d = parse_degree(deg);
    if (!entries.is_object()) throw ParseError("graded vector degree entry must be an object");
    for (const auto& [label, value] : entries.items()) {
      auto i = s.find(d, label);
      if (!i) throw ParseError("unknown label \"" + label + "\" in degree " + deg);
      add_entry(v, *i, rational_from_json(value));
    }
  }
  return v;
}

Json space_json(const GradedSpace& s) {
  Json out = Json::object();
  for (const auto& [d, labels] : s.basis()) out[std::to_string(d)] = labels;
  return out;
}

SpacePtr space_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("basis must be an object {degree: [labels]}");
  std::map<int, std::vector<std::string>> basis;
  for (const auto& [deg, labels] : j.items()) {
    if (!labels.is_array()) throw ParseError("basis entry must be a list of labels");
    auto& out = basis[parse_degree(deg)];
    std::set<std::string> seen;
    for (const auto& l : labels) {
      out.push_back(as_string(l, "label"));
      if (!seen.insert(out.back()).second) throw ParseError("duplicate label \"" + out.back() + "\"");
    }
  }
  return make_space(std::move(basis));
}

Json map_json(const GradedLinearMap& f) {
  Json out = Json::array();
  for (std::size_t i = 0; i < f.source()->size(); ++i) {
    if (f.column(i).empty()) continue;
    out.push_back({{"source", f.source()->label(i)}, {"value", graded_vector_json(*f.target(), f.column(i))}});
  }
  return out;
}

GradedLinearMap map_from_json(SpacePtr source, SpacePtr target, int degree, const Json& j) {
  if (!j.is_array()) throw ParseError("map must be a list of columns");
  GradedLinearMap f(source, target, degree);
  for (const auto& col : j) {
    std::size_t i = find_unique(*source, as_string(field(col, "source"), "source"));
    SparseVec v = graded_vector_from_json(*target, field(col, "value"));
    for (const auto& [t, c] : v) {
      if (target->degree(t) != source->degree(i) + degree)
        throw ParseError("map entry from \"" + source->label(i) + "\" has the wrong degree");
      f.add(i, t, c);
    }
  }
  return f;
}

Json dgla_json(const DGLieAlgebra& g) {
  const GradedSpace& s = *g.space();
  Json br = Json::array();
  for (const auto& [ij, v] : g.table()) {
    if (v.empty()) continue;
    br.push_back({{"left", s.label(ij.first)}, {"right", s.label(ij.second)}, {"value", graded_vector_json(s, v)}});
  }
  return Json{{"basis", space_json(s)}, {"d", map_json(g.d())}, {"bracket", br}};
}

DglaPtr dgla_from_json(const Json& j) {
  SpacePtr s = space_from_json(field(j, "basis"));
  GradedLinearMap d = j.contains("d") ? map_from_json(s, s, 1, j.at("d")) : GradedLinearMap::zero(s, s, 1);
  BracketTable table;
  if (j.contains("bracket")) {
    const Json& br = j.at("bracket");
    if (!br.is_array()) throw ParseError("bracket must be a list");
    for (const auto& e : br) {
      std::size_t a = find_unique(*s, as_string(field(e, "left"), "left"));
      std::size_t b = find_unique(*s, as_string(field(e, "right"), "right"));
      SparseVec v = graded_vector_from_json(*s, field(e, "value"));
      if (table.count({a, b})) throw ParseError("bracket pair listed twice");
      if (!v.empty()) table[{a, b}] = v;
    }
  }
  try {
    return std::make_shared<const DGLieAlgebra>(CochainComplex(s, d), std::move(table));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Json mc_json(const MCElement& pi) {
  Json coeffs = Json::array();
  for (const auto& c : pi.coeffs) coeffs.push_back(graded_vector_json(*pi.algebra->space(), c));
  return Json{{"order", pi.order}, {"coeffs", coeffs}};
}

MCElement mc_from_json(DglaPtr g, const Json& j) {
  long long order = as_int(field(j, "order"), "order");
  if (order < 1) throw ParseError("order must be positive");
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array() || cs.size() != static_cast<std::size_t>(order))
    throw ParseError("coeffs must list one graded vector per power of epsilon below the order");
  EpsSeries c;
  for (const auto& e : cs) c.push_back(graded_vector_from_json(*g->space(), e));
  try {
    return MCElement(std::move(g), static_cast<unsigned>(order), std::move(c));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Json tower_json(const ExplicitTower& t) {
  std::map<std::size_t, Json> by_arity;
  for (const auto& [w, v] : t.entries()) {
    if (v.empty()) continue;
    Json word = Json::array();
    for (std::size_t i : w) word.push_back(t.source()->label(i));
    auto& slot = by_arity[w.size()];
    if (slot.is_null()) slot = Json::array();
    slot.push_back({{"word", word}, {"value", graded_vector_json(*t.target(), v)}});
  }
  Json comps = Json::array();
  for (auto& [n, entries] : by_arity) comps.push_back({{"arity", n}, {"entries", entries}});
  return Json{{"kind", to_string(t.kind())},
              {"degree", t.degree()},
              {"arity_bound", t.arity_bound()},
              {"components", comps}};
}

std::shared_ptr<ExplicitTower> tower_from_json(SpacePtr source, SpacePtr target, const Json& j) {
  std::string kind = as_string(field(j, "kind"), "kind");
  TowerKind k;
  if (kind == "structure") k = TowerKind::structure;
  else if (kind == "morphism") k = TowerKind::morphism;
  else if (kind == "coderivation") k = TowerKind::coderivation;
  else throw ParseError("unknown tower kind \"" + kind + "\"");
  long long bound = as_int(field(j, "arity_bound"), "arity_bound");
  if (bound < 1) throw ParseError("arity_bound must be positive");
  int degree = j.contains("degree") ? static_cast<int>(as_int(j.at("degree"), "degree"))
                                    : (k == TowerKind::morphism ? 0 : 1);
  auto t = std::make_shared<ExplicitTower>(k, source, target, degree, static_cast<unsigned>(bound));
  const Json& comps = field(j, "components");
  if (!comps.is_array()) throw ParseError("components must be a list");
  for (const auto& comp : comps) {
    long long n = as_int(field(comp, "arity"), "arity");
    const Json& entries = field(comp, "entries");
    if (!entries.is_array()) throw ParseError("entries must be a list");
    for (const auto& e : entries) {
      const Json& word = field(e, "word");
      if (!word.is_array() || static_cast<long long>(word.size()) != n)
        throw ParseError("word length does not match its arity");
      Word w;
      for (const auto& l : word) w.push_back(find_unique(*source, as_string(l, "word letter")));
      try {
        t->set(w, graded_vector_from_json(*target, field(e, "value")));
      } catch (const DomainError& err) {
        throw ParseError(err.what());
      }
    }
  }
  return t;
}

Json polyvector_json(const PolyVectorField& p) {
  Json out = Json::array();
  for (const auto& [k, c] : p.terms())
    out.push_back({{"coeff", rational_json(c)}, {"monomial", monomial_json(k.monomial)}, {"indices", k.indices}});
  return out;
}

PolyVectorField polyvector_from_json(unsigned dim, const Json& j) {
  if (!j.is_array()) throw ParseError("polyvector must be a list of terms");
  PolyVectorField p(dim);
  for (const auto& t : j) {
    auto idx = index_list(field(t, "indices"), "indices");
    for (unsigned i : idx)
      if (i >= dim) throw ParseError("polyvector index out of range");
    p.add_term(monomial_from_json(dim, field(t, "monomial")), idx, rational_from_json(field(t, "coeff")));
  }
  return p;
}

Json polydiff_json(const PolyDiffOp& p) {
  Json out = Json::array();
  for (const auto& [k, c] : p.terms())
    out.push_back({{"coeff", rational_json(c)}, {"monomial", monomial_json(k.monomial)}, {"multiindices", k.slots}});
  return out;
}

PolyDiffOp polydiff_from_json(unsigned dim, const Json& j) {
  if (!j.is_array()) throw ParseError("operator must be a list of terms");
  PolyDiffOp p(dim);
  for (const auto& t : j) {
    const Json& ms = field(t, "multiindices");
    if (!ms.is_array()) throw ParseError("multiindices must be a list");
    std::vector<MultiIndex> slots;
    for (const auto& m : ms) slots.push_back(monomial_from_json(dim, m));
    p.add_term(monomial_from_json(dim, field(t, "monomial")), slots, rational_from_json(field(t, "coeff")));
  }
  return p;
}

Json algebra_json(const FiniteAlgebra& a) {
  Json mult = Json::array();
  for (const auto& [ij, v] : a.mult) {
    if (v.empty()) continue;
    mult.push_back({{"left", a.labels.at(ij.first)}, {"right", a.labels.at(ij.second)},
                    {"value", flat_vector_json(a.labels, v)}});
  }
  return Json{{"labels", a.labels}, {"unit", flat_vector_json(a.labels, a.unit)}, {"mult", mult}};
}

FiniteAlgebra algebra_from_json(const Json& j) {
  FiniteAlgebra a;
  const Json& labels = field(j, "labels");
  if (!labels.is_array()) throw ParseError("labels must be a list");
  for (const auto& l : labels) a.labels.push_back(as_string(l, "label"));
  a.unit = flat_vector_from_json(a.labels, field(j, "unit"));
  const Json& mult = field(j, "mult");
  if (!mult.is_array()) throw ParseError("mult must be a list");
  auto index = [&](const Json& l) {
    auto s = as_string(l, "label");
    auto it = std::find(a.labels.begin(), a.labels.end(), s);
    if (it == a.labels.end()) throw ParseError("unknown label \"" + s + "\"");
    return static_cast<std::size_t>(it - a.labels.begin());
  };
  for (const auto& e : mult)
    a.mult[{index(field(e, "left")), index(field(e, "right"))}] = flat_vector_from_json(a.labels, field(e, "value"));
  return a;
}

Json cover_json(const AlgebraCover& c) {
  Json values = Json::object();
  for (const auto& [s, a] : c.values) values[subset_label(s)] = algebra_json(a);
  Json res = Json::object();
  for (const auto& [key, cols] : c.restrictions) {
    const FiniteAlgebra& target = c.values.at(key.second);
    Json m = Json::array();
    for (const auto& col : cols) m.push_back(flat_vector_json(target.labels, col));
    res[subset_label(key.first) + ">" + subset_label(key.second)] = m;
  }
  return Json{{"n", c.n}, {"values", values}, {"restrictions", res}};
}

AlgebraCover cover_from_json(const Json& j) {
  AlgebraCover c;
  long long n = as_int(field(j, "n"), "n");
  if (n < 1 || n > 9) throw ParseError("cover size must be between 1 and 9");
  c.n = static_cast<unsigned>(n);
  const Json& values = field(j, "values");
  if (!values.is_object()) throw ParseError("values must be an object");
  for (const auto& [key, a] : values.items()) {
    Subset s = subset_from_label(key);
    if (s.back() >= c.n) throw ParseError("cover subset \"" + key + "\" out of range");
    c.values[s] = algebra_from_json(a);
  }
  for (const auto& s : nonempty_subsets(c.n))
    if (!c.values.count(s)) throw ParseError("missing value on " + subset_label(s));
  if (j.contains("restrictions")) {
    const Json& res = j.at("restrictions");
    if (!res.is_object()) throw ParseError("restrictions must be an object");
    for (const auto& [key, m] : res.items()) {
      auto gt = key.find('>');
      if (gt == std::string::npos) throw ParseError("restriction key must look like \"1>12\"");
      Subset from = subset_from_label(key.substr(0, gt)), to = subset_from_label(key.substr(gt + 1));
      if (!c.values.count(from) || !c.values.count(to)) throw ParseError("restriction between unknown sets");
      if (!m.is_array() || m.size() != c.values.at(from).dim())
        throw ParseError("restriction " + key + " needs one column per source basis element");
      std::vector<SparseVec> cols;
      for (const auto& col : m) cols.push_back(flat_vector_from_json(c.values.at(to).labels, col));
      c.restrictions[{from, to}] = std::move(cols);
    }
  }
  return c;
}

Json cosimplicial_json(const CosimplicialComplex& a) {
  Json levels = Json::array();
  for (const auto& l : a.levels) levels.push_back(complex_json(l));
  Json cof = Json::array();
  for (const auto& row : a.cofaces) {
    Json r = Json::array();
    for (const auto& f : row) r.push_back(map_json(f));
    cof.push_back(r);
  }
  Json cod = Json::array();
  for (unsigned k = 0; k < a.n_max && k < a.codegeneracies.size(); ++k) {
    Json r = Json::array();
    for (const auto& f : a.codegeneracies[k]) r.push_back(map_json(f));
    cod.push_back(r);
  }
  return Json{{"n_max", a.n_max}, {"levels", levels}, {"cofaces", cof}, {"codegeneracies", cod}};
}

CosimplicialComplex cosimplicial_from_json(const Json& j) {
  CosimplicialComplex a;
  long long n = as_int(field(j, "n_max"), "n_max");
  if (n < 0) throw ParseError("n_max must be nonnegative");
  a.n_max = static_cast<unsigned>(n);
  const Json& levels = field(j, "levels");
  if (!levels.is_array() || levels.size() != a.n_max + 1) throw ParseError("levels must list n_max + 1 complexes");
  try {
    for (const auto& l : levels) a.levels.push_back(complex_from_json(l));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("level differential: ") + e.what());
  }
  const Json& cof = field(j, "cofaces");
  const Json& cod = field(j, "codegeneracies");
  if (!cof.is_array() || cof.size() != a.n_max + 1) throw ParseError("cofaces must have n_max + 1 rows");
  if (!cod.is_array() || cod.size() != a.n_max) throw ParseError("codegeneracies must have n_max rows");
  a.cofaces.resize(a.n_max + 1);
  for (unsigned k = 1; k <= a.n_max; ++k) {
    if (!cof[k].is_array() || cof[k].size() != k + 1) throw ParseError("level " + std::to_string(k) + " needs k+1 cofaces");
    for (const auto& m : cof[k])
      a.cofaces[k].push_back(map_from_json(a.levels[k - 1].space(), a.levels[k].space(), 0, m));
  }
  a.codegeneracies.resize(a.n_max);
  for (unsigned k = 0; k < a.n_max; ++k) {
    if (!cod[k].is_array() || cod[k].size() != k + 1)
      throw ParseError("level " + std::to_string(k) + " needs k+1 codegeneracies");
    for (const auto& m : cod[k])
      a.codegeneracies[k].push_back(map_from_json(a.levels[k + 1].space(), a.levels[k].space(), 0, m));
  }
  a.codegeneracies.resize(a.n_max + 1);
  return a;
}

}  // namespace dq
