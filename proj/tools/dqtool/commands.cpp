#include "commands.hpp"

#include "dq/cech.hpp"
#include "dq/coordbundle.hpp"
#include "dq/cosimplicial.hpp"
#include "dq/errors.hpp"
#include "dq/families.hpp"
#include "dq/linfty.hpp"
#include "dq/polyops.hpp"
#include "dq/polywindows.hpp"

#include <fstream>
#include <sstream>

namespace dqtool {

using namespace dq;

namespace {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

const Json& field_or_throw(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

LieAlgebraData lie_family(const std::string& name) {
  if (name == "sl2") return lie_sl2();
  if (name == "affine2") return lie_affine2();
  if (name == "heisenberg") return lie_heisenberg();
  if (name == "broken-jacobi") return lie_broken_jacobi();
  if (name.rfind("abelian", 0) == 0) {
    std::string n = name.substr(7);
    if (n.empty() || n.size() > 2 || n.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("unknown family \"" + name + "\"");
    return lie_abelian(static_cast<unsigned>(std::stoul(n)));
  }
  throw ParseError("unknown family \"" + name + "\" (sl2, affine2, heisenberg, abelianN, broken-jacobi)");
}

// g ⊗ forms, or g itself when no form variables are requested.
DglaPtr family_algebra(const Options& opt) {
  LieAlgebraData lie = lie_family(opt.family);
  if (opt.forms_vars == 0 && opt.odd == 0) return std::make_shared<const DGLieAlgebra>(lie_algebra(lie));
  return lie_tensor_forms(lie, opt.forms_vars, opt.weight_cap, opt.odd).algebra;
}

Json family_caps(const Options& opt) {
  return Json{{"family", opt.family}, {"forms_vars", opt.forms_vars}, {"weight_cap", opt.weight_cap},
              {"odd", opt.odd}};
}

DglaPtr input_or_family(const Options& opt, Json& caps) {
  if (!opt.input.empty()) {
    caps["input"] = opt.input;
    return dgla_from_json(read_json_file(opt.input));
  }
  caps.update(family_caps(opt));
  return family_algebra(opt);
}

Json eps_series_json(const GradedSpace& s, const EpsSeries& e) {
  Json out = Json::array();
  for (const auto& c : e) out.push_back(graded_vector_json(s, c));
  return out;
}

Json failures_json(const GradedSpace& target, const std::vector<WordFailure>& fs) {
  Json out = Json::array();
  for (const auto& f : fs)
    out.push_back({{"arity", f.arity}, {"word", f.word}, {"value", graded_vector_json(target, f.value)}});
  return out;
}

Json axiom_failures_json(const GradedSpace& s, const AxiomReport& r) {
  Json out = Json::array();
  for (const auto& f : r.failures)
    out.push_back({{"kind", f.kind}, {"labels", f.labels}, {"defect", graded_vector_json(s, f.defect)}});
  return out;
}

struct Checks {
  Json& report;
  bool pass = true;
  void operator()(const std::string& name, bool ok, const Json& witness = Json()) {
    report["checks"][name] = ok;
    if (!ok) {
      pass = false;
      if (!witness.is_null()) report["witnesses"][name] = witness;
    }
  }
};

std::pair<int, int> parse_window(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int w = std::stoi(text);
      return {w, w};
    }
    std::size_t used = 0;
    int lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw ParseError("bad window");
    std::string rest = text.substr(dots + 2);
    int hi = std::stoi(rest, &used);
    if (used != rest.size() || hi < lo) throw ParseError("bad window");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("internal degree window must look like \"-2..2\", got \"" + text + "\"");
  }
}

AlgebraCover builtin_cover(const Options& opt) {
  if (opt.cover_size < 1 || opt.cover_size > 9) throw DomainError("cover size must be between 1 and 9");
  if (opt.algebra == "rationals") return constant_cover(opt.cover_size, FiniteAlgebra::rationals());
  if (opt.algebra == "qx2") return constant_cover(opt.cover_size, FiniteAlgebra::truncated_polynomial(2));
  throw ParseError("unknown algebra \"" + opt.algebra + "\" (rationals, qx2)");
}

AlgebraCover input_or_cover(const Options& opt, Json& caps) {
  if (!opt.input.empty()) {
    caps["input"] = opt.input;
    AlgebraCover c = cover_from_json(read_json_file(opt.input));
    check_cover(c);
    return c;
  }
  caps["cover_size"] = opt.cover_size;
  caps["algebra"] = opt.algebra;
  AlgebraCover c = builtin_cover(opt);
  return c;
}

std::map<int, std::size_t> cohomology_dims(const CochainComplex& c, int lo, int hi) {
  std::map<int, std::size_t> out;
  for (int k = lo; k <= hi; ++k) out[k] = cohomology(c, k).dimension;
  return out;
}

Json dims_json(const std::map<int, std::size_t>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

// Linear vector fields X = Σ a[i][j] s_j ∂/∂s_i used as contractions.
std::vector<std::pair<std::string, std::vector<std::vector<int>>>> builtin_fields(unsigned vars) {
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> out;
  std::vector<std::vector<int>> euler(vars, std::vector<int>(vars, 0));
  for (unsigned i = 0; i < vars; ++i) euler[i][i] = 1;
  out.emplace_back("euler", euler);
  for (unsigned i = 0; i < vars; ++i)
    for (unsigned j = 0; j < vars; ++j) {
      if (i == j) continue;
      std::vector<std::vector<int>> a(vars, std::vector<int>(vars, 0));
      a[i][j] = 1;
      out.emplace_back("s" + std::to_string(j + 1) + "d" + std::to_string(i + 1), a);
    }
  return out;
}

}  // namespace

bool hkr_check(const Options& opt, Json& report) {
  auto [lo, hi] = parse_window(opt.internal_degree_window);
  report["caps"] = {{"dim", opt.dim}, {"arity_max", opt.arity_max}, {"internal_degree_window", {lo, hi}},
                    {"order_cap", opt.order_cap}, {"coeff_cap", opt.coeff_cap}};
  if (opt.dim < 1 || opt.dim > 3) throw DomainError("hkr-check supports dim 1..3");
  HkrReport r = hkr_quasi_iso_report(opt.dim, {lo, hi, opt.order_cap, opt.coeff_cap}, 0, opt.arity_max);
  report["effective_caps"] = {{"order_cap", r.order_cap}, {"coeff_cap", r.coeff_cap}};
  Json rows = Json::array();
  Json bad = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"arity", row.arity},
           {"internal_degree", row.internal_degree},
           {"complex_dim", row.complex_dim},
           {"cohomology_dim", row.cohomology_dim},
           {"tpoly_dim", row.tpoly_dim},
           {"hkr_cocycles", row.hkr_cocycles},
           {"spans", row.spans}};
    rows.push_back(j);
    if (!row.ok()) bad.push_back(j);
  }
  report["rows"] = rows;
  Checks check{report};
  check("hkr_quasi_iso", r.ok(), bad);
  return check.pass;
}

bool mc_check(const Options& opt, Json& report) {
  Json caps;
  DglaPtr g = input_or_family(opt, caps);
  Checks check{report};
  AxiomReport ax = check_dgla_axioms(*g);
  check("dgla_axioms", ax.ok(), axiom_failures_json(*g->space(), ax));
  std::optional<MCElement> pi;
  if (!opt.mc_input.empty()) {
    caps["mc_input"] = opt.mc_input;
    pi = mc_from_json(g, read_json_file(opt.mc_input));
  } else {
    caps["order"] = opt.order;
    Rng rng(opt.seed);
    pi = random_mc(g, opt.order, rng);
  }
  report["caps"] = caps;
  report["mc_element"] = mc_json(*pi);
  EpsSeries res = mc_residual(*pi);
  check("mc_residual_zero", series_is_zero(res), eps_series_json(*g->space(), res));
  return check.pass;
}

bool gauge_check(const Options& opt, Json& report) {
  Json caps;
  DglaPtr g = input_or_family(opt, caps);
  caps["order"] = opt.order;
  caps["trials"] = opt.trials;
  report["caps"] = caps;
  Checks check{report};
  Rng rng(opt.seed);
  Json trials = Json::array();
  bool all_mc = true, fixes = true;
  Json witness;
  for (unsigned t = 0; t < opt.trials; ++t) {
    MCElement pi = random_mc(g, opt.order, rng);
    EpsSeries u = random_gauge_parameter(*g, opt.order, rng);
    MCElement moved = gauge_transform(u, pi);
    EpsSeries res = mc_residual(moved);
    bool ok = series_is_zero(res);
    MCElement still = gauge_transform(EpsSeries(opt.order), pi);
    bool fixed = still.coeffs == pi.coeffs;
    trials.push_back({{"pi", mc_json(pi)},
                      {"u", eps_series_json(*g->space(), u)},
                      {"gauge_transform", mc_json(moved)},
                      {"residual_zero", ok},
                      {"zero_fixes", fixed}});
    if (!ok && witness.is_null()) witness = {{"trial", t}, {"residual", eps_series_json(*g->space(), res)}};
    all_mc = all_mc && ok;
    fixes = fixes && fixed;
  }
  report["trials"] = trials;
  check("gauge_preserves_mc", all_mc, witness);
  check("zero_gauge_fixes", fixes);
  return check.pass;
}

bool twist_check(const Options& opt, Json& report) {
  Json caps;
  DglaPtr g = input_or_family(opt, caps);
  caps["order"] = opt.order;
  caps["trials"] = opt.trials;
  caps["arity_max"] = opt.arity_max;
  report["caps"] = caps;
  Checks check{report};
  Rng rng(opt.seed);
  bool d2 = true, mc = true, mor = true, qg_ok = true, qh_ok = true;
  Json trials = Json::array();
  Json wit_mc, wit_mor;
  for (unsigned t = 0; t < opt.trials; ++t) {
    MCElement pi = random_mc(g, opt.order, rng);
    AbelianizationMorphism ab = random_abelianization(*g, {}, opt.arity_max, rng);
    ScalarExtension eg = extend_scalars(g, opt.order);
    ScalarExtension eh = extend_scalars(ab.target, opt.order);
    TowerPtr qg = from_dgla(eg.algebra, opt.arity_max);
    TowerPtr qh = from_dgla(eh.algebra, opt.arity_max);
    TowerPtr psi = extend_tower(ab.psi, eg, eh);
    EpsGrading gg = EpsGrading::of(eg), gh = EpsGrading::of(eh);
    SparseVec omega = eg.embed(pi.coeffs);

    TwistedDgla td = twist_dgla(pi);
    const GradedLinearMap& dw = td.extension.algebra->d();
    bool square_zero = dw.compose(dw).is_zero();
    TwistResult tw = twist(qg, qh, psi, omega, gg, gh);
    SparseVec res = linfty_mc_residual(*tw.qh, tw.omega_prime, gh);
    SweepReport sg = sweep_linfty(*tw.qg, opt.arity_max, &gg);
    SweepReport sh = sweep_linfty(*tw.qh, opt.arity_max, &gh);
    SweepReport sm = sweep_morphism(*tw.psi, *tw.qg, *tw.qh, opt.arity_max, &gg);
    trials.push_back({{"omega", mc_json(pi)},
                      {"omega_prime", graded_vector_json(*eh.algebra->space(), tw.omega_prime)},
                      {"d_omega_squared_zero", square_zero},
                      {"omega_prime_residual_zero", res.empty()},
                      {"twisted_source_words", sg.words_checked},
                      {"twisted_morphism_words", sm.words_checked}});
    if (!res.empty() && wit_mc.is_null())
      wit_mc = {{"trial", t}, {"residual", graded_vector_json(*eh.algebra->space(), res)}};
    if (!sm.ok() && wit_mor.is_null())
      wit_mor = {{"trial", t}, {"failures", failures_json(*eh.algebra->space(), sm.failures)}};
    d2 = d2 && square_zero;
    mc = mc && res.empty();
    mor = mor && sm.ok();
    qg_ok = qg_ok && sg.ok();
    qh_ok = qh_ok && sh.ok();
  }
  report["trials"] = trials;
  check("d_omega_squared_zero", d2);
  check("omega_prime_mc", mc, wit_mc);
  check("twisted_morphism", mor, wit_mor);
  check("twisted_source_linfty", qg_ok);
  check("twisted_target_linfty", qh_ok);
  return check.pass;
}

bool linfty_verify(const Options& opt, Json& report) {
  Json caps;
  caps["arity_max"] = opt.arity_max;
  TowerPtr q;
  SpacePtr space;
  if (!opt.input.empty()) {
    caps["input"] = opt.input;
    Json j = read_json_file(opt.input);
    if (j.contains("tower")) {
      space = space_from_json(field_or_throw(j, "basis"));
      q = tower_from_json(space, space, j.at("tower"));
    } else {
      DglaPtr g = dgla_from_json(j);
      space = g->space();
      q = from_dgla(g, std::max(opt.arity_max, 2u));
    }
  } else {
    caps.update(family_caps(opt));
    DglaPtr g = family_algebra(opt);
    space = g->space();
    q = from_dgla(g, std::max(opt.arity_max, 2u));
  }
  report["caps"] = caps;
  SweepReport s = sweep_linfty(*q, opt.arity_max);
  report["words_checked"] = s.words_checked;
  Checks check{report};
  check("linfty_defect_zero", s.ok(), failures_json(*space, s.failures));
  return check.pass;
}

bool descend_check(const Options& opt, Json& report) {
  if (opt.forms_vars == 0) throw DomainError("descend-check needs forms_vars >= 1");
  Json caps = family_caps(opt);
  caps["order"] = opt.order;
  caps["arity_max"] = opt.arity_max;
  report["caps"] = caps;
  LieForms lf = lie_tensor_forms(lie_family(opt.family), opt.forms_vars, opt.weight_cap, opt.odd);
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<int>>> fields;
  for (auto& [n, a] : builtin_fields(opt.forms_vars)) {
    names.push_back(n);
    fields.push_back(a);
  }
  report["actions"] = names;
  ContractionAction source = lie_forms_action(lf, names, fields);
  Checks check{report};
  AxiomReport ax = check_action(source);
  check("action_is_derivation", ax.ok(), axiom_failures_json(*lf.algebra->space(), ax));

  TowerPtr q = from_dgla(lf.algebra, opt.arity_max);
  const GradedSpace& s = *lf.algebra->space();
  std::size_t words = 0;
  Json lemma_fail;
  for (std::size_t v = 0; v < names.size(); ++v)
    for (unsigned n = 1; n <= opt.arity_max; ++n)
      for (const Word& w : basis_words(s, n)) {
        ++words;
        SparseVec def = lie_coderivation_defect(*q, source, v, w);
        if (!def.empty() && lemma_fail.is_null())
          lemma_fail = {{"action", names[v]}, {"word", word_labels(s, w)}, {"defect", graded_vector_json(s, def)}};
      }
  report["lie_derivative_words"] = words;
  check("lie_derivative_is_commutator", lemma_fail.is_null(), lemma_fail);

  Rng rng(opt.seed);
  AbelianizationMorphism ab = random_abelianization(*lf.algebra, source.contractions, opt.arity_max, rng);
  ContractionAction target = zero_action(ab.target, names);
  ScalarExtension es = extend_scalars(lf.algebra, opt.order);
  ScalarExtension et = extend_scalars(ab.target, opt.order);
  MCElement pi = random_mc(lf.algebra, opt.order, rng);
  DescentTwist tw{&es, &et, es.embed(pi.coeffs)};
  report["omega"] = mc_json(pi);
  DescentReport dr = descend_morphism(ab.psi, source, target, opt.arity_max, &tw);
  report["descent"] = {{"words_checked", dr.words_checked},
                       {"source_invariants", dr.source_reduced.algebra->space()->size()},
                       {"target_invariants", dr.target_reduced.algebra->space()->size()},
                       {"notes", dr.notes}};
  check("morphism_commutes", dr.commutes);
  check("restriction_lands_in_invariants", dr.lands_in_invariants);
  check("twist_hypothesis", dr.hypothesis_holds);
  check("twisted_commutes", dr.twisted_commutes);
  return check.pass;
}

bool ts_normalize(const Options& opt, Json& report) {
  Json caps{{"n_max", opt.n_max}, {"form_cap", opt.form_cap}};
  CosimplicialComplex a;
  if (!opt.input.empty()) {
    caps["input"] = opt.input;
    a = cosimplicial_from_json(read_json_file(opt.input));
  } else if (opt.algebra == "constant") {
    caps["algebra"] = "constant";
    caps.update(family_caps(opt));
    a = constant_cosimplicial(family_algebra(opt), opt.n_max);
  } else {
    caps["cover_size"] = opt.cover_size;
    caps["algebra"] = opt.algebra;
    a = ordered_cech(abelian_cover(builtin_cover(opt)), opt.n_max);
  }
  report["caps"] = caps;
  Checks check{report};
  bool identities = true;
  try {
    check_cosimplicial_identities(a);
  } catch (const StructuralError& e) {
    identities = false;
    report["witnesses"]["cosimplicial_identities"] = e.what();
  }
  check("cosimplicial_identities", identities);
  if (!identities) return false;
  NormalizedCochains n = normalized_cochain(a);
  ThomSullivan ts = thom_sullivan(a, opt.form_cap);
  const int hi = static_cast<int>(a.n_max);
  TsComparison cmp = ts_comparison(ts, a, n, 0, hi);
  Json rows = Json::array();
  for (const auto& r : cmp.verdict.rows)
    rows.push_back({{"degree", r.degree}, {"ts_dim", r.source_dim}, {"normalized_dim", r.target_dim},
                    {"induced_rank", r.induced_rank}});
  report["comparison"] = rows;
  report["ts_dimension"] = ts.complex.space()->size();
  check("ts_quasi_iso_normalized", cmp.verdict.verdict);
  if (ts.algebra) check("ts_dgla_axioms", check_dgla_axioms(*ts.algebra).ok());
  Form w{{FormKey{{1, 1}, {0, 1}}, Rational(1)}};
  Rational integral = integrate_form(2, w);
  report["simplex_integral_t1t2"] = rational_json(integral);
  check("simplex_integral", integral == Rational(1, 24));
  return check.pass;
}

bool cech_check(const Options& opt, Json& report) {
  Json caps{{"n_max", opt.n_max}};
  AlgebraCover c = input_or_cover(opt, caps);
  report["caps"] = caps;
  Checks check{report};
  check_cover(c);
  CosimplicialComplex a = ordered_cech(abelian_cover(c), opt.n_max);
  NormalizedCochains n = normalized_cochain(a);
  CochainComplex u = unnormalized_cochain(a);
  const int hi = static_cast<int>(opt.n_max) - 1;
  report["normalized_cohomology"] = dims_json(cohomology_dims(n.complex, 0, hi));
  report["unnormalized_cohomology"] = dims_json(cohomology_dims(u, 0, hi));
  QuasiIsoReport q = is_quasi_iso(n.inclusion, n.complex, u, 0, hi);
  check("normalized_inclusion_quasi_iso", q.verdict);
  return check.pass;
}

bool double_complex_check(const Options& opt, Json& report) {
  Json caps{{"cap", opt.cap}};
  AlgebraCover c = input_or_cover(opt, caps);
  report["caps"] = caps;
  DoubleComplexReport r = dq::double_complex_check(c, opt.cap);
  Json rows = Json::array();
  Json bad = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"degree", row.degree}, {"dims", row.dims}, {"ranks", row.ranks},
           {"squares_to_zero", row.squares_to_zero}, {"exact", row.exact}};
    rows.push_back(j);
    if (!row.exact || !row.squares_to_zero) bad.push_back(j);
  }
  report["rows"] = rows;
  Checks check{report};
  check("rows_exact", bad.empty(), bad);
  check("restrictions_are_chain_maps", r.vertical_commutes);
  return check.pass;
}

bool coordbundle_verify(const Options& opt, Json& report) {
  report["caps"] = {{"gen_cap", opt.gen_cap},
                    {"jet_cap", opt.jet_cap},
                    {"laurent_cap", opt.laurent_cap},
                    {"witt_max", opt.witt_max},
                    {"homotopy_gen_cap", opt.homotopy_gen_cap},
                    {"homotopy_weight_cap", opt.homotopy_weight_cap},
                    {"x_cap", opt.x_cap}};
  Checks check{report};
  WittReport w = check_witt_relations(opt.witt_max, opt.gen_cap);
  Json wf = Json::array();
  for (const auto& f : w.failures)
    wf.push_back({{"i", f.i}, {"j", f.j}, {"generator", f.generator}, {"defect", to_string(f.defect)}});
  report["witt_checked"] = w.checked;
  check("witt_relations", w.holds(), wf);

  CoordRing1 ring{opt.gen_cap, opt.jet_cap, opt.laurent_cap};
  MaurerCartanForm1 omega = mc_form(ring);
  Json g = Json::array();
  for (const auto& gk : omega.g) g.push_back(to_string(gk));
  report["mc_form"] = g;
  McFormReport mr = verify_mc_form(omega, ring, opt.jet_cap);
  check("mc_defining_equation", mr.defining_ok);
  check("mc_equation", mr.mc_ok);
  check("mc_contraction_identity", mr.contraction_ok);

  bool inv = true;
  for (const char* f : {"x", "x^2", "x^3 - 2*x + 1"})
    for (unsigned i = 0; i <= std::min(opt.witt_max, opt.jet_cap); ++i)
      if (!check_invariance(parse_poly(f, 1), witt_generator(i), opt.jet_cap).is_zero()) inv = false;
  check("tilde_invariance", inv);

  Gl1Report gl = gl1_invariants(opt.gen_cap, opt.jet_cap);
  Json ys = Json::object();
  for (const auto& [i, y] : gl.invariants) ys["y" + std::to_string(i)] = to_string(y);
  report["gl1_invariants"] = ys;
  check("gl1_invariants", gl.holds());

  AcyclicityReport ac = acyclicity_homotopy(opt.homotopy_gen_cap, opt.homotopy_weight_cap, opt.x_cap);
  Json coh = Json::object();
  for (const auto& [d, n] : ac.cohomology) coh[std::to_string(d)] = n;
  report["acyclicity"] = {{"basis_size", ac.basis_size}, {"cohomology", coh}};
  check("homotopy_identity", ac.identity_failures.empty(), ac.identity_failures);
  check("h0_is_r", ac.h0_is_r);
  check("higher_cohomology_vanishes", ac.higher_vanish);

  bool poincare = true;
  for (unsigned vars = 1; vars <= 3; ++vars)
    for (unsigned n = 0; n <= opt.homotopy_weight_cap; ++n)
      if (!graded_poincare_piece(vars, n).exact) poincare = false;
  check("graded_poincare_pieces_exact", poincare);
  return check.pass;
}

bool star_product(const Options& opt, Json& report) {
  report["caps"] = {{"dim", opt.dim}, {"pi", opt.pi}, {"order", opt.star_order}, {"a", opt.a}, {"b", opt.b},
                    {"max_degree", opt.max_degree}};
  PolyVectorField pi = parse_polyvector(opt.pi, opt.dim);
  Poly a = parse_poly(opt.a, opt.dim), b = parse_poly(opt.b, opt.dim);
  std::vector<Poly> prod = first_order_star(pi, a, b, opt.star_order);
  Json terms = Json::object();
  for (std::size_t k = 0; k < prod.size(); ++k) terms["eps^" + std::to_string(k)] = poly_to_string(prod[k], opt.dim);
  report["product"] = terms;
  StarProductReport r = star_product_report(pi, opt.max_degree);
  report["triples"] = r.triples;
  report["poisson"] = r.poisson;
  report["first_order_associative"] = r.first_order_associative;
  report["obstruction"] = polydiff_json(r.obstruction);
  Checks check{report};
  check("first_order_associative", r.first_order_associative);
  check("obstruction_matches_residual", r.obstruction_matches_residual);
  check("obstruction_evaluations_match", r.obstruction_evaluations_match);
  check("alternation_matches_bracket", r.alternation_matches_bracket);
  return check.pass;
}

}  // namespace dqtool
