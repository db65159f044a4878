#include "commands.hpp"

#include "dq/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

namespace {

enum Exit { kPass = 0, kFail = 1, kParse = 2, kOverflow = 3 };

int emit(const dq::Json& report, const std::string& path) {
  const std::string text = dq::canonical_dump(report);
  std::cout << text;
  if (!path.empty()) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return kParse;
    }
    out << text;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  using dqtool::Options;
  Options opt;
  CLI::App app{"dqtool: exact verification pipelines for deformation quantization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", opt.seed, "Seed for randomized instances");
  app.add_option("--json-out", opt.json_out, "Also write the JSON report to this file");

  auto family_flags = [&](CLI::App* c) {
    c->add_option("--family", opt.family, "sl2, affine2, heisenberg, abelianN or broken-jacobi");
    c->add_option("--forms-vars", opt.forms_vars, "Polynomial form variables tensored with the Lie algebra");
    c->add_option("--weight-cap", opt.weight_cap, "Weight truncation of the forms");
    c->add_option("--odd", opt.odd, "Closed odd generators in the forms");
    c->add_option("--input", opt.input, "DG-Lie algebra JSON instead of a family");
  };
  auto eps_flags = [&](CLI::App* c) {
    c->add_option("--order", opt.order, "Work over Q[eps]/(eps^N)");
    c->add_option("--trials", opt.trials, "Number of seeded instances");
  };
  auto cover_flags = [&](CLI::App* c) {
    c->add_option("--cover-size", opt.cover_size, "Number of open sets");
    c->add_option("--algebra", opt.algebra, "rationals or qx2");
    c->add_option("--input", opt.input, "Cover JSON instead of a built-in cover");
  };

  std::map<CLI::App*, std::pair<std::string, dqtool::Command>> commands;
  auto add = [&](const char* name, const char* help, dqtool::Command fn) {
    CLI::App* c = app.add_subcommand(name, help);
    commands[c] = {name, fn};
    return c;
  };

  auto* hkr = add("hkr-check", "HKR quasi-isomorphism tables on internal-degree windows", dqtool::hkr_check);
  hkr->add_option("--dim", opt.dim, "Dimension d of Q[x1..xd]");
  hkr->add_option("--arity-max", opt.arity_max, "Largest polyvector arity");
  hkr->add_option("--internal-degree-window,--internal-degree", opt.internal_degree_window, "Window lo..hi");
  hkr->add_option("--order-cap", opt.order_cap, "Bound on total derivative order (0: default)");
  hkr->add_option("--coeff-cap", opt.coeff_cap, "Bound on coefficient degree (0: default)");

  auto* mc = add("mc-check", "Maurer-Cartan residual of a (random) element", dqtool::mc_check);
  family_flags(mc);
  eps_flags(mc);
  mc->add_option("--mc", opt.mc_input, "MC element JSON");

  auto* gauge = add("gauge-check", "Gauge transforms preserve Maurer-Cartan elements", dqtool::gauge_check);
  family_flags(gauge);
  eps_flags(gauge);

  auto* tw = add("twist-check", "Twisted structures, twisted morphisms and pushed MC elements", dqtool::twist_check);
  family_flags(tw);
  eps_flags(tw);
  tw->add_option("--arity-max", opt.arity_max, "Arity window");

  auto* lv = add("linfty-verify", "L-infinity defect sweep", dqtool::linfty_verify);
  family_flags(lv);
  lv->add_option("--arity-max", opt.arity_max, "Arity window");

  auto* ds = add("descend-check", "Contraction actions, descent and twisted compatibility", dqtool::descend_check);
  family_flags(ds);
  eps_flags(ds);
  ds->add_option("--arity-max", opt.arity_max, "Arity window");

  auto* ts = add("ts-normalize", "Thom-Sullivan normalization against normalized cochains", dqtool::ts_normalize);
  cover_flags(ts);
  ts->add_option("--family", opt.family, "Lie algebra for --algebra constant");
  ts->add_option("--forms-vars", opt.forms_vars, "Form variables for --algebra constant");
  ts->add_option("--weight-cap", opt.weight_cap, "Form weight cap for --algebra constant");
  ts->add_option("--n-max", opt.n_max, "Highest cosimplicial level");
  ts->add_option("--form-cap", opt.form_cap, "Total degree cap for forms on simplices");

  auto* cc = add("cech-check", "Ordered Cech complex and normalization", dqtool::cech_check);
  cover_flags(cc);
  cc->add_option("--n-max", opt.n_max, "Highest cosimplicial level");

  auto* dc = add("double-complex-check", "Exactness of the category Hochschild double complex rows",
                 dqtool::double_complex_check);
  cover_flags(dc);
  dc->add_option("--cap", opt.cap, "Hochschild degree cap");

  auto* cb = add("coordbundle-verify", "Witt action, Maurer-Cartan form and acyclicity homotopy",
                 dqtool::coordbundle_verify);
  cb->add_option("--gen-cap", opt.gen_cap, "Generators x0..xM");
  cb->add_option("--jet-cap", opt.jet_cap, "Series kept up to t^T");
  cb->add_option("--laurent-cap", opt.laurent_cap, "Exponents of x1 kept in [-L, L]");
  cb->add_option("--witt-max", opt.witt_max, "Witt generators delta_0..delta_k");
  cb->add_option("--homotopy-gen-cap", opt.homotopy_gen_cap, "Generators y0..yM of the acyclicity window");
  cb->add_option("--homotopy-weight-cap", opt.homotopy_weight_cap, "Weight cap of the acyclicity window");
  cb->add_option("--x-cap", opt.x_cap, "Degree cap in x of the acyclicity window");

  auto* sp = add("star-product", "First-order star product and its associativity obstruction", dqtool::star_product);
  sp->add_option("--dim", opt.dim, "Dimension d of Q[x1..xd]");
  sp->add_option("--pi", opt.pi, "Bivector, e.g. \"x*dx^dy\"");
  sp->add_option("--order", opt.star_order, "Work over Q[eps]/(eps^N), N <= 2");
  sp->add_option("--a", opt.a, "Left factor");
  sp->add_option("--b", opt.b, "Right factor");
  sp->add_option("--max-degree", opt.max_degree, "Total degree bound for monomial triples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [name, fn] = commands.at(chosen);
  dq::Json report;
  report["command"] = name;
  report["seed"] = opt.seed;
  try {
    bool pass = fn(opt, report);
    report["verdict"] = pass ? "pass" : "fail";
    if (emit(report, opt.json_out) != kPass) return kParse;
    return pass ? kPass : kFail;
  } catch (const dq::OverflowError& e) {
    report["verdict"] = "overflow";
    report["error"] = {{"kind", "overflow"}, {"cap", e.cap()}, {"message", e.what()}};
    std::cerr << "overflow (" << e.cap() << "): " << e.what() << "\n";
    emit(report, opt.json_out);
    return kOverflow;
  } catch (const dq::ParseError& e) {
    report["verdict"] = "error";
    report["error"] = {{"kind", "parse"}, {"message", e.what()}};
    std::cerr << "parse error: " << e.what() << "\n";
    emit(report, opt.json_out);
    return kParse;
  } catch (const dq::DomainError& e) {
    report["verdict"] = "error";
    report["error"] = {{"kind", "domain"}, {"message", e.what()}};
    std::cerr << "invalid input: " << e.what() << "\n";
    emit(report, opt.json_out);
    return kParse;
  } catch (const dq::Error& e) {
    report["verdict"] = "fail";
    report["error"] = {{"kind", "structural"}, {"message", e.what()}};
    std::cerr << "check failed: " << e.what() << "\n";
    emit(report, opt.json_out);
    return kFail;
  }
}
