#pragma once

#include "dq/json_io.hpp"

#include <cstdint>
#include <string>

namespace dqtool {

struct Options {
  std::uint64_t seed = 1;
  std::string json_out;
  std::string input;
  std::string mc_input;

  // algebra families
  std::string family = "sl2";
  unsigned forms_vars = 2;
  unsigned weight_cap = 2;
  unsigned odd = 0;
  unsigned order = 3;
  unsigned trials = 1;
  unsigned arity_max = 2;

  // polynomial modules
  unsigned dim = 2;
  std::string internal_degree_window = "-2..2";
  unsigned order_cap = 0;
  unsigned coeff_cap = 0;
  std::string pi = "dx^dy";
  std::string a = "x";
  std::string b = "y";
  unsigned max_degree = 4;
  unsigned star_order = 2;

  // cosimplicial and Čech
  std::string algebra = "rationals";
  unsigned cover_size = 2;
  unsigned n_max = 2;
  unsigned form_cap = 2;
  unsigned cap = 3;

  // coordinate bundle
  unsigned gen_cap = 12;
  unsigned jet_cap = 8;
  int laurent_cap = 24;
  unsigned witt_max = 6;
  unsigned homotopy_gen_cap = 4;
  unsigned homotopy_weight_cap = 4;
  unsigned x_cap = 2;
};

// Fills `report` and returns true iff every check passed.
using Command = bool (*)(const Options& opt, dq::Json& report);

bool hkr_check(const Options& opt, dq::Json& report);
bool mc_check(const Options& opt, dq::Json& report);
bool gauge_check(const Options& opt, dq::Json& report);
bool twist_check(const Options& opt, dq::Json& report);
bool linfty_verify(const Options& opt, dq::Json& report);
bool descend_check(const Options& opt, dq::Json& report);
bool ts_normalize(const Options& opt, dq::Json& report);
bool cech_check(const Options& opt, dq::Json& report);
bool double_complex_check(const Options& opt, dq::Json& report);
bool coordbundle_verify(const Options& opt, dq::Json& report);
bool star_product(const Options& opt, dq::Json& report);

}  // namespace dqtool
