#pragma once

#include <string>
#include <string_view>

#include "cmkit/errors.hpp"

namespace cmkit {

/// Numerical knobs shared by every evaluator. Immutable once built; pass by
/// const reference.
struct EvalConfig {
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  /// Terms summed directly before the Euler-Maclaurin tail.
  int em_shift_N = 16;
  /// Number of B_{2n} correction terms in the Euler-Maclaurin tail.
  int em_terms = 8;
  /// Subinterval budget for adaptive Gauss-Kronrod quadrature.
  int quad_nodes = 4000;
  /// Mills ratio: power series for x <= series_switch_x, asymptotic series for
  /// x >= asym_switch_x, quadrature in between.
  double series_switch_x = 1.0;
  double asym_switch_x = 8.0;

  void validate() const {
    if (!(rel_tol > 0.0)) throw precondition_error("EvalConfig: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw precondition_error("EvalConfig: abs_tol must be >= 0");
    if (em_shift_N < 1) throw precondition_error("EvalConfig: em_shift_N must be >= 1");
    if (em_terms < 0) throw precondition_error("EvalConfig: em_terms must be >= 0");
    if (quad_nodes < 1) throw precondition_error("EvalConfig: quad_nodes must be >= 1");
    if (!(series_switch_x > 0.0) || !(series_switch_x < asym_switch_x))
      throw precondition_error("EvalConfig: need 0 < series_switch_x < asym_switch_x");
  }

  static const EvalConfig& defaults() {
    static const EvalConfig cfg{};
    return cfg;
  }

  /// Named tolerance profiles: "default", "fast", "strict".
  static EvalConfig profile(std::string_view name) {
    EvalConfig cfg;
    if (name.empty() || name == "default") return cfg;
    if (name == "fast") {
      cfg.rel_tol = 1e-10;
      cfg.em_terms = 6;
      cfg.quad_nodes = 1000;
      return cfg;
    }
    if (name == "strict") {
      cfg.rel_tol = 5e-15;
      cfg.em_shift_N = 24;
      cfg.em_terms = 12;
      cfg.quad_nodes = 10000;
      return cfg;
    }
    throw precondition_error("unknown tolerance profile '" + std::string(name) +
                             "' (expected fast or strict)");
  }
};

}  // namespace cmkit
