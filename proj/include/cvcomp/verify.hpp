#pragma once

#include <string>
#include <vector>

namespace cvcomp {

struct VerifyOptions {
  double r_min = 0.0;
  double r_max = 3.0;
  double r_step = 0.1;
  int t_min = 1;
  int t_max = 50;
  // Negative control: corrupts V13 by a factor (1 + 1e-3) inside the
  // xi-identity check, which must then fail.
  bool inject_v13_fault = false;
};

struct CheckResult {
  std::string name;
  double max_residual;
  double tolerance;
  bool pass;
};

/// Cross-route consistency suite: complementarity budget, xi identity,
/// closed/series/matrix-element VM agreement, purity/VM approximation decay,
/// beam-splitter reduction, symplectic spectra formula vs eigensolver.
/// Throws std::invalid_argument for an ill-formed grid.
std::vector<CheckResult> run_identity_checks(const VerifyOptions& options);

}  // namespace cvcomp
