#pragma once

#include <vector>

namespace cvcomp {

// Closed forms for the truncated two-mode squeezed vacuum, xi = tanh r.
// All of them switch to explicit finite sums for xi > 0.99, where the
// rational expressions in xi^{2t+2} lose precision to cancellation.

/// P^2(r, t) = 2 (Tr rho^2 - 1/(t+1)) of the reduced state.
double predictability_closed(double r, int t);

/// C_I^2(r, t) = 2 (1 - Tr rho^2) of the reduced state.
double iconcurrence_closed(double r, int t);

struct ComplementarityBudget {
  double p_sq;
  double c_i_sq;
  double bound;  // 2t/(t+1)
};

/// P^2, C_I^2 and the dimensional bound they saturate for pure states.
ComplementarityBudget budget(double r, int t);

/// |<tmss(r, t) | tmss(r)>|^2 = 1 - xi^{2t+2}.
double fidelity_to_tmss(double r, int t);

struct VmElements {
  double v11;  // = V22 = V33 = V44
  double v13;  // = -V24
};

/// Variance-matrix elements of the truncated state via the closed rational
/// forms in xi, t.
VmElements vm_elements_closed(double r, int t);

/// Same elements from the defining series,
///   V11 = N^2 sum_{n=0}^{t} xi^{2n} (2n+1),
///   V13 = 2 N^2 sum_{n=0}^{t-1} xi^{2n+1} (n+1).
VmElements vm_elements_series(double r, int t);

struct XiEstimate {
  double value;
  bool degenerate;  // v13 ~ 0 (r = 0): value fixed to 0 by convention
};

/// Squeezing parameter recovered from VM elements, xi = (V11 - 1)/V13.
XiEstimate xi_from_vm(double v11, double v13);

/// |sqrt(V11^2 - 1) - V13|, the truncation witness that vanishes as t grows.
double purity_discrepancy(double r, int t);

struct ApproxSides {
  double lhs;  // Tr rho^2 of the reduced truncated state
  double rhs;  // (V13^2 - (V11-1)^2) / (V13^2 + (V11-1)^2) -> (1-xi^2)/(1+xi^2)
};

/// Both sides of the purity/VM approximate identity; they agree in the
/// t -> infinity limit.
ApproxSides approx_sides(double r, int t);

/// C_I^2 estimated from a (symmetric-form) variance matrix, 2 (1 - 1/V11).
/// Requires V11 >= 1.
double iconcurrence_from_vm(double v11);

enum class SweepQuantity {
  predictability,
  fidelity,
  iconcurrence,
  vm_discrepancy,
};

struct SweepGrid {
  std::vector<double> r_values;
  std::vector<int> t_values;
  SweepQuantity quantity;
};

struct SweepRow {
  double r;
  int t;
  double xi;
  double value;
  double value2;    // vm_discrepancy: sqrt(V11^2 - 1) next to value = V13
  bool has_value2;
};

/// Evaluates the requested quantity on the full r x t grid, r-major.
/// Throws std::invalid_argument for an empty or non-increasing grid.
std::vector<SweepRow> generate_sweep(const SweepGrid& grid);

}  // namespace cvcomp
