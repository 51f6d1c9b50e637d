#include "cvcomp/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "cvcomp/complementarity.hpp"
#include "cvcomp/fock_state.hpp"
#include "cvcomp/gaussian_vm.hpp"

namespace cvcomp {

namespace {

std::vector<double> build_r_grid(const VerifyOptions& o) {
  if (!(o.r_step > 0.0) || !std::isfinite(o.r_step) || !(o.r_min >= 0.0) ||
      !(o.r_max >= o.r_min)) {
    throw std::invalid_argument("invalid r grid");
  }
  std::vector<double> grid;
  for (int j = 0;; ++j) {
    const double r = o.r_min + j * o.r_step;
    if (r > o.r_max + 1e-12) {
      break;
    }
    grid.push_back(r);
  }
  return grid;
}

std::vector<int> build_t_grid(const VerifyOptions& o) {
  if (o.t_min < 0 || o.t_max < o.t_min) {
    throw std::invalid_argument("invalid t grid");
  }
  std::vector<int> grid;
  for (int t = o.t_min; t <= o.t_max; ++t) {
    grid.push_back(t);
  }
  return grid;
}

CheckResult check_budget(const std::vector<double>& rs,
                         const std::vector<int>& ts) {
  double worst = 0.0;
  for (double r : rs) {
    for (int t : ts) {
      const ComplementarityBudget b = budget(r, t);
      worst = std::max(worst, std::abs(b.p_sq + b.c_i_sq - b.bound));
    }
  }
  return {"complementarity budget P^2 + C_I^2 = 2t/(t+1)", worst, 1e-10,
          worst <= 1e-10};
}

CheckResult check_xi_identity(const std::vector<double>& rs,
                              const std::vector<int>& ts, bool inject_fault) {
  double worst = 0.0;
  for (double r : rs) {
    if (r <= 0.0) {
      continue;  // degenerate by convention; covered by the budget check
    }
    for (int t : ts) {
      VmElements e = vm_elements_closed(r, t);
      if (inject_fault) {
        e.v13 *= 1.0 + 1e-3;
      }
      const XiEstimate xi = xi_from_vm(e.v11, e.v13);
      if (xi.degenerate) {
        continue;
      }
      worst = std::max(worst, std::abs(xi.value - std::tanh(r)));
    }
  }
  return {"squeezing identity (V11 - 1)/V13 = tanh r", worst, 1e-10,
          worst <= 1e-10};
}

CheckResult check_vm_routes() {
  const double canonical_r[] = {0.1, 0.5, 1.0, 2.0};
  const int canonical_t[] = {1, 2, 5, 10, 50};
  double worst = 0.0;
  for (double r : canonical_r) {
    for (int t : canonical_t) {
      const VmElements closed = vm_elements_closed(r, t);
      const VmElements series = vm_elements_series(r, t);
      const VarianceMatrix oracle =
          quadrature_vm_oracle(make_truncated_tmss(r, t));
      const double diffs[] = {
          std::abs(closed.v11 - series.v11), std::abs(closed.v13 - series.v13),
          std::abs(closed.v11 - oracle(0, 0)), std::abs(closed.v13 - oracle(0, 2)),
          std::abs(oracle(0, 0) - oracle(1, 1)),
          std::abs(oracle(0, 2) + oracle(1, 3))};
      for (double d : diffs) {
        worst = std::max(worst, d);
      }
    }
  }
  return {"vm elements: closed vs series vs matrix elements", worst, 1e-10,
          worst <= 1e-10};
}

CheckResult check_approx_decay() {
  const double r = std::atanh(0.5);
  const int ts[] = {2, 5, 10, 20, 50};
  double prev = 0.0;
  double max_increase = -1.0;
  bool first = true;
  for (int t : ts) {
    const ApproxSides sides = approx_sides(r, t);
    const double residual = std::abs(sides.lhs - sides.rhs);
    if (!first) {
      max_increase = std::max(max_increase, residual - prev);
    }
    prev = residual;
    first = false;
  }
  // Strict decay means every successive difference is negative.
  return {"purity approximation residual decays in t (xi = 0.5)", max_increase,
          0.0, max_increase < 0.0};
}

CheckResult check_reduction() {
  double worst = 0.0;
  for (int j = 0; j <= 50; ++j) {
    const double r = 0.1 * j;
    const VarianceMatrix reduced =
        apply_symplectic(vm_beamsplitter_state(r), local_antisqueeze(r));
    const VarianceMatrix target = vm_tmss(0.5 * r);
    worst = std::max(
        worst, (reduced.matrix() - target.matrix()).cwiseAbs().maxCoeff());
  }
  return {"beam-splitter reduction to half-squeezing TMSS", worst, 1e-10,
          worst <= 1e-10};
}

CheckResult check_spectra() {
  double worst = 0.0;
  auto compare = [&worst](const VarianceMatrix& v) {
    const SymplecticSpectrum s = symplectic_eigenvalues(v);
    const std::array<double, 2> e = symplectic_eigenvalues_via_eigensolver(v);
    worst = std::max(worst, std::abs(s.nu_minus - e[0]));
    worst = std::max(worst, std::abs(s.nu_plus - e[1]));
  };
  for (int j = 0; j <= 35; ++j) {
    compare(vm_tmss(0.1 * j));
  }
  for (int j = 0; j <= 50; ++j) {
    compare(vm_beamsplitter_state(0.1 * j));
  }
  return {"symplectic spectra: invariants vs eigensolver", worst, 1e-8,
          worst <= 1e-8};
}

}  // namespace

std::vector<CheckResult> run_identity_checks(const VerifyOptions& options) {
  const std::vector<double> rs = build_r_grid(options);
  const std::vector<int> ts = build_t_grid(options);

  std::vector<CheckResult> results;
  results.push_back(check_budget(rs, ts));
  results.push_back(check_xi_identity(rs, ts, options.inject_v13_fault));
  results.push_back(check_vm_routes());
  results.push_back(check_approx_decay());
  results.push_back(check_reduction());
  results.push_back(check_spectra());
  return results;
}

}  // namespace cvcomp
