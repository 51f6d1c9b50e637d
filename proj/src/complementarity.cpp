#include "cvcomp/complementarity.hpp"

#include <cmath>
#include <stdexcept>

namespace cvcomp {

namespace {

// Above this xi the rational closed forms in xi^{2t+2} cancel badly and the
// explicit finite sums take over.
constexpr double kSeriesSwitchXi = 0.99;

void check_params(double r, int t) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("squeezing parameter r must be >= 0");
  }
  if (t < 0) {
    throw std::invalid_argument("Fock cutoff t must be >= 0");
  }
}

double geometric_sum(double q, int t) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n <= t; ++n) {
    term *= q;
    sum += term;
  }
  return sum;
}

// Tr rho^2 of the reduced truncated state: N^4 sum_n xi^{4n}.
double reduced_purity(double xi, int t) {
  if (xi == 0.0) {
    return 1.0;
  }
  const double q = xi * xi;
  if (xi > kSeriesSwitchXi) {
    const double s2 = geometric_sum(q, t);
    const double s4 = geometric_sum(q * q, t);
    return s4 / (s2 * s2);
  }
  const double n2 = (1.0 - q) / (1.0 - std::pow(q, t + 1));
  return n2 * n2 * (1.0 - std::pow(q * q, t + 1)) / (1.0 - q * q);
}

VmElements vm_elements_closed_form(double xi, int t) {
  const double q = xi * xi;
  const double qt = std::pow(q, t);    // xi^{2t}
  const double qt1 = qt * q;           // xi^{2t+2}
  const double denom = (1.0 - q) * (1.0 - qt1);
  VmElements out;
  out.v11 =
      (1.0 + q - (3.0 + 2.0 * t) * qt1 + (1.0 + 2.0 * t) * qt1 * q) / denom;
  out.v13 = 2.0 * xi * (1.0 - (t + 1.0) * qt + t * qt1) / denom;
  return out;
}

VmElements vm_elements_summed(double xi, int t) {
  double s11 = 0.0;
  double s13 = 0.0;
  double pw = 1.0;  // xi^{2n}
  for (int n = 0; n <= t; ++n) {
    s11 += pw * (2.0 * n + 1.0);
    if (n < t) {
      s13 += pw * xi * (n + 1.0);
    }
    pw *= xi * xi;
  }
  const double n2 = 1.0 / geometric_sum(xi * xi, t);
  return {n2 * s11, 2.0 * n2 * s13};
}

}  // namespace

double predictability_closed(double r, int t) {
  check_params(r, t);
  return 2.0 * (reduced_purity(std::tanh(r), t) - 1.0 / (t + 1.0));
}

double iconcurrence_closed(double r, int t) {
  check_params(r, t);
  return 2.0 * (1.0 - reduced_purity(std::tanh(r), t));
}

ComplementarityBudget budget(double r, int t) {
  ComplementarityBudget out;
  out.p_sq = predictability_closed(r, t);
  out.c_i_sq = iconcurrence_closed(r, t);
  out.bound = 2.0 * t / (t + 1.0);
  return out;
}

double fidelity_to_tmss(double r, int t) {
  check_params(r, t);
  const double xi = std::tanh(r);
  if (xi == 0.0) {
    return 1.0;
  }
  // 1 - xi^{2t+2}, evaluated as -expm1 to keep precision when xi -> 1.
  return -std::expm1((2.0 * t + 2.0) * std::log(xi));
}

VmElements vm_elements_closed(double r, int t) {
  check_params(r, t);
  const double xi = std::tanh(r);
  if (xi == 0.0) {
    return {1.0, 0.0};
  }
  if (xi > kSeriesSwitchXi) {
    return vm_elements_summed(xi, t);
  }
  return vm_elements_closed_form(xi, t);
}

VmElements vm_elements_series(double r, int t) {
  check_params(r, t);
  const double xi = std::tanh(r);
  if (xi == 0.0) {
    return {1.0, 0.0};
  }
  return vm_elements_summed(xi, t);
}

XiEstimate xi_from_vm(double v11, double v13) {
  if (std::abs(v13) <= 1e-14) {
    return {0.0, true};  // no cross term: unsqueezed by convention
  }
  return {(v11 - 1.0) / v13, false};
}

double purity_discrepancy(double r, int t) {
  const VmElements e = vm_elements_closed(r, t);
  const double excess = std::sqrt((e.v11 - 1.0) * (e.v11 + 1.0));
  return std::abs(excess - e.v13);
}

ApproxSides approx_sides(double r, int t) {
  check_params(r, t);
  const VmElements e = vm_elements_closed(r, t);
  ApproxSides out;
  out.lhs = reduced_purity(std::tanh(r), t);
  const double d = e.v11 - 1.0;
  const double num = e.v13 * e.v13 - d * d;
  const double den = e.v13 * e.v13 + d * d;
  // r = 0 gives 0/0; the limit of the ratio is 1, matching lhs.
  out.rhs = den == 0.0 ? 1.0 : num / den;
  return out;
}

double iconcurrence_from_vm(double v11) {
  if (!(v11 >= 1.0)) {
    throw std::invalid_argument("V11 must be >= 1");
  }
  return 2.0 * (1.0 - 1.0 / v11);
}

std::vector<SweepRow> generate_sweep(const SweepGrid& grid) {
  if (grid.r_values.empty() || grid.t_values.empty()) {
    throw std::invalid_argument("sweep grid is empty");
  }
  for (std::size_t j = 0; j < grid.r_values.size(); ++j) {
    const double r = grid.r_values[j];
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("sweep grid has an invalid r value");
    }
    if (j > 0 && r <= grid.r_values[j - 1]) {
      throw std::invalid_argument("sweep r values must be strictly increasing");
    }
  }
  for (std::size_t j = 0; j < grid.t_values.size(); ++j) {
    if (grid.t_values[j] < 0) {
      throw std::invalid_argument("sweep grid has an invalid t value");
    }
    if (j > 0 && grid.t_values[j] <= grid.t_values[j - 1]) {
      throw std::invalid_argument("sweep t values must be strictly increasing");
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(grid.r_values.size() * grid.t_values.size());
  for (double r : grid.r_values) {
    for (int t : grid.t_values) {
      SweepRow row;
      row.r = r;
      row.t = t;
      row.xi = std::tanh(r);
      row.value2 = 0.0;
      row.has_value2 = false;
      switch (grid.quantity) {
        case SweepQuantity::predictability:
          row.value = predictability_closed(r, t);
          break;
        case SweepQuantity::fidelity:
          row.value = fidelity_to_tmss(r, t);
          break;
        case SweepQuantity::iconcurrence:
          row.value = iconcurrence_closed(r, t);
          break;
        case SweepQuantity::vm_discrepancy: {
          const VmElements e = vm_elements_closed(r, t);
          row.value = e.v13;
          row.value2 = std::sqrt((e.v11 - 1.0) * (e.v11 + 1.0));
          row.has_value2 = true;
          break;
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace cvcomp
