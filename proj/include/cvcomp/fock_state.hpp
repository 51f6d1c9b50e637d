#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cvcomp/gaussian_vm.hpp"

namespace cvcomp {

enum class Subsystem { mode_a, mode_b };

/// Pure state of two d-level systems, stored as the d x d amplitude table
/// a(j,k) of |j>|k>. The constructor normalizes; a zero or non-finite table
/// is rejected.
class BipartitePureState {
 public:
  explicit BipartitePureState(Eigen::MatrixXcd amplitudes);

  int dim() const { return static_cast<int>(amp_.rows()); }
  const Eigen::MatrixXcd& amplitudes() const { return amp_; }
  std::complex<double> amp(int j, int k) const { return amp_(j, k); }

 private:
  Eigen::MatrixXcd amp_;
};

/// Two-mode squeezed vacuum truncated at Fock level t:
///   |psi> = N(xi) sum_{n=0}^{t} xi^n |n,n>,  xi = tanh r.
class TruncatedTmss {
 public:
  TruncatedTmss(double r, int t);

  double r() const { return r_; }
  int t() const { return t_; }
  int dim() const { return t_ + 1; }
  double xi() const;
  double norm_sq() const;

 private:
  double r_;
  int t_;
};

/// N^2(xi, t) = (1 - xi^2) / (1 - xi^{2t+2}); summed term by term for
/// xi > 0.99 where the closed form cancels badly.
double tmss_norm_sq(double xi, int t);

BipartitePureState make_truncated_tmss(double r, int t);

/// Validated density matrix: Hermitian within 1e-12, unit trace within
/// 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

/// Partial trace of |psi><psi| over the complementary mode.
DensityMatrix reduce(const BipartitePureState& state, Subsystem keep);

/// V^2 = 2 sum_{j != k} |rho_jk|^2.
double visibility_sq(const DensityMatrix& rho);

/// P^2 = 2 (sum_j rho_jj^2 - 1/d).
double predictability_sq(const DensityMatrix& rho);

/// C_I^2 = 2 (1 - Tr rho^2).
double iconcurrence_sq(const DensityMatrix& rho);

/// Wootters concurrence of a pure two-qubit state, 2 |a00 a11 - a01 a10|.
/// Requires d = 2.
double concurrence_2qubit(const BipartitePureState& state);

struct TrialityBreakdown {
  double v_sq;
  double p_sq;
  double c_sq;
  double residual;  // v_sq + p_sq + c_sq - 1
};

/// Evaluates V, P (single-mode sigma operators on the full state) and the
/// 2-qubit concurrence, plus the deviation of V^2 + P^2 + C^2 from 1.
/// Requires d = 2.
TrialityBreakdown triality_check(const BipartitePureState& state,
                                 Subsystem which);

/// Traceless Hermitian operator basis for a d-level system: the d(d-1)/2
/// symmetric u_jk = |k><j| + |j><k|, the d(d-1)/2 antisymmetric
/// v_jk = i(|k><j| - |j><k|), and the d-1 diagonal
/// w_l = sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l |l><l|).
struct HioeEberlyBasis {
  explicit HioeEberlyBasis(int d);

  int d;
  std::vector<Eigen::MatrixXcd> u;
  std::vector<Eigen::MatrixXcd> v;
  std::vector<Eigen::MatrixXcd> w;

  std::size_t size() const { return u.size() + v.size() + w.size(); }
};

/// V^2 recomputed from basis-operator expectations,
/// sum_{j<k} (<u_jk>^2 + <v_jk>^2).
double visibility_sq_via_basis(const DensityMatrix& rho,
                               const HioeEberlyBasis& basis);

/// P^2 recomputed from the diagonal basis operators, sum_l <w_l>^2.
double predictability_sq_via_basis(const DensityMatrix& rho,
                                   const HioeEberlyBasis& basis);

/// <psi| op_a (x) op_b |psi> for per-mode operators given as d x d (or
/// larger) matrices acting on the respective mode.
std::complex<double> expectation(const BipartitePureState& state,
                                 const Eigen::MatrixXcd& op_a,
                                 const Eigen::MatrixXcd& op_b);

/// Single-mode expectation, identity implied on the other mode.
std::complex<double> expectation(const BipartitePureState& state,
                                 const Eigen::MatrixXcd& op,
                                 Subsystem which);

/// Quadrature variance matrix of an arbitrary truncated two-mode pure state,
/// computed from ladder-operator matrix elements. The state is embedded in
/// one extra Fock level so the raising operator at the truncation edge is
/// represented exactly; with x = (a + a^dag)/sqrt(2) and
/// p = (a - a^dag)/(i sqrt(2)), V_jk = <{q_j, q_k}> - 2 <q_j><q_k> and the
/// vacuum gives the identity.
VarianceMatrix quadrature_vm_oracle(const BipartitePureState& state);

}  // namespace cvcomp
