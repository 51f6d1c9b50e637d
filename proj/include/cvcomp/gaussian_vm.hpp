#pragma once

#include <array>

#include <Eigen/Dense>

namespace cvcomp {

/// Symmetry tolerance enforced by the VarianceMatrix constructor.
inline constexpr double kSymmetryTol = 1e-12;

/// Tolerance on S^T Omega S = Omega enforced by SymplecticTransform.
inline constexpr double kSymplecticTol = 1e-10;

/// A state is accepted as physical when nu_minus >= 1 - kPhysicalityTol.
inline constexpr double kPhysicalityTol = 1e-10;

/// 4x4 quadrature variance matrix in the ordering (x_a, p_a, x_b, p_b),
/// convention: vacuum = identity. Construction rejects asymmetric input.
class VarianceMatrix {
 public:
  explicit VarianceMatrix(const Eigen::Matrix4d& m);

  static VarianceMatrix vacuum();

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int j, int k) const { return m_(j, k); }

  Eigen::Matrix2d block_a() const { return m_.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d block_b() const { return m_.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d block_c() const { return m_.topRightCorner<2, 2>(); }

 private:
  Eigen::Matrix4d m_;
};

/// Linear symplectic transformation; the constructor verifies
/// S^T Omega S = Omega to kSymplecticTol and throws otherwise.
class SymplecticTransform {
 public:
  explicit SymplecticTransform(const Eigen::Matrix4d& s);

  static SymplecticTransform identity();

  const Eigen::Matrix4d& matrix() const { return s_; }

 private:
  Eigen::Matrix4d s_;
};

/// Omega = direct sum of [[0, 1], [-1, 0]] per mode.
Eigen::Matrix4d symplectic_form();

struct SymplecticSpectrum {
  double nu_plus;
  double nu_minus;
  double delta;  // det A + det B + 2 det C
  double det_v;
};

/// det A + det B + 2 det C, invariant under symplectic transformations.
double delta_invariant(const VarianceMatrix& v);

/// nu_plus/nu_minus from the invariants:
///   nu_plus^2  = (Delta + sqrt(Delta^2 - 4 det V)) / 2
///   nu_minus^2 = 2 det V / (Delta + sqrt(Delta^2 - 4 det V))
/// Throws std::domain_error for det V < 0 or a discriminant negative beyond
/// the degeneracy clamp band.
SymplecticSpectrum symplectic_eigenvalues(const VarianceMatrix& v);

/// Independent route: |eigenvalues| of Omega V via a general eigensolver,
/// returned as {nu_minus, nu_plus}.
std::array<double, 2> symplectic_eigenvalues_via_eigensolver(
    const VarianceMatrix& v);

/// Smallest symplectic eigenvalue of the partial transpose
/// (p_b -> -p_b); < 1 certifies entanglement of the Gaussian state.
double ppt_smallest_eigenvalue(const VarianceMatrix& v);

/// nu_minus >= 1 - kPhysicalityTol; false (not an exception) for
/// non-physical input.
bool is_physical(const VarianceMatrix& v);

/// 1 / sqrt(det V). Throws std::domain_error when det V <= 0.
double purity(const VarianceMatrix& v);

/// S V S^T.
VarianceMatrix apply_symplectic(const VarianceMatrix& v,
                                const SymplecticTransform& s);

/// Two-mode squeezed vacuum: diagonal cosh(2r), off-diagonal
/// sinh(2r) sigma_z coupling block.
VarianceMatrix vm_tmss(double r);

/// Single-mode squeezed vacuum split on a balanced beam splitter:
/// A = diag(e^r cosh r, e^{-r} cosh r), C = diag(e^r sinh r, -e^{-r} sinh r).
VarianceMatrix vm_beamsplitter_state(double r);

/// Local squeezing correction diag(e^{-r/2}, e^{r/2}) on each mode; undoing
/// it maps the beam-splitter state onto a TMSS of half the squeezing.
SymplecticTransform local_antisqueeze(double r);

}  // namespace cvcomp
