#include "cvcomp/gaussian_vm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cvcomp {

namespace {

// Compensated (double-double) arithmetic for the symplectic invariants.
// Delta^2 - 4 det V vanishes identically for pure states; evaluated naively
// it picks up rounding noise of order eps * ||V||^4 which the square root
// then amplifies to sqrt(eps)-sized spurious splittings of nu+/nu-.
struct Dd {
  double hi;
  double lo;
};

Dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

Dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

Dd dd_add(Dd x, Dd y) {
  Dd s = two_sum(x.hi, y.hi);
  return quick_two_sum(s.hi, s.lo + x.lo + y.lo);
}

Dd dd_neg(Dd x) { return {-x.hi, -x.lo}; }

Dd dd_sub(Dd x, Dd y) { return dd_add(x, dd_neg(y)); }

Dd dd_mul(Dd x, Dd y) {
  Dd p = two_prod(x.hi, y.hi);
  return quick_two_sum(p.hi, p.lo + x.hi * y.lo + x.lo * y.hi);
}

Dd dd_scale(Dd x, double c) {
  Dd p = two_prod(x.hi, c);
  return quick_two_sum(p.hi, p.lo + x.lo * c);
}

double dd_value(Dd x) { return x.hi + x.lo; }

// a d - b c without cancellation loss.
Dd det2(double a, double b, double c, double d) {
  return dd_sub(two_prod(a, d), two_prod(b, c));
}

// Laplace expansion along the first two rows with compensated 2x2 minors.
Dd det4(const Eigen::Matrix4d& m) {
  auto minor_top = [&](int j, int k) {
    return det2(m(0, j), m(0, k), m(1, j), m(1, k));
  };
  auto minor_bottom = [&](int j, int k) {
    return det2(m(2, j), m(2, k), m(3, j), m(3, k));
  };
  Dd acc = dd_mul(minor_top(0, 1), minor_bottom(2, 3));
  acc = dd_sub(acc, dd_mul(minor_top(0, 2), minor_bottom(1, 3)));
  acc = dd_add(acc, dd_mul(minor_top(0, 3), minor_bottom(1, 2)));
  acc = dd_add(acc, dd_mul(minor_top(1, 2), minor_bottom(0, 3)));
  acc = dd_sub(acc, dd_mul(minor_top(1, 3), minor_bottom(0, 2)));
  acc = dd_add(acc, dd_mul(minor_top(2, 3), minor_bottom(0, 1)));
  return acc;
}

Dd delta_dd(const Eigen::Matrix4d& m) {
  const Dd det_a = det2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  const Dd det_b = det2(m(2, 2), m(2, 3), m(3, 2), m(3, 3));
  const Dd det_c = det2(m(0, 2), m(0, 3), m(1, 2), m(1, 3));
  return dd_add(dd_add(det_a, det_b), dd_scale(det_c, 2.0));
}

}  // namespace

VarianceMatrix::VarianceMatrix(const Eigen::Matrix4d& m) : m_(m) {
  if (!m_.allFinite()) {
    throw std::invalid_argument("variance matrix has non-finite entries");
  }
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw std::invalid_argument("variance matrix is not symmetric");
  }
}

VarianceMatrix VarianceMatrix::vacuum() {
  return VarianceMatrix(Eigen::Matrix4d::Identity());
}

SymplecticTransform::SymplecticTransform(const Eigen::Matrix4d& s) : s_(s) {
  if (!s_.allFinite()) {
    throw std::invalid_argument("symplectic matrix has non-finite entries");
  }
  const Eigen::Matrix4d omega = symplectic_form();
  const double defect =
      (s_.transpose() * omega * s_ - omega).cwiseAbs().maxCoeff();
  if (defect > kSymplecticTol) {
    throw std::invalid_argument("matrix does not preserve the symplectic form");
  }
}

SymplecticTransform SymplecticTransform::identity() {
  return SymplecticTransform(Eigen::Matrix4d::Identity());
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

double delta_invariant(const VarianceMatrix& v) {
  return dd_value(delta_dd(v.matrix()));
}

SymplecticSpectrum symplectic_eigenvalues(const VarianceMatrix& v) {
  const Eigen::Matrix4d& m = v.matrix();
  const Dd delta = delta_dd(m);
  const Dd det_v = det4(m);
  if (dd_value(det_v) < 0.0) {
    throw std::domain_error("non-physical variance matrix: det V < 0");
  }
  const double delta_d = dd_value(delta);
  double disc = dd_value(dd_sub(dd_mul(delta, delta), dd_scale(det_v, 4.0)));
  if (disc < 0.0) {
    const double band = 1e-9 * std::max(1.0, delta_d * delta_d);
    if (disc < -band) {
      throw std::domain_error(
          "non-physical variance matrix: Delta^2 < 4 det V");
    }
    disc = 0.0;  // nu+ = nu- is exact for pure states; treat as degenerate
  }
  const double root = std::sqrt(disc);
  const double denom = delta_d + root;
  if (denom <= 0.0) {
    throw std::domain_error("non-physical variance matrix: Delta + root <= 0");
  }
  SymplecticSpectrum out;
  out.delta = delta_d;
  out.det_v = dd_value(det_v);
  out.nu_plus = std::sqrt(0.5 * denom);
  // Rationalized form of (Delta - root)/2: immune to cancellation when the
  // spectrum is strongly split (partial transposes at large r).
  out.nu_minus = std::sqrt(std::max(0.0, 2.0 * out.det_v / denom));
  return out;
}

std::array<double, 2> symplectic_eigenvalues_via_eigensolver(
    const VarianceMatrix& v) {
  const Eigen::Matrix4d prod = symplectic_form() * v.matrix();
  const Eigen::EigenSolver<Eigen::Matrix4d> solver(prod);
  std::array<double, 4> mags;
  for (int j = 0; j < 4; ++j) {
    mags[j] = std::abs(solver.eigenvalues()[j]);
  }
  std::sort(mags.begin(), mags.end());
  // The spectrum of Omega V is (+-i nu_minus, +-i nu_plus); average the
  // conjugate pairs.
  return {0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])};
}

double ppt_smallest_eigenvalue(const VarianceMatrix& v) {
  Eigen::Matrix4d flipped = v.matrix();
  // Partial transposition sends p_b -> -p_b.
  for (int j = 0; j < 4; ++j) {
    flipped(j, 3) = -flipped(j, 3);
    flipped(3, j) = -flipped(3, j);
  }
  return symplectic_eigenvalues(VarianceMatrix(flipped)).nu_minus;
}

bool is_physical(const VarianceMatrix& v) {
  try {
    return symplectic_eigenvalues(v).nu_minus >= 1.0 - kPhysicalityTol;
  } catch (const std::domain_error&) {
    return false;
  }
}

double purity(const VarianceMatrix& v) {
  const double det = dd_value(det4(v.matrix()));
  if (det <= 0.0) {
    throw std::domain_error("purity undefined: det V <= 0");
  }
  return 1.0 / std::sqrt(det);
}

VarianceMatrix apply_symplectic(const VarianceMatrix& v,
                                const SymplecticTransform& s) {
  Eigen::Matrix4d out = s.matrix() * v.matrix() * s.matrix().transpose();
  out = 0.5 * (out + out.transpose()).eval();  // exact result is symmetric
  return VarianceMatrix(out);
}

VarianceMatrix vm_tmss(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("squeezing parameter r must be >= 0");
  }
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Eigen::Matrix4d m = c * Eigen::Matrix4d::Identity();
  m(0, 2) = s;
  m(2, 0) = s;
  m(1, 3) = -s;
  m(3, 1) = -s;
  return VarianceMatrix(m);
}

VarianceMatrix vm_beamsplitter_state(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("squeezing parameter r must be >= 0");
  }
  const double ep = std::exp(r);
  const double em = 1.0 / ep;
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = ep * ch;
  m(1, 1) = em * ch;
  m(2, 2) = ep * ch;
  m(3, 3) = em * ch;
  m(0, 2) = ep * sh;
  m(2, 0) = ep * sh;
  m(1, 3) = -em * sh;
  m(3, 1) = -em * sh;
  return VarianceMatrix(m);
}

SymplecticTransform local_antisqueeze(double r) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("squeezing parameter must be finite");
  }
  const double s1 = std::exp(-0.5 * r);
  const double s2 = 1.0 / s1;  // keeps det of each mode block exactly 1
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = s1;
  m(1, 1) = s2;
  m(2, 2) = s1;
  m(3, 3) = s2;
  return SymplecticTransform(m);
}

}  // namespace cvcomp
