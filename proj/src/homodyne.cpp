#include "cvcomp/homodyne.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cvcomp {

namespace {

// Fixed-consumption normal generator: every pair of variates costs exactly
// two 53-bit uniforms, so a given seed reproduces the same stream on any
// platform (std::normal_distribution does not promise that).
class BoxMuller {
 public:
  explicit BoxMuller(std::uint64_t seed) : rng_(seed) {}

  void pair(double& z0, double& z1) {
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;  // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    z0 = radius * std::cos(angle);
    z1 = radius * std::sin(angle);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

SampleBatch sample(const VarianceMatrix& v, int shots, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("shots must be >= 1");
  }
  if (!is_physical(v)) {
    throw std::invalid_argument("refusing to sample a non-physical state");
  }
  // Sampling covariance is V/2: the vacuum VM is the identity, so each
  // vacuum quadrature has variance 1/2.
  const Eigen::Matrix4d cov = 0.5 * v.matrix();
  const Eigen::LLT<Eigen::Matrix4d> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance is not positive definite");
  }
  const Eigen::Matrix4d l = llt.matrixL();

  SampleBatch batch;
  batch.seed = seed;
  batch.draws.resize(shots);
  BoxMuller gen(seed);
  for (int n = 0; n < shots; ++n) {
    Eigen::Vector4d z;
    gen.pair(z[0], z[1]);
    gen.pair(z[2], z[3]);
    batch.draws[n] = l * z;
  }
  return batch;
}

VmEstimate estimate_vm(const SampleBatch& batch) {
  const int n = batch.shots();
  if (n < 2) {
    throw std::invalid_argument("variance estimation needs at least 2 shots");
  }
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d second = Eigen::Matrix4d::Zero();
  for (const Eigen::Vector4d& x : batch.draws) {
    mean += x;
    second += x * x.transpose();
  }
  mean /= n;
  second /= n;

  VmEstimate out;
  out.shots = n;
  Eigen::Matrix4d v_hat = 2.0 * (second - mean * mean.transpose());
  out.v_hat = 0.5 * (v_hat + v_hat.transpose()).eval();
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      const double var = out.v_hat(j, j) * out.v_hat(k, k) +
                         out.v_hat(j, k) * out.v_hat(j, k);
      out.standard_errors(j, k) = std::sqrt(std::max(0.0, var) / n);
    }
  }
  return out;
}

ComplementarityEstimate estimate_complementarity(const VmEstimate& estimate) {
  ComplementarityEstimate out;
  double v11 = estimate.v_hat(0, 0);
  out.clamped = v11 < 1.0;
  if (out.clamped) {
    v11 = 1.0;  // below the vacuum floor only through sampling noise
  }
  out.c_i_sq = 2.0 * (1.0 - 1.0 / v11);
  out.p_context = 2.0 - out.c_i_sq;
  out.ci_halfwidth = 2.0 / (v11 * v11) * estimate.standard_errors(0, 0);
  return out;
}

}  // namespace cvcomp
