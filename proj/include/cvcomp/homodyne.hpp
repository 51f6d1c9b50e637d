#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvcomp/gaussian_vm.hpp"

namespace cvcomp {

/// Generator + transform used by sample(); recorded in tool output so runs
/// can be reproduced bit for bit.
inline constexpr const char* kSamplerAlgorithm = "mt19937_64+box-muller";

/// One homodyne data set: joint quadrature draws (x_a, p_a, x_b, p_b).
/// Regenerating with the same VM, shots and seed is bit-identical.
struct SampleBatch {
  std::uint64_t seed;
  std::vector<Eigen::Vector4d> draws;

  int shots() const { return static_cast<int>(draws.size()); }
};

/// Draws `shots` samples from the zero-mean Gaussian with covariance V/2
/// (so the vacuum gives per-quadrature sample variance 1/2). Throws for
/// shots < 1 or a non-physical variance matrix.
SampleBatch sample(const VarianceMatrix& v, int shots, std::uint64_t seed);

struct VmEstimate {
  Eigen::Matrix4d v_hat;
  Eigen::Matrix4d standard_errors;  // SE(v_hat_jk)
  int shots;
};

/// Plug-in estimator v_hat = 2 [ (1/n) sum x x^T - xbar xbar^T ] with
/// Gaussian standard errors SE_jk = sqrt((v_jj v_kk + v_jk^2)/n).
/// Requires at least 2 shots.
VmEstimate estimate_vm(const SampleBatch& batch);

struct ComplementarityEstimate {
  double c_i_sq;         // 2 (1 - 1/v11)
  double p_context;      // 2 - c_i_sq
  double ci_halfwidth;   // 1-sigma half-width propagated from SE(v11)
  bool clamped;          // v11 < 1 was clamped to the vacuum floor
};

/// C_I^2 and its complement estimated from v_hat_11, with the delta-method
/// error bar (2/v11^2) SE(v11).
ComplementarityEstimate estimate_complementarity(const VmEstimate& estimate);

}  // namespace cvcomp
