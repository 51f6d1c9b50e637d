#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cvcomp/complementarity.hpp"
#include "cvcomp/gaussian_vm.hpp"
#include "cvcomp/homodyne.hpp"

using namespace cvcomp;

namespace {

double max_abs_error(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("vacuum sampling pins the variance convention") {
  const auto batch = sample(VarianceMatrix::vacuum(), 200000, 20260819);
  REQUIRE(batch.shots() == 200000);

  // Raw per-quadrature sample variance sits at 1/2, not 1: the estimator's
  // factor of two is what restores the vacuum VM to the identity.
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Vector4d second = Eigen::Vector4d::Zero();
  for (const auto& x : batch.draws) {
    mean += x;
    second += x.cwiseProduct(x);
  }
  mean /= batch.shots();
  second /= batch.shots();
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(mean(j)) < 0.02);
    CHECK(std::abs(second(j) - mean(j) * mean(j) - 0.5) < 0.01);
  }

  const VmEstimate est = estimate_vm(batch);
  CHECK(est.shots == 200000);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(est.v_hat(j, j) - 1.0) < 0.02);
    // SE_jj = v_jj sqrt(2/n) for a Gaussian.
    const double expected_se = est.v_hat(j, j) * std::sqrt(2.0 / 200000.0);
    CHECK(std::abs(est.standard_errors(j, j) - expected_se) <
          0.2 * expected_se);
  }
}

TEST_CASE("same seed regenerates the batch bit for bit") {
  const VarianceMatrix v = vm_tmss(0.8);
  const auto a = sample(v, 1000, 42);
  const auto b = sample(v, 1000, 42);
  REQUIRE(a.shots() == b.shots());
  for (int n = 0; n < a.shots(); ++n) {
    CHECK(a.draws[n] == b.draws[n]);
  }

  const auto c = sample(v, 1000, 43);
  bool any_differ = false;
  for (int n = 0; n < c.shots(); ++n) {
    any_differ = any_differ || a.draws[n] != c.draws[n];
  }
  CHECK(any_differ);
}

TEST_CASE("sampling rejects bad inputs") {
  CHECK_THROWS_AS(sample(VarianceMatrix::vacuum(), 0, 1),
                  std::invalid_argument);
  const VarianceMatrix below_vacuum(0.5 * Eigen::Matrix4d::Identity());
  CHECK_THROWS_AS(sample(below_vacuum, 100, 1), std::invalid_argument);

  SampleBatch tiny;
  tiny.seed = 1;
  tiny.draws = {Eigen::Vector4d::Zero()};
  CHECK_THROWS_AS(estimate_vm(tiny), std::invalid_argument);
}

TEST_CASE("estimator recovers a two-mode squeezed state") {
  const VarianceMatrix v = vm_tmss(1.0);
  const VmEstimate est = estimate_vm(sample(v, 100000, 20260819));

  CHECK(max_abs_error(est.v_hat, v.matrix()) < 0.1);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      CHECK(est.standard_errors(j, k) > 0.0);
      CHECK(std::abs(est.v_hat(j, k) - v(j, k)) <
            4.0 * est.standard_errors(j, k));
    }
  }

  // Correlation signs of the squeezed state survive estimation.
  CHECK(est.v_hat(0, 2) > 1.0);
  CHECK(est.v_hat(1, 3) < -1.0);
  // Symmetry is exact by construction.
  CHECK(est.v_hat == est.v_hat.transpose().eval());
}

TEST_CASE("complementarity from an exact estimate matches the closed form") {
  VmEstimate exact;
  exact.v_hat = vm_tmss(1.0).matrix();
  exact.standard_errors = Eigen::Matrix4d::Zero();
  exact.shots = 1000;

  const ComplementarityEstimate c = estimate_complementarity(exact);
  CHECK(c.c_i_sq == iconcurrence_from_vm(exact.v_hat(0, 0)));
  CHECK(c.p_context == 2.0 - c.c_i_sq);
  CHECK(c.ci_halfwidth == 0.0);
  CHECK_FALSE(c.clamped);
}

TEST_CASE("estimates below the vacuum floor are clamped") {
  VmEstimate low;
  low.v_hat = 0.9 * Eigen::Matrix4d::Identity();
  low.standard_errors = Eigen::Matrix4d::Constant(0.01);
  low.shots = 1000;

  const ComplementarityEstimate c = estimate_complementarity(low);
  CHECK(c.clamped);
  CHECK(c.c_i_sq == 0.0);
  CHECK(c.p_context == 2.0);
}

TEST_CASE("three-sigma coverage over 100 seeded runs") {
  const VarianceMatrix v = vm_tmss(1.0);
  const double v11_true = v(0, 0);
  const double c_true = iconcurrence_from_vm(v11_true);

  int v11_hits = 0;
  int c_hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const VmEstimate est = estimate_vm(sample(v, 1000000, seed));
    if (std::abs(est.v_hat(0, 0) - v11_true) <=
        3.0 * est.standard_errors(0, 0)) {
      ++v11_hits;
    }
    const ComplementarityEstimate c = estimate_complementarity(est);
    if (!c.clamped && std::abs(c.c_i_sq - c_true) <= 3.0 * c.ci_halfwidth) {
      ++c_hits;
    }
  }
  CHECK(v11_hits >= 99);
  CHECK(c_hits >= 99);
}

TEST_CASE("estimation error scales like one over sqrt(shots)") {
  const VarianceMatrix v = vm_tmss(1.0);
  std::vector<double> medians;
  for (int shots : {1000, 10000, 100000}) {
    std::vector<double> errors;
    for (std::uint64_t seed = 500; seed < 520; ++seed) {
      const VmEstimate est = estimate_vm(sample(v, shots, seed));
      errors.push_back(max_abs_error(est.v_hat, v.matrix()));
    }
    std::nth_element(errors.begin(), errors.begin() + 10, errors.end());
    medians.push_back(errors[10]);
  }
  // Each tenfold increase in shots should shrink the median error by about
  // sqrt(10), allowed to wander by a factor of two either way.
  for (std::size_t j = 1; j < medians.size(); ++j) {
    const double ratio = medians[j - 1] / medians[j];
    CHECK(ratio > std::sqrt(10.0) / 2.0);
    CHECK(ratio < 2.0 * std::sqrt(10.0));
  }
}
