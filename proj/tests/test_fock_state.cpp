#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "cvcomp/fock_state.hpp"
#include "test_support.hpp"

using namespace cvcomp;
using test_support::random_pure_state;

namespace {

// Independent oracle for the truncated-state normalization: the literal sum.
double norm_sq_by_sum(double xi, int t) {
  double sum = 0.0;
  for (int n = 0; n <= t; ++n) {
    sum += std::pow(xi, 2 * n);
  }
  return 1.0 / sum;
}

// Independent oracle for the reduced state: explicit index loops.
Eigen::MatrixXcd reduce_by_loops(const BipartitePureState& state,
                                 Subsystem keep) {
  const int d = state.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    for (int jp = 0; jp < d; ++jp) {
      std::complex<double> sum = 0.0;
      for (int k = 0; k < d; ++k) {
        sum += (keep == Subsystem::mode_a)
                   ? state.amp(j, k) * std::conj(state.amp(jp, k))
                   : state.amp(k, j) * std::conj(state.amp(k, jp));
      }
      rho(j, jp) = sum;
    }
  }
  return rho;
}

}  // namespace

TEST_CASE("truncated state amplitudes and normalization") {
  const double r = std::atanh(0.5);
  const BipartitePureState state = make_truncated_tmss(r, 1);
  REQUIRE(state.dim() == 2);
  // N = sqrt(0.8), amplitudes (N, N/2) on the diagonal.
  CHECK(std::abs(state.amp(0, 0).real() - 0.8944271909999159) < 1e-12);
  CHECK(std::abs(state.amp(1, 1).real() - 0.4472135954999579) < 1e-12);
  CHECK(std::abs(state.amp(0, 1)) == 0.0);
  CHECK(std::abs(state.amplitudes().norm() - 1.0) < 1e-12);

  const TruncatedTmss params(1.0, 10);
  CHECK(params.xi() == std::tanh(1.0));
  CHECK(params.dim() == 11);
}

TEST_CASE("normalization constant matches the literal sum") {
  CHECK(std::abs(tmss_norm_sq(0.5, 1) - 0.8) < 1e-15);
  for (double xi : {0.0, 0.3, 0.9, 0.989, 0.995, 0.9999}) {
    for (int t : {0, 1, 5, 40}) {
      CHECK(std::abs(tmss_norm_sq(xi, t) - norm_sq_by_sum(xi, t)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(tmss_norm_sq(1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(tmss_norm_sq(-0.1, 3), std::invalid_argument);
}

TEST_CASE("constructor rejections") {
  CHECK_THROWS_AS(BipartitePureState(Eigen::MatrixXcd::Zero(2, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(BipartitePureState(Eigen::MatrixXcd::Ones(2, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_truncated_tmss(-1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_truncated_tmss(1.0, -1), std::invalid_argument);
  CHECK_THROWS_AS(TruncatedTmss(0.5, -2), std::invalid_argument);
}

TEST_CASE("random states are normalized by construction") {
  std::mt19937_64 rng(20260819);
  for (int d : {2, 3, 5, 8}) {
    for (int rep = 0; rep < 20; ++rep) {
      const BipartitePureState state = random_pure_state(d, rng);
      CHECK(std::abs(state.amplitudes().norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("reduction matches the loop oracle and is a valid state") {
  std::mt19937_64 rng(7);
  for (int d : {2, 3, 5, 8}) {
    const BipartitePureState state = random_pure_state(d, rng);
    for (Subsystem keep : {Subsystem::mode_a, Subsystem::mode_b}) {
      const DensityMatrix rho = reduce(state, keep);
      const Eigen::MatrixXcd oracle = reduce_by_loops(state, keep);
      CHECK((rho.matrix() - oracle).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("reduced truncated state is diagonal with geometric weights") {
  const BipartitePureState state = make_truncated_tmss(std::atanh(0.5), 1);
  const DensityMatrix rho = reduce(state, Subsystem::mode_a);
  CHECK(std::abs(rho.matrix()(0, 0).real() - 0.8) < 1e-12);
  CHECK(std::abs(rho.matrix()(1, 1).real() - 0.2) < 1e-12);
  CHECK(std::abs(rho.matrix()(0, 1)) < 1e-15);
  // Both reductions have the same spectrum for a pure state.
  const DensityMatrix rho_b = reduce(state, Subsystem::mode_b);
  CHECK(std::abs(iconcurrence_sq(rho) - iconcurrence_sq(rho_b)) < 1e-13);
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 0.5, std::complex<double>(0.0, 0.3), std::complex<double>(0.0, 0.3),
      0.5;  // not Hermitian: equal imaginary parts
  CHECK_THROWS_AS((DensityMatrix(bad)), std::invalid_argument);

  Eigen::MatrixXcd off_trace = 0.7 * Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS((DensityMatrix(off_trace)), std::invalid_argument);

  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS((DensityMatrix(indefinite)), std::invalid_argument);
}

TEST_CASE("complementarity measures on frozen states") {
  // Diagonal reduced state diag(0.8, 0.2).
  const BipartitePureState tmss = make_truncated_tmss(std::atanh(0.5), 1);
  const DensityMatrix rho = reduce(tmss, Subsystem::mode_a);
  CHECK(std::abs(visibility_sq(rho) - 0.0) < 1e-14);
  CHECK(std::abs(predictability_sq(rho) - 0.36) < 1e-12);
  CHECK(std::abs(iconcurrence_sq(rho) - 0.64) < 1e-12);
  CHECK(std::abs(concurrence_2qubit(tmss) - 0.8) < 1e-12);

  // Off-diagonal case: amplitudes [[1,1],[0,1]]/sqrt(3) give
  // rho_A = [[2,1],[1,1]]/3, so V^2 = 4/9, P^2 = 1/9, C_I^2 = 4/9.
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  const BipartitePureState skew(a);
  const DensityMatrix rho_skew = reduce(skew, Subsystem::mode_a);
  CHECK(std::abs(visibility_sq(rho_skew) - 4.0 / 9.0) < 1e-12);
  CHECK(std::abs(predictability_sq(rho_skew) - 1.0 / 9.0) < 1e-12);
  CHECK(std::abs(iconcurrence_sq(rho_skew) - 4.0 / 9.0) < 1e-12);
}

TEST_CASE("triality for two qubits") {
  std::mt19937_64 rng(20260819);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const BipartitePureState state = random_pure_state(2, rng);
    for (Subsystem which : {Subsystem::mode_a, Subsystem::mode_b}) {
      const TrialityBreakdown tri = triality_check(state, which);
      worst = std::max(worst, std::abs(tri.residual));
      // The full-state sigma route must agree with the reduced-state route.
      const DensityMatrix rho = reduce(state, which);
      CHECK(std::abs(tri.v_sq - visibility_sq(rho)) < 1e-12);
      CHECK(std::abs(tri.p_sq - predictability_sq(rho)) < 1e-12);
    }
  }
  CHECK(worst < 1e-10);
  CHECK_THROWS_AS(triality_check(random_pure_state(3, rng), Subsystem::mode_a),
                  std::invalid_argument);
  CHECK_THROWS_AS(concurrence_2qubit(random_pure_state(3, rng)),
                  std::invalid_argument);
}

TEST_CASE("operator basis structure") {
  const HioeEberlyBasis basis(4);
  CHECK(basis.size() == 15);  // d^2 - 1
  auto check_ops = [](const std::vector<Eigen::MatrixXcd>& ops) {
    for (const auto& op : ops) {
      CHECK(std::abs(op.trace()) < 1e-14);
      CHECK((op - op.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(std::abs((op * op).trace().real() - 2.0) < 1e-12);
    }
  };
  check_ops(basis.u);
  check_ops(basis.v);
  check_ops(basis.w);

  // d = 2 reduces to the Pauli matrices.
  const HioeEberlyBasis pauli(2);
  Eigen::MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
  const std::complex<double> i(0.0, 1.0);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  CHECK((pauli.u[0] - sx).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((pauli.v[0] - sy).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((pauli.w[0] - sz).cwiseAbs().maxCoeff() < 1e-15);

  // Mutual orthogonality in the trace inner product, sampled across kinds.
  const auto& all_u = basis.u;
  for (std::size_t j = 0; j < all_u.size(); ++j) {
    for (std::size_t k = j + 1; k < all_u.size(); ++k) {
      CHECK(std::abs((all_u[j] * all_u[k]).trace()) < 1e-13);
    }
  }
  for (const auto& u_op : basis.u) {
    for (const auto& w_op : basis.w) {
      CHECK(std::abs((u_op * w_op).trace()) < 1e-13);
    }
  }
}

TEST_CASE("basis route reproduces the matrix-element route") {
  std::mt19937_64 rng(101);
  for (int d : {2, 3, 5, 8}) {
    const HioeEberlyBasis basis(d);
    double worst = 0.0;
    for (int rep = 0; rep < 250; ++rep) {
      const BipartitePureState state = random_pure_state(d, rng);
      const DensityMatrix rho = reduce(state, Subsystem::mode_a);
      worst = std::max(worst, std::abs(visibility_sq_via_basis(rho, basis) -
                                       visibility_sq(rho)));
      worst = std::max(worst, std::abs(predictability_sq_via_basis(rho, basis) -
                                       predictability_sq(rho)));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("coherence pair identity |<u>|^2 + |<v>|^2 = 4 |rho_jk|^2") {
  std::mt19937_64 rng(77);
  const int d = 5;
  const HioeEberlyBasis basis(d);
  const BipartitePureState state = random_pure_state(d, rng);
  const DensityMatrix rho = reduce(state, Subsystem::mode_b);
  std::size_t index = 0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k, ++index) {
      const double eu = (rho.matrix() * basis.u[index]).trace().real();
      const double ev = (rho.matrix() * basis.v[index]).trace().real();
      const double target = 4.0 * std::norm(rho.matrix()(j, k));
      CHECK(std::abs(eu * eu + ev * ev - target) < 1e-12);
    }
  }
}

TEST_CASE("expectation values on the truncated state") {
  const BipartitePureState state = make_truncated_tmss(std::atanh(0.5), 1);
  Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(2, 2);
  number(1, 1) = 1.0;
  // <n_a> = N^2 xi^2 = 0.2.
  CHECK(std::abs(expectation(state, number, Subsystem::mode_a).real() - 0.2) <
        1e-12);
  CHECK(std::abs(expectation(state, number, number).real() - 0.2) < 1e-12);
  CHECK_THROWS_AS(expectation(state, Eigen::MatrixXcd::Identity(1, 1),
                              Subsystem::mode_a),
                  std::invalid_argument);
}

TEST_CASE("quadrature variance matrix of the vacuum is the identity") {
  const BipartitePureState vacuum = make_truncated_tmss(0.0, 0);
  const VarianceMatrix vm = quadrature_vm_oracle(vacuum);
  CHECK((vm.matrix() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("quadrature variance matrix of the t=1 truncated state") {
  const BipartitePureState state = make_truncated_tmss(std::atanh(0.5), 1);
  const VarianceMatrix vm = quadrature_vm_oracle(state);
  // V11 = N^2 (1 + 3 xi^2) = 1.4 only if the raising operator keeps its
  // action at the truncation edge; a hard cutoff would lose the |2> term.
  CHECK(std::abs(vm(0, 0) - 1.4) < 1e-13);
  CHECK(std::abs(vm(0, 2) - 0.8) < 1e-13);
  CHECK(std::abs(vm(1, 1) - 1.4) < 1e-13);
  CHECK(std::abs(vm(1, 3) + 0.8) < 1e-13);
  CHECK(std::abs(vm(2, 2) - 1.4) < 1e-13);
  CHECK(std::abs(vm(3, 3) - 1.4) < 1e-13);
  for (auto [j, k] : {std::pair{0, 1}, {0, 3}, {1, 2}, {2, 3}}) {
    CHECK(std::abs(vm(j, k)) < 1e-13);
  }
}

TEST_CASE("quadrature series oracle across the (r, t) grid") {
  // Test-side series: V11 = N^2 sum (2n+1) xi^{2n},
  // V13 = 2 N^2 sum_{n<t} (n+1) xi^{2n+1}.
  for (double r : {0.2, 0.8, 1.5}) {
    for (int t : {1, 3, 8, 20}) {
      const double xi = std::tanh(r);
      double s11 = 0.0;
      double s13 = 0.0;
      for (int n = 0; n <= t; ++n) {
        s11 += (2.0 * n + 1.0) * std::pow(xi, 2 * n);
        if (n < t) {
          s13 += (n + 1.0) * std::pow(xi, 2 * n + 1);
        }
      }
      const double n2 = tmss_norm_sq(xi, t);
      const VarianceMatrix vm =
          quadrature_vm_oracle(make_truncated_tmss(r, t));
      CHECK(std::abs(vm(0, 0) - n2 * s11) < 1e-11);
      CHECK(std::abs(vm(0, 2) - 2.0 * n2 * s13) < 1e-11);
      CHECK(std::abs(vm(1, 1) - vm(0, 0)) < 1e-12);
      CHECK(std::abs(vm(1, 3) + vm(0, 2)) < 1e-12);
    }
  }
}
