#include "cvcomp/fock_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace cvcomp {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;

// Finite geometric sum 1 + q + ... + q^t, accumulated term by term.
double geometric_sum(double q, int t) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n <= t; ++n) {
    term *= q;
    sum += term;
  }
  return sum;
}

}  // namespace

BipartitePureState::BipartitePureState(Eigen::MatrixXcd amplitudes)
    : amp_(std::move(amplitudes)) {
  if (amp_.rows() < 1 || amp_.rows() != amp_.cols()) {
    throw std::invalid_argument("amplitude table must be square, d >= 1");
  }
  if (!amp_.allFinite()) {
    throw std::invalid_argument("amplitude table has non-finite entries");
  }
  const double norm = amp_.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("amplitude table is identically zero");
  }
  amp_ /= norm;
}

TruncatedTmss::TruncatedTmss(double r, int t) : r_(r), t_(t) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("squeezing parameter r must be >= 0");
  }
  if (t < 0) {
    throw std::invalid_argument("Fock cutoff t must be >= 0");
  }
}

double TruncatedTmss::xi() const { return std::tanh(r_); }

double TruncatedTmss::norm_sq() const { return tmss_norm_sq(xi(), t_); }

double tmss_norm_sq(double xi, int t) {
  if (!(xi >= 0.0 && xi < 1.0)) {
    throw std::invalid_argument("xi must lie in [0, 1)");
  }
  if (xi == 0.0) {
    return 1.0;
  }
  const double q = xi * xi;
  if (xi > 0.99) {
    return 1.0 / geometric_sum(q, t);
  }
  return (1.0 - q) / (1.0 - std::pow(q, t + 1));
}

BipartitePureState make_truncated_tmss(double r, int t) {
  const TruncatedTmss params(r, t);
  const double xi = params.xi();
  const double n = std::sqrt(params.norm_sq());
  Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(t + 1, t + 1);
  double pw = 1.0;
  for (int k = 0; k <= t; ++k) {
    amp(k, k) = n * pw;
    pw *= xi;
  }
  return BipartitePureState(std::move(amp));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() < 1 || rho_.rows() != rho_.cols()) {
    throw std::invalid_argument("density matrix must be square");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix reduce(const BipartitePureState& state, Subsystem keep) {
  const Eigen::MatrixXcd& a = state.amplitudes();
  // rho_A(j, j') = sum_k a(j, k) conj(a(j', k)); rho_B analogous over the
  // first index.
  Eigen::MatrixXcd rho = (keep == Subsystem::mode_a)
                             ? Eigen::MatrixXcd(a * a.adjoint())
                             : Eigen::MatrixXcd(a.transpose() * a.conjugate());
  return DensityMatrix(std::move(rho));
}

double visibility_sq(const DensityMatrix& rho) {
  const Eigen::MatrixXcd& m = rho.matrix();
  double off_diag = m.squaredNorm();
  for (int j = 0; j < rho.dim(); ++j) {
    off_diag -= std::norm(m(j, j));
  }
  return 2.0 * off_diag;
}

double predictability_sq(const DensityMatrix& rho) {
  const Eigen::MatrixXcd& m = rho.matrix();
  const int d = rho.dim();
  double sum = 0.0;
  for (int j = 0; j < d; ++j) {
    const double p = m(j, j).real();
    sum += p * p;
  }
  return 2.0 * (sum - 1.0 / d);
}

double iconcurrence_sq(const DensityMatrix& rho) {
  // Tr rho^2 = ||rho||_F^2 for Hermitian rho.
  return 2.0 * (1.0 - rho.matrix().squaredNorm());
}

double concurrence_2qubit(const BipartitePureState& state) {
  if (state.dim() != 2) {
    throw std::invalid_argument("2-qubit concurrence requires d = 2");
  }
  const Eigen::MatrixXcd& a = state.amplitudes();
  return 2.0 * std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
}

TrialityBreakdown triality_check(const BipartitePureState& state,
                                 Subsystem which) {
  if (state.dim() != 2) {
    throw std::invalid_argument("triality check requires d = 2");
  }
  Eigen::MatrixXcd sigma_plus(2, 2);
  sigma_plus << 0, 1, 0, 0;
  Eigen::MatrixXcd sigma_z(2, 2);
  sigma_z << 1, 0, 0, -1;

  const double vis = 2.0 * std::abs(expectation(state, sigma_plus, which));
  const double pred = std::abs(expectation(state, sigma_z, which).real());
  const double con = concurrence_2qubit(state);

  TrialityBreakdown out;
  out.v_sq = vis * vis;
  out.p_sq = pred * pred;
  out.c_sq = con * con;
  out.residual = out.v_sq + out.p_sq + out.c_sq - 1.0;
  return out;
}

HioeEberlyBasis::HioeEberlyBasis(int dim) : d(dim) {
  if (d < 1) {
    throw std::invalid_argument("basis dimension must be >= 1");
  }
  const std::complex<double> i(0.0, 1.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(d, d);
      sym(k, j) = 1.0;
      sym(j, k) = 1.0;
      u.push_back(std::move(sym));
      Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(d, d);
      asym(k, j) = i;
      asym(j, k) = -i;
      v.push_back(std::move(asym));
    }
  }
  for (int l = 1; l < d; ++l) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) {
      diag(j, j) = scale;
    }
    diag(l, l) = -scale * l;
    w.push_back(std::move(diag));
  }
}

namespace {

double operator_expectation(const DensityMatrix& rho,
                            const Eigen::MatrixXcd& op) {
  return (rho.matrix() * op).trace().real();
}

}  // namespace

double visibility_sq_via_basis(const DensityMatrix& rho,
                               const HioeEberlyBasis& basis) {
  if (rho.dim() != basis.d) {
    throw std::invalid_argument("basis dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& op : basis.u) {
    const double e = operator_expectation(rho, op);
    sum += e * e;
  }
  for (const auto& op : basis.v) {
    const double e = operator_expectation(rho, op);
    sum += e * e;
  }
  return sum;
}

double predictability_sq_via_basis(const DensityMatrix& rho,
                                   const HioeEberlyBasis& basis) {
  if (rho.dim() != basis.d) {
    throw std::invalid_argument("basis dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& op : basis.w) {
    const double e = operator_expectation(rho, op);
    sum += e * e;
  }
  return sum;
}

std::complex<double> expectation(const BipartitePureState& state,
                                 const Eigen::MatrixXcd& op_a,
                                 const Eigen::MatrixXcd& op_b) {
  const Eigen::MatrixXcd& a = state.amplitudes();
  const int d = state.dim();
  if (op_a.rows() < d || op_a.cols() < d || op_b.rows() < d ||
      op_b.cols() < d) {
    throw std::invalid_argument("operator smaller than the state dimension");
  }
  // <psi| O_a (x) O_b |psi> = sum_{jk} conj(a_jk) (O_a A O_b^T)_{jk}. When an
  // operator is larger than d (edge embedding) the amplitude table is padded
  // with zeros; entries of the operators beyond the padded support never
  // contribute.
  const int e = static_cast<int>(
      std::max({op_a.rows(), op_a.cols(), op_b.rows(), op_b.cols()}));
  Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(e, e);
  padded.topLeftCorner(d, d) = a;
  Eigen::MatrixXcd oa = Eigen::MatrixXcd::Zero(e, e);
  oa.topLeftCorner(op_a.rows(), op_a.cols()) = op_a;
  Eigen::MatrixXcd ob = Eigen::MatrixXcd::Zero(e, e);
  ob.topLeftCorner(op_b.rows(), op_b.cols()) = op_b;
  return (padded.conjugate().cwiseProduct(oa * padded * ob.transpose())).sum();
}

std::complex<double> expectation(const BipartitePureState& state,
                                 const Eigen::MatrixXcd& op, Subsystem which) {
  const Eigen::MatrixXcd ident =
      Eigen::MatrixXcd::Identity(op.rows(), op.cols());
  return which == Subsystem::mode_a ? expectation(state, op, ident)
                                    : expectation(state, ident, op);
}

VarianceMatrix quadrature_vm_oracle(const BipartitePureState& state) {
  const int d = state.dim();
  const int e = d + 1;  // one spare level keeps a^dag exact at the edge
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(e, e);
  for (int n = 1; n < e; ++n) {
    lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  const Eigen::MatrixXcd raise = lower.adjoint();
  const std::complex<double> i(0.0, 1.0);
  const Eigen::MatrixXcd x = (lower + raise) / std::sqrt(2.0);
  const Eigen::MatrixXcd p = (lower - raise) / (i * std::sqrt(2.0));
  const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(e, e);

  // Quadrature ordering (x_a, p_a, x_b, p_b).
  struct Quad {
    Subsystem mode;
    const Eigen::MatrixXcd* op;
  };
  const std::array<Quad, 4> quads = {{{Subsystem::mode_a, &x},
                                      {Subsystem::mode_a, &p},
                                      {Subsystem::mode_b, &x},
                                      {Subsystem::mode_b, &p}}};

  std::array<double, 4> mean{};
  for (int j = 0; j < 4; ++j) {
    mean[j] = expectation(state, *quads[j].op, quads[j].mode).real();
  }

  Eigen::Matrix4d vm;
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      double anticomm = 0.0;
      if (quads[j].mode == quads[k].mode) {
        const Eigen::MatrixXcd prod =
            (*quads[j].op) * (*quads[k].op) + (*quads[k].op) * (*quads[j].op);
        anticomm = expectation(state, prod, quads[j].mode).real();
      } else {
        // Different modes commute: <{q_j, q_k}> = 2 <q_j q_k>.
        anticomm =
            2.0 * expectation(state, *quads[j].op, *quads[k].op).real();
      }
      const double value = anticomm - 2.0 * mean[j] * mean[k];
      vm(j, k) = value;
      vm(k, j) = value;
    }
  }
  return VarianceMatrix(vm);
}

}  // namespace cvcomp
