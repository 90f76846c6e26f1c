#include "blockade/lindblad.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "blockade/error.hpp"

namespace blockade {
namespace {

constexpr complex kI{0.0, 1.0};
constexpr char kRhoMagic[4] = {'R', 'H', 'O', '1'};

// Below this reciprocal condition number the constrained system is treated
// as singular (the generator is normalised to unit inf-norm first).
constexpr double kMinRcond = 1e-13;

double inf_norm(const ComplexOperator& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

ComplexVector trace_row(std::size_t d) {
  ComplexVector t = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t k = 0; k < d; ++k) t(static_cast<Eigen::Index>(k * (d + 1))) = 1.0;
  return t;
}

complex vec_trace(const ComplexVector& v, std::size_t d) {
  complex tr = 0.0;
  for (std::size_t k = 0; k < d; ++k) tr += v(static_cast<Eigen::Index>(k * (d + 1)));
  return tr;
}

static_assert(std::endian::native == std::endian::little,
              "density-matrix dump assumes a little-endian host");

}  // namespace

Superoperator liouvillian(const SystemParams& p, const FockBasis& basis,
                          LiouvillianOptions opts) {
  const std::size_t d = basis.dim();
  if (d * d > kMaxSuperDim && !opts.allow_large) {
    throw Error(ErrorCode::dimension_overflow,
                "Liouvillian dimension " + std::to_string(d * d) + " exceeds " +
                    std::to_string(kMaxSuperDim) + "; set allow_large to proceed");
  }

  const TwoModeOps ops = two_mode_ops(basis);
  const ComplexOperator h = effective_hamiltonian(p, basis, ops);
  const auto n = static_cast<Eigen::Index>(d);

  // With K = -iH - kappa/2 (n1 + n2): L = I (x) K + conj(K) (x) I + kappa sum conj(a) (x) a.
  const ComplexOperator k =
      -kI * h - (0.5 * p.kappa) * (number(ops.a1) + number(ops.a2));
  ComplexOperator l = ComplexOperator::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    l.block(i * n, i * n, n, n) += k;
    for (Eigen::Index j = 0; j < n; ++j) {
      const complex kc = std::conj(k(i, j));
      if (kc != 0.0) l.block(i * n, j * n, n, n).diagonal().array() += kc;
      for (const auto* a : {&ops.a1, &ops.a2}) {
        const complex ac = std::conj((*a)(i, j));
        if (ac != 0.0) l.block(i * n, j * n, n, n) += (p.kappa * ac) * *a;
      }
    }
  }
  return {d, std::move(l)};
}

double trace_preservation_error(const Superoperator& l) {
  const ComplexVector t = trace_row(l.hilbert_dim);
  return (t.transpose() * l.matrix).cwiseAbs().maxCoeff();
}

ComplexVector vectorize(const ComplexOperator& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexOperator unvectorize(const ComplexVector& v, std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  if (v.size() != d * d) {
    throw Error(ErrorCode::dimension_mismatch, "vector length is not dim^2");
  }
  return Eigen::Map<const ComplexOperator>(v.data(), d, d);
}

DensityMatrix::DensityMatrix(ComplexOperator rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw Error(ErrorCode::dimension_mismatch, "density matrix must be square and non-empty");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const ComplexVector unit = psi / psi.norm();
  return DensityMatrix(unit * unit.adjoint());
}

Physicality DensityMatrix::physicality() const {
  const ComplexOperator herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexOperator> eig(herm, Eigen::EigenvaluesOnly);
  return {std::abs(rho_.trace() - 1.0), hermiticity_error(rho_), eig.eigenvalues().minCoeff()};
}

void DensityMatrix::check_physical(double tol, double eig_tol) const {
  const auto ph = physicality();
  if (!(ph.trace_error <= tol && ph.hermiticity_error <= tol && ph.min_eigenvalue >= -eig_tol)) {
    std::ostringstream msg;
    msg << "unphysical density matrix: trace error " << ph.trace_error << ", hermiticity error "
        << ph.hermiticity_error << ", min eigenvalue " << ph.min_eigenvalue;
    throw Error(ErrorCode::unphysical_state, msg.str());
  }
}

complex DensityMatrix::expectation(const ComplexOperator& op) const {
  if (op.rows() != rho_.rows() || op.cols() != rho_.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "operator and density matrix differ in size");
  }
  return (op * rho_).trace();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const ComplexOperator diff = a.matrix() - b.matrix();
  const ComplexOperator herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexOperator> eig(herm, Eigen::EigenvaluesOnly);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

SteadyStateReport steady_state_report(const Superoperator& l) {
  const std::size_t d = l.hilbert_dim;
  const auto n = static_cast<Eigen::Index>(d * d);
  if (l.matrix.rows() != n || l.matrix.cols() != n) {
    throw Error(ErrorCode::dimension_mismatch, "superoperator is not hilbert_dim^2 square");
  }

  const double scale = inf_norm(l.matrix);
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::non_unique_steady_state, "zero generator: every state is stationary");
  }
  if (trace_preservation_error(l) > 1e-10 * scale) {
    throw Error(ErrorCode::singular_liouvillian, "generator is not trace preserving");
  }

  ComplexOperator m = l.matrix / scale;
  m.row(0) = trace_row(d).transpose();
  ComplexVector rhs = ComplexVector::Zero(n);
  rhs(0) = 1.0;

  Eigen::PartialPivLU<ComplexOperator> lu(m);
  // The rcond estimate can miss an exactly zero pivot, so check the pivots too.
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  const bool tiny_pivot = !(pivots.minCoeff() >= kMinRcond * pivots.maxCoeff());
  if (tiny_pivot || !(lu.rcond() >= kMinRcond)) {
    // Distinguish a degenerate null space from a generally ill-posed system.
    Eigen::FullPivLU<ComplexOperator> full(l.matrix / scale);
    full.setThreshold(1e-10);
    if (full.dimensionOfKernel() > 1) {
      throw Error(ErrorCode::non_unique_steady_state,
                  "Liouvillian has " + std::to_string(full.dimensionOfKernel()) +
                      " stationary states");
    }
    throw Error(ErrorCode::singular_liouvillian, "constrained steady-state system is singular");
  }

  const ComplexOperator raw = unvectorize(lu.solve(rhs), d);
  const double asymmetry = hermiticity_error(raw);
  DensityMatrix rho(0.5 * (raw + raw.adjoint()));
  const double residual = (l.matrix * vectorize(rho.matrix())).cwiseAbs().maxCoeff();
  rho.check_physical();
  return {std::move(rho), asymmetry, residual};
}

DensityMatrix steady_state(const Superoperator& l) { return steady_state_report(l).rho; }

DensityMatrix evolve(const Superoperator& l, const DensityMatrix& rho0, double t_final,
                     double dt, EvolveOptions opts) {
  const std::size_t d = l.hilbert_dim;
  if (rho0.dim() != d) {
    throw Error(ErrorCode::dimension_mismatch, "initial state does not match the generator");
  }
  if (!(dt > 0.0) || !(t_final >= 0.0)) {
    throw Error(ErrorCode::step_instability, "evolve needs dt > 0 and t_final >= 0");
  }
  const double norm = inf_norm(l.matrix);
  if (opts.enforce_step_bound && dt * norm > 0.1) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds the stability bound 0.1/||L|| = " << 0.1 / norm;
    throw Error(ErrorCode::step_instability, msg.str());
  }

  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
  const ComplexOperator& gen = l.matrix;

  ComplexVector v = vectorize(rho0.matrix());
  const complex tr0 = vec_trace(v, d);
  ComplexVector k1, k2, k3, k4;
  for (long long s = 0; s < steps; ++s) {
    k1.noalias() = gen * v;
    k2.noalias() = gen * (v + 0.5 * h * k1);
    k3.noalias() = gen * (v + 0.5 * h * k2);
    k4.noalias() = gen * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(vec_trace(v, d) - tr0);
    if (!(drift <= opts.max_trace_drift)) {
      std::ostringstream msg;
      msg << "trace drift " << drift << " at t = " << h * static_cast<double>(s + 1)
          << " (step " << h << ", ||L|| = " << norm << ")";
      throw Error(ErrorCode::step_instability, msg.str());
    }
  }
  return DensityMatrix(unvectorize(v, d));
}

ModeStatistics mode_statistics(const DensityMatrix& rho, const ComplexOperator& a) {
  const ComplexOperator ad = a.adjoint();
  const double n = rho.expectation(ad * a).real();
  if (!(n > kEmptyModeThreshold)) {
    throw Error(ErrorCode::empty_mode, "mode occupation underflows; g2 undefined");
  }
  const double pairs = rho.expectation(ad * ad * a * a).real();
  return {n, pairs / (n * n)};
}

CorrelationResult g2_from_rho(const DensityMatrix& rho, const ComplexOperator& a1,
                              const ComplexOperator& a2) {
  const auto m1 = mode_statistics(rho, a1);
  const auto m2 = mode_statistics(rho, a2);
  return {m1.g2, m2.g2, m1.n, m2.n};
}

PhotonStatistics classify_statistics(double g2) noexcept {
  if (g2 > 1.0) return PhotonStatistics::bunched;
  if (g2 < 1.0) return PhotonStatistics::antibunched;
  return PhotonStatistics::poissonian;
}

std::string_view to_string(PhotonStatistics s) noexcept {
  switch (s) {
    case PhotonStatistics::antibunched: return "antibunched";
    case PhotonStatistics::poissonian: return "poissonian";
    case PhotonStatistics::bunched: return "bunched";
  }
  return "unknown";
}

MasterEquationPoint solve_master_equation(const SystemParams& p, int cutoff) {
  const FockBasis basis(cutoff, cutoff);
  auto report = steady_state_report(liouvillian(p, basis));
  const TwoModeOps ops = two_mode_ops(basis);

  MasterEquationPoint out{std::move(report), 0.0, 0.0, std::nullopt, std::nullopt};
  const auto fill = [&](const ComplexOperator& a, double& n, std::optional<double>& g2) {
    n = out.state.rho.expectation(number(a)).real();
    if (n > kEmptyModeThreshold) g2 = mode_statistics(out.state.rho, a).g2;
  };
  fill(ops.a1, out.n1, out.g2_1);
  fill(ops.a2, out.n2, out.g2_2);
  return out;
}

void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write " + path.string());

  const std::uint32_t reserved = 0;
  const std::uint64_t dim = rho.dim();
  out.write(kRhoMagic, 4);
  out.write(reinterpret_cast<const char*>(&reserved), sizeof reserved);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::array<double, 2> reim{m(i, j).real(), m(i, j).imag()};
      out.write(reinterpret_cast<const char*>(reim.data()), sizeof reim);
    }
  }
  if (!out) throw Error(ErrorCode::io_failure, "short write to " + path.string());
}

DensityMatrix read_density_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_failure, "cannot read " + path.string());

  char magic[4];
  std::uint32_t reserved = 0;
  std::uint64_t dim = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&reserved), sizeof reserved);
  in.read(reinterpret_cast<char*>(&dim), sizeof dim);
  if (!in || std::memcmp(magic, kRhoMagic, 4) != 0) {
    throw Error(ErrorCode::io_failure, path.string() + " is not a RHO1 dump");
  }
  if (dim == 0 || dim > 4096) {
    throw Error(ErrorCode::io_failure, "implausible dimension in " + path.string());
  }

  const auto d = static_cast<Eigen::Index>(dim);
  ComplexOperator m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      std::array<double, 2> reim{};
      in.read(reinterpret_cast<char*>(reim.data()), sizeof reim);
      m(i, j) = complex(reim[0], reim[1]);
    }
  }
  if (!in) throw Error(ErrorCode::io_failure, "truncated RHO1 dump " + path.string());
  return DensityMatrix(std::move(m));
}

}  // namespace blockade
