#include "blockade/model.hpp"

#include <cmath>
#include <string>

#include "blockade/error.hpp"

namespace blockade {
namespace {

constexpr complex kI{0.0, 1.0};

// kappa = 2 pi 0.15 MHz, omega_m = 2 pi 75 MHz.
constexpr double kPresetKappa = 0.15 / 75.0;

void check_ops(const FockBasis& basis, const TwoModeOps& ops) {
  const auto d = static_cast<Eigen::Index>(basis.dim());
  for (const auto* a : {&ops.a1, &ops.a2}) {
    if (a->rows() != d || a->cols() != d) {
      throw Error(ErrorCode::dimension_mismatch,
                  "ladder operators are " + std::to_string(a->rows()) + "x" +
                      std::to_string(a->cols()) + " but the basis has dim " +
                      std::to_string(d));
    }
  }
}

}  // namespace

void SystemParams::validate() const {
  for (double v : {delta, lambda_gain, theta, phi, hop_J, kappa, drive_E, g_om}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_params, "non-finite parameter");
  }
  if (!(kappa > 0.0)) throw Error(ErrorCode::invalid_params, "kappa must be > 0");
  if (drive_E < 0.0) throw Error(ErrorCode::invalid_params, "drive_E must be >= 0");
  if (g_om < 0.0) throw Error(ErrorCode::invalid_params, "g_om must be >= 0");
}

SystemParams weak_params() {
  SystemParams p;
  p.kappa = kPresetKappa;
  p.hop_J = 0.95 * p.kappa;
  p.drive_E = 0.02 * p.kappa;
  p.g_om = 0.042;
  return p;
}

SystemParams strong_params() {
  SystemParams p;
  p.kappa = kPresetKappa;
  p.hop_J = 8.0 * p.kappa;
  p.drive_E = 0.02 * p.kappa;
  p.g_om = 0.2;
  return p;
}

SystemParams mirrored(SystemParams p) {
  p.delta = -p.delta;
  return p;
}

Regime regime(const SystemParams& p) {
  return (p.hop_J < p.kappa && p.g_om < kWeakOptomechanicalBound) ? Regime::weak
                                                                   : Regime::strong;
}

std::string_view to_string(Regime r) noexcept {
  return r == Regime::weak ? "weak" : "strong";
}

ComplexOperator effective_hamiltonian(const SystemParams& p, const FockBasis& basis) {
  return effective_hamiltonian(p, basis, two_mode_ops(basis));
}

ComplexOperator effective_hamiltonian(const SystemParams& p, const FockBasis& basis,
                                      const TwoModeOps& ops) {
  p.validate();
  check_ops(basis, ops);

  const auto d = static_cast<Eigen::Index>(basis.dim());
  ComplexOperator h = ComplexOperator::Zero(d, d);
  const complex gain = kI * p.lambda_gain * std::exp(kI * p.theta);

  for (const auto* a : {&ops.a1, &ops.a2}) {
    const ComplexOperator ad = a->adjoint();
    const ComplexOperator n = ad * (*a);
    h += -p.delta * n - p.mu() * n * n;
    // i lambda e^{i theta} a^+^2 + h.c.
    const ComplexOperator pair = gain * ad * ad;
    h += pair + pair.adjoint();
  }

  const ComplexOperator& driven = p.driven == Cavity::first ? ops.a1 : ops.a2;
  const ComplexOperator drive = p.drive_E * std::exp(kI * p.phi) * driven.adjoint();
  h += drive + drive.adjoint();

  h += p.hop_J * (ops.a1.adjoint() * ops.a2 + ops.a2.adjoint() * ops.a1);
  return h;
}

ComplexOperator non_hermitian_hamiltonian(const SystemParams& p, const FockBasis& basis) {
  return non_hermitian_hamiltonian(p, basis, two_mode_ops(basis));
}

ComplexOperator non_hermitian_hamiltonian(const SystemParams& p, const FockBasis& basis,
                                          const TwoModeOps& ops) {
  ComplexOperator h = effective_hamiltonian(p, basis, ops);
  h -= kI * (0.5 * p.kappa) * (number(ops.a1) + number(ops.a2));
  return h;
}

CpbDetunings cpb_detunings(const SystemParams& p) {
  return {p.mu() + p.hop_J, p.mu() - p.hop_J};
}

std::array<double, 2> single_excitation_energies(const SystemParams& p) {
  const double centre = -p.delta - p.mu();
  const double j = std::abs(p.hop_J);
  return {centre - j, centre + j};
}

}  // namespace blockade
