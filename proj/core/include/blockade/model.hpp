#pragma once

#include <array>
#include <numbers>
#include <string_view>

#include "blockade/fock.hpp"

namespace blockade {

/// Mechanical frequency in rad/s used to convert `_hz` parameter inputs.
inline constexpr double kDefaultOmegaMHz = 2.0 * std::numbers::pi * 75e6;

enum class Cavity { first = 1, second = 2 };

inline int index_of(Cavity c) noexcept { return static_cast<int>(c); }

/// Parameters of two identical tunnel-coupled Kerr cavities with parametric
/// gain. All rates are in units of the mechanical frequency (omega_m = 1).
///
/// The Hamiltonian convention is
///   H = sum_j [-delta n_j - mu n_j^2 + i lambda a_j^+^2 e^{i theta}
///              - i lambda a_j^2 e^{-i theta}]
///       + E (e^{i phi} a_d^+ + e^{-i phi} a_d) + J (a1^+ a2 + a2^+ a1)
/// where d is the driven cavity. Published figures and optimal-pair tables
/// use the mirrored detuning axis (delta -> -delta); see mirrored().
struct SystemParams {
  double delta = 0.0;
  double lambda_gain = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double hop_J = 0.0;
  double kappa = 0.0;
  double drive_E = 0.0;
  double g_om = 0.0;
  Cavity driven = Cavity::first;

  /// Kerr strength g^2 / omega_m.
  double mu() const noexcept { return g_om * g_om; }

  /// Throws Error(invalid_params) unless kappa > 0, E >= 0, g >= 0 and all
  /// fields are finite.
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// J = 0.95 kappa, g = 0.042, E = 0.02 kappa, kappa = 0.15 MHz / 75 MHz.
SystemParams weak_params();
/// J = 8 kappa, g = 0.2, E = 0.02 kappa, kappa = 0.15 MHz / 75 MHz.
SystemParams strong_params();

/// Same system with delta -> -delta (the axis used by published figures).
SystemParams mirrored(SystemParams p);

enum class Regime { weak, strong };

/// Upper bound on g / omega_m treated as "g << omega_m".
inline constexpr double kWeakOptomechanicalBound = 0.1;

/// weak iff J < kappa and g < kWeakOptomechanicalBound.
Regime regime(const SystemParams& p);
std::string_view to_string(Regime r) noexcept;

ComplexOperator effective_hamiltonian(const SystemParams& p, const FockBasis& basis);
ComplexOperator effective_hamiltonian(const SystemParams& p, const FockBasis& basis,
                                      const TwoModeOps& ops);

/// H1 - i kappa/2 (n1 + n2).
ComplexOperator non_hermitian_hamiltonian(const SystemParams& p, const FockBasis& basis);
ComplexOperator non_hermitian_hamiltonian(const SystemParams& p, const FockBasis& basis,
                                          const TwoModeOps& ops);

struct CpbDetunings {
  double plus;   ///< mu + J
  double minus;  ///< mu - J
};

/// Conventional-blockade detunings on the mirrored axis.
CpbDetunings cpb_detunings(const SystemParams& p);

/// Eigenvalues of the drive- and gain-free single-excitation block of H1:
/// -delta - mu -/+ J, ascending.
std::array<double, 2> single_excitation_energies(const SystemParams& p);

}  // namespace blockade
