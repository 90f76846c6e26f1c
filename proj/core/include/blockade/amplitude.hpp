#pragma once

#include <string>
#include <vector>

#include "blockade/model.hpp"

namespace blockade {

/// Amplitudes of the n1 + n2 <= 2 subspace, normalised to c00 = 1.
struct AmplitudeState {
  complex c00{1.0, 0.0};
  complex c01{};
  complex c10{};
  complex c11{};
  complex c02{};
  complex c20{};
  /// Soft diagnostics: drive outside the weak-drive window, or a broken
  /// |c00| >> |c10| hierarchy.
  std::vector<std::string> warnings;
};

/// Lambda = delta + i kappa/2 - mu, Gamma = delta + i kappa/2 - 2 mu, as used
/// by the closed-form coefficients.
struct LambdaGamma {
  complex lambda;
  complex gamma;
};

LambdaGamma lambda_gamma(const SystemParams& p);

/// Drive amplitudes above this fraction of kappa attach a warning.
inline constexpr double kWeakDriveRatio = 0.1;

/// Steady state of the driven non-Hermitian Hamiltonian in the weak-drive
/// hierarchy. With c00 = 1 the one-photon block is solved with vacuum as
/// its only source, then the two-photon block is solved with the vacuum
/// (parametric gain) and one-photon amplitudes as sources. Both blocks are
/// projections of non_hermitian_hamiltonian() onto |n1,n2>, n1 + n2 <= 2.
///
/// Requires drive_E > 0. Throws Error(resonance_singularity) when either
/// block is singular.
AmplitudeState steady_amplitudes(const SystemParams& p);

/// Residual of i dC/dt = H2 C at `s`, over all non-vacuum rows of the
/// n1 + n2 <= 2 block (including the two-photon feedback terms the
/// hierarchy drops). Max-abs norm.
double steady_residual(const SystemParams& p, const AmplitudeState& s);

/// Closed-form coefficients exactly as published (theta = phi = 0, drive on
/// cavity 1). `p.delta` enters Lambda and Gamma unchanged, so the result
/// lives on the mirrored detuning axis: compare against
/// steady_amplitudes(mirrored(p)).
AmplitudeState analytic_coefficients(const SystemParams& p);

struct G2Pair {
  double g2_1;
  double g2_2;
};

/// g2_j = 2 |c_2j|^2 / |c_1j|^4 with n_j ~ |c_1j|^2.
double g2_from_amplitudes(const AmplitudeState& s, Cavity cavity);
G2Pair g2_from_amplitudes(const AmplitudeState& s);

/// Threshold below which g2 counts as strong antibunching.
inline constexpr double kStrongAntibunching = 1e-2;

}  // namespace blockade
