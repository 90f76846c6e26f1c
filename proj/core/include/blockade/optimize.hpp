#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/amplitude.hpp"

namespace blockade {

enum class Mechanism { cpb, ucpb };
std::string_view to_string(Mechanism m) noexcept;

/// A (delta, lambda) pair at which the two-photon amplitude of `cavity`
/// vanishes. delta_opt uses the Hamiltonian convention.
struct OptimalPair {
  double delta_opt = 0.0;
  double lambda_opt = 0.0;
  double residual = 0.0;  ///< |c20| (cavity 1) or |c02| (cavity 2) at the root
  Cavity cavity = Cavity::first;
  std::optional<double> g2_check;  ///< master-equation g2 of `cavity` at the root
  std::optional<Mechanism> mechanism;
};

struct SearchGrid {
  double delta_lo;
  double delta_hi;
  double lambda_lo;
  double lambda_hi;
  int n_delta = 48;
  int n_lambda = 6;

  /// Throws Error(invalid_grid) unless lo < hi and both counts >= 4.
  void validate() const;
};

/// Plotted ranges of the published figures, mapped to the Hamiltonian
/// convention: weak delta in [-0.01, 0.01], strong delta in [-0.1, 0.02];
/// lambda in [-5e-6, 5e-6] for both.
SearchGrid default_grid(Regime r);

/// c20 (cavity 1) or c02 (cavity 2) of steady_amplitudes() at (delta, lambda)
/// with every other parameter taken from `p`. Requires theta = phi = 0.
complex target_residual(double delta, double lambda, const SystemParams& p, Cavity cavity);

/// Same residual from the published closed forms, evaluated on the mirrored
/// axis so that `delta` is still in the Hamiltonian convention.
complex printed_formula_residual(double delta, double lambda, const SystemParams& p,
                                 Cavity cavity);

struct RootSearchOptions {
  double fd_step = 1e-9;
  int max_iterations = 100;
  int max_halvings = 20;
  double dedupe_radius = 1e-8;
  /// Converged once |residual| <= residual_scale * E^2.
  double residual_scale = 1e-10;
  /// Fock cutoff of the master-equation check; 0 skips it.
  int g2_cutoff = 4;
  /// Also search the printed closed forms and compare the two root sets.
  bool compare_printed_formula = true;
  /// Worker threads; 0 uses BLOCKADE_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

struct RootSearch {
  std::vector<OptimalPair> pairs;
  std::vector<OptimalPair> printed_formula_pairs;
  /// Some root of one set has no partner within 1e-6 in the other.
  bool printed_formula_differs = false;

  bool no_roots() const noexcept { return pairs.empty(); }
};

/// Multi-start damped Newton on (delta, lambda) -> (Re r, Im r) with a
/// central-difference Jacobian. Start points form an n_delta x n_lambda
/// lattice over the grid; diverging starts are dropped and converged roots
/// inside the grid are deduplicated and sorted by delta.
RootSearch find_optimal_pairs(const SystemParams& p, Cavity cavity, const SearchGrid& grid,
                              const RootSearchOptions& opts = {});

/// Distance threshold, in units of kappa, for calling a root conventional.
inline constexpr double kCpbProximity = 5.0;

struct MechanismCall {
  Mechanism mechanism;
  bool near_plus;   ///< within kCpbProximity kappa of the mu + J location
  bool near_minus;  ///< within kCpbProximity kappa of the mu - J location
};

/// CPB when the system is in the strong regime and the root sits within
/// 5 kappa of a conventional-blockade location (-(mu +/- J) in the
/// Hamiltonian convention); UCPB otherwise.
MechanismCall classify_mechanism(const OptimalPair& pair, const SystemParams& p);

/// JSON array of {delta_opt, lambda_opt, residual, cavity, g2_check,
/// mechanism}. With flip_axis, delta_opt is emitted on the mirrored axis.
std::string pairs_to_json(const std::vector<OptimalPair>& pairs, bool flip_axis = false,
                          int indent = 2);

}  // namespace blockade
