#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string_view>

#include "blockade/model.hpp"

namespace blockade {

/// Generator of d rho/dt = L vec(rho) with column-stacking vectorization:
/// vec(A X B) = (B^T (x) A) vec(X). `matrix` is d^2 x d^2 for a Hilbert
/// space of dimension d.
struct Superoperator {
  std::size_t hilbert_dim = 0;
  ComplexOperator matrix;
};

/// Largest d^2 accepted without LiouvillianOptions::allow_large.
inline constexpr std::size_t kMaxSuperDim = 10000;

struct LiouvillianOptions {
  bool allow_large = false;
};

/// L rho = -i [H1, rho] + sum_j kappa/2 (2 a_j rho a_j^+ - a_j^+ a_j rho - rho a_j^+ a_j)
Superoperator liouvillian(const SystemParams& p, const FockBasis& basis,
                          LiouvillianOptions opts = {});

/// max_k |sum_i L(ii, k)|: zero for a trace-preserving generator.
double trace_preservation_error(const Superoperator& l);

ComplexVector vectorize(const ComplexOperator& rho);
ComplexOperator unvectorize(const ComplexVector& v, std::size_t dim);

struct Physicality {
  double trace_error;        ///< |Tr rho - 1|
  double hermiticity_error;  ///< max |rho - rho^+|
  double min_eigenvalue;     ///< of the Hermitian part
};

class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexOperator rho);

  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexOperator& matrix() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  complex trace() const { return rho_.trace(); }

  Physicality physicality() const;

  /// Throws Error(unphysical_state) unless trace and Hermiticity errors are
  /// within `tol` and the smallest eigenvalue is >= -eig_tol.
  void check_physical(double tol = 1e-10, double eig_tol = 1e-8) const;

  complex expectation(const ComplexOperator& op) const;

 private:
  ComplexOperator rho_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct SteadyStateReport {
  DensityMatrix rho;
  double asymmetry;  ///< max |rho - rho^+| before Hermitization
  double residual;   ///< max |L vec(rho)| after Hermitization
};

/// Solves L rho = 0 with Tr rho = 1 by replacing the first row of L with the
/// trace functional. The result is Hermitized and checked for physicality.
SteadyStateReport steady_state_report(const Superoperator& l);
DensityMatrix steady_state(const Superoperator& l);

struct EvolveOptions {
  /// Reject dt > 0.1 / ||L||_inf before integrating.
  bool enforce_step_bound = true;
  /// Abort when |Tr rho(t) - Tr rho(0)| exceeds this.
  double max_trace_drift = 1e-6;
};

/// Fixed-step classical RK4 on d vec(rho)/dt = L vec(rho). The step is
/// shrunk so that an integer number of steps lands on t_final.
DensityMatrix evolve(const Superoperator& l, const DensityMatrix& rho0, double t_final,
                     double dt, EvolveOptions opts = {});

inline constexpr double kEmptyModeThreshold = 1e-30;

struct ModeStatistics {
  double n;   ///< <a^+ a>
  double g2;  ///< <a^+ a^+ a a> / <a^+ a>^2
};

ModeStatistics mode_statistics(const DensityMatrix& rho, const ComplexOperator& a);

struct CorrelationResult {
  double g2_1;
  double g2_2;
  double n1;
  double n2;
};

CorrelationResult g2_from_rho(const DensityMatrix& rho, const ComplexOperator& a1,
                              const ComplexOperator& a2);

enum class PhotonStatistics { antibunched, poissonian, bunched };

/// bunched iff g2 > 1, antibunched iff g2 < 1.
PhotonStatistics classify_statistics(double g2) noexcept;
std::string_view to_string(PhotonStatistics s) noexcept;

/// Steady state of `p` on a cutoff x cutoff basis with its correlations.
/// A mode with <n> below kEmptyModeThreshold has no g2 (empty optional).
struct MasterEquationPoint {
  SteadyStateReport state;
  double n1;
  double n2;
  std::optional<double> g2_1;
  std::optional<double> g2_2;
};

MasterEquationPoint solve_master_equation(const SystemParams& p, int cutoff);

/// Binary dump: 16-byte header {"RHO1", uint32 0, uint64 dim}, then dim*dim
/// row-major (re, im) float64 pairs, all little-endian.
void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho);
DensityMatrix read_density_matrix(const std::filesystem::path& path);

}  // namespace blockade
