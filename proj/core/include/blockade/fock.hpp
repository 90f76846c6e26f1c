#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace blockade {

using complex = std::complex<double>;

/// Dense complex matrix acting on a truncated Fock space.
using ComplexOperator = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct FockState {
  int n1 = 0;
  int n2 = 0;

  friend bool operator==(const FockState&, const FockState&) = default;
};

/// Truncated two-mode Fock basis |n1, n2>, 0 <= n_j <= n_max_j.
///
/// Flat index is mode-1 major: flat = n1 * (n_max_2 + 1) + n2. Every operator
/// builder and serialized state in the library uses this ordering, which is
/// also the ordering produced by tensor(A_mode1, B_mode2).
class FockBasis {
 public:
  FockBasis(int n_max_1, int n_max_2);

  int n_max_1() const noexcept { return n_max_1_; }
  int n_max_2() const noexcept { return n_max_2_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>((n_max_1_ + 1) * (n_max_2_ + 1));
  }

  bool contains(FockState s) const noexcept {
    return s.n1 >= 0 && s.n2 >= 0 && s.n1 <= n_max_1_ && s.n2 <= n_max_2_;
  }
  std::size_t index(FockState s) const;
  std::size_t index(int n1, int n2) const { return index(FockState{n1, n2}); }
  FockState state(std::size_t flat) const;

  /// States with n1 + n2 <= max_total, in flat-index order.
  std::vector<FockState> states_up_to(int max_total) const;

  friend bool operator==(const FockBasis&, const FockBasis&) = default;

 private:
  int n_max_1_;
  int n_max_2_;
};

/// Single-mode annihilation operator on {|0>, ..., |n_max>}.
ComplexOperator annihilation(int n_max);

/// Kronecker product A (x) B; A acts on mode 1, B on mode 2.
ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);

struct TwoModeOps {
  ComplexOperator a1;
  ComplexOperator a2;
};

TwoModeOps two_mode_ops(const FockBasis& basis);

ComplexOperator number(const ComplexOperator& a);
ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b);

double hermiticity_error(const ComplexOperator& op);
bool is_hermitian(const ComplexOperator& op, double tol = 1e-12);

}  // namespace blockade
