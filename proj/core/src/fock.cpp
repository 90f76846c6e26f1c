#include "blockade/fock.hpp"

#include <cmath>
#include <string>

#include "blockade/error.hpp"

namespace blockade {

FockBasis::FockBasis(int n_max_1, int n_max_2)
    : n_max_1_(n_max_1), n_max_2_(n_max_2) {
  if (n_max_1 < 1 || n_max_2 < 1) {
    throw Error(ErrorCode::invalid_cutoff,
                "Fock cutoffs must be >= 1, got (" + std::to_string(n_max_1) +
                    ", " + std::to_string(n_max_2) + ")");
  }
}

std::size_t FockBasis::index(FockState s) const {
  if (!contains(s)) {
    throw Error(ErrorCode::dimension_mismatch,
                "state |" + std::to_string(s.n1) + "," + std::to_string(s.n2) +
                    "> lies outside the truncated basis");
  }
  return static_cast<std::size_t>(s.n1 * (n_max_2_ + 1) + s.n2);
}

FockState FockBasis::state(std::size_t flat) const {
  if (flat >= dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "flat index " + std::to_string(flat) + " out of range");
  }
  const auto stride = static_cast<std::size_t>(n_max_2_ + 1);
  return {static_cast<int>(flat / stride), static_cast<int>(flat % stride)};
}

std::vector<FockState> FockBasis::states_up_to(int max_total) const {
  std::vector<FockState> out;
  for (std::size_t k = 0; k < dim(); ++k) {
    const auto s = state(k);
    if (s.n1 + s.n2 <= max_total) out.push_back(s);
  }
  return out;
}

ComplexOperator annihilation(int n_max) {
  if (n_max < 1) {
    throw Error(ErrorCode::invalid_cutoff,
                "annihilation operator needs n_max >= 1, got " +
                    std::to_string(n_max));
  }
  ComplexOperator a = ComplexOperator::Zero(n_max + 1, n_max + 1);
  for (int k = 1; k <= n_max; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
  const auto ra = a.rows(), ca = a.cols();
  const auto rb = b.rows(), cb = b.cols();
  ComplexOperator out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

TwoModeOps two_mode_ops(const FockBasis& basis) {
  const auto id1 = ComplexOperator::Identity(basis.n_max_1() + 1, basis.n_max_1() + 1);
  const auto id2 = ComplexOperator::Identity(basis.n_max_2() + 1, basis.n_max_2() + 1);
  return {tensor(annihilation(basis.n_max_1()), id2),
          tensor(id1, annihilation(basis.n_max_2()))};
}

ComplexOperator number(const ComplexOperator& a) { return a.adjoint() * a; }

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b) {
  return a * b - b * a;
}

double hermiticity_error(const ComplexOperator& op) {
  if (op.rows() != op.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "operator is not square");
  }
  if (op.size() == 0) return 0.0;
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexOperator& op, double tol) {
  return hermiticity_error(op) <= tol;
}

}  // namespace blockade
