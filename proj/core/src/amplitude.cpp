#include "blockade/amplitude.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "blockade/error.hpp"

namespace blockade {
namespace {

constexpr complex kI{0.0, 1.0};
constexpr double kSingularDet = 1e-300;

const FockBasis& two_photon_basis() {
  static const FockBasis basis(2, 2);
  return basis;
}

template <int N>
Eigen::Matrix<complex, N, 1> solve_block(const Eigen::Matrix<complex, N, N>& m,
                                         const Eigen::Matrix<complex, N, 1>& rhs,
                                         const char* name) {
  const complex det = m.determinant();
  if (!(std::abs(det) >= kSingularDet)) {
    throw Error(ErrorCode::resonance_singularity,
                std::string("resonance singularity in the ") + name + " block");
  }
  return m.fullPivLu().solve(rhs);
}

void check_denominator(complex d, const char* what) {
  if (!(std::abs(d) >= kSingularDet)) {
    throw Error(ErrorCode::resonance_singularity,
                std::string("closed-form denominator ") + what + " vanishes");
  }
}

}  // namespace

LambdaGamma lambda_gamma(const SystemParams& p) {
  const complex loss{0.0, 0.5 * p.kappa};
  return {p.delta + loss - p.mu(), p.delta + loss - 2.0 * p.mu()};
}

AmplitudeState steady_amplitudes(const SystemParams& p) {
  p.validate();
  if (!(p.drive_E > 0.0)) {
    throw Error(ErrorCode::invalid_params, "steady amplitudes need drive_E > 0");
  }

  const FockBasis& basis = two_photon_basis();
  const ComplexOperator h = non_hermitian_hamiltonian(p, basis);

  const auto vac = basis.index(0, 0);
  const std::array<std::size_t, 2> one{basis.index(1, 0), basis.index(0, 1)};
  const std::array<std::size_t, 3> two{basis.index(1, 1), basis.index(0, 2),
                                       basis.index(2, 0)};

  AmplitudeState s;

  Eigen::Matrix2cd m1;
  Eigen::Vector2cd r1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m1(i, j) = h(one[i], one[j]);
    r1(i) = -h(one[i], vac) * s.c00;
  }
  const Eigen::Vector2cd c1 = solve_block<2>(m1, r1, "one-photon");
  s.c10 = c1(0);
  s.c01 = c1(1);

  Eigen::Matrix3cd m2;
  Eigen::Vector3cd r2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m2(i, j) = h(two[i], two[j]);
    r2(i) = -(h(two[i], vac) * s.c00 + h(two[i], one[0]) * s.c10 + h(two[i], one[1]) * s.c01);
  }
  const Eigen::Vector3cd c2 = solve_block<3>(m2, r2, "two-photon");
  s.c11 = c2(0);
  s.c02 = c2(1);
  s.c20 = c2(2);

  if (p.drive_E > kWeakDriveRatio * p.kappa) {
    std::ostringstream msg;
    msg << "drive E = " << p.drive_E / p.kappa
        << " kappa is outside the weak-drive window (E <= " << kWeakDriveRatio << " kappa)";
    s.warnings.push_back(msg.str());
  }
  const double driven_one = std::abs(p.driven == Cavity::first ? s.c10 : s.c01);
  if (driven_one > 10.0 * (p.drive_E / p.kappa) * std::abs(s.c00)) {
    s.warnings.push_back("one-photon amplitude exceeds 10 E/kappa; hierarchy is doubtful");
  }
  return s;
}

double steady_residual(const SystemParams& p, const AmplitudeState& s) {
  const FockBasis& basis = two_photon_basis();
  const ComplexOperator h = non_hermitian_hamiltonian(p, basis);

  ComplexVector c = ComplexVector::Zero(static_cast<Eigen::Index>(basis.dim()));
  c(basis.index(0, 0)) = s.c00;
  c(basis.index(1, 0)) = s.c10;
  c(basis.index(0, 1)) = s.c01;
  c(basis.index(1, 1)) = s.c11;
  c(basis.index(0, 2)) = s.c02;
  c(basis.index(2, 0)) = s.c20;

  const ComplexVector hc = h * c;
  double worst = 0.0;
  for (const auto& st : basis.states_up_to(2)) {
    if (st.n1 + st.n2 == 0) continue;
    worst = std::max(worst, std::abs(hc(basis.index(st))));
  }
  return worst;
}

AmplitudeState analytic_coefficients(const SystemParams& p) {
  p.validate();
  if (p.theta != 0.0 || p.phi != 0.0) {
    throw Error(ErrorCode::unsupported_phase, "closed forms assume theta = phi = 0");
  }
  if (p.driven != Cavity::first) {
    throw Error(ErrorCode::invalid_params, "closed forms assume the drive acts on cavity 1");
  }

  const auto [L, G] = lambda_gamma(p);
  const double J = p.hop_J;
  const double E = p.drive_E;
  const double lam = p.lambda_gain;
  const double J2 = J * J;
  const double E2 = E * E;

  const complex one_den = L * L - J2;
  const complex mix_den = G * L - J2;
  check_denominator(one_den, "Lambda^2 - J^2");
  check_denominator(mix_den, "Gamma Lambda - J^2");
  check_denominator(G, "Gamma");

  const double root8 = 2.0 * std::numbers::sqrt2;

  AmplitudeState s;
  s.c01 = J * E / one_den;
  s.c10 = L * E / one_den;
  s.c11 = J * (-E2 * G - 2.0 * kI * J2 * lam + E2 * L + 2.0 * kI * lam * L * L) /
          (2.0 * mix_den * one_den);
  s.c02 = (J2 * E2 * G + J2 * E2 * L - 2.0 * kI * J2 * lam * G * L +
           2.0 * kI * lam * G * L * L * L) /
          (root8 * G * mix_den * one_den);
  s.c20 = (J2 * E2 * G - J2 * E2 * L - 2.0 * kI * J2 * lam * G * L +
           2.0 * E2 * G * L * L + 2.0 * kI * lam * G * L * L * L) /
          (root8 * G * mix_den * one_den);
  return s;
}

double g2_from_amplitudes(const AmplitudeState& s, Cavity cavity) {
  const bool first = cavity == Cavity::first;
  const double one = std::norm(first ? s.c10 : s.c01);
  const double two = std::norm(first ? s.c20 : s.c02);
  if (!(one > 0.0)) {
    throw Error(ErrorCode::undefined_correlation,
                std::string("g2 undefined: one-photon amplitude of cavity ") +
                    (first ? "1" : "2") + " is zero");
  }
  return 2.0 * two / (one * one);
}

G2Pair g2_from_amplitudes(const AmplitudeState& s) {
  return {g2_from_amplitudes(s, Cavity::first), g2_from_amplitudes(s, Cavity::second)};
}

}  // namespace blockade
