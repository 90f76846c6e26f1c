#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "blockade/error.hpp"
#include "blockade/model.hpp"
#include "oracles.hpp"

using namespace blockade;

TEST(Model, WeakPreset) {
  const SystemParams p = weak_params();
  EXPECT_NEAR(p.kappa, 0.002, 1e-15);
  EXPECT_NEAR(p.hop_J, 0.95 * 0.002, 1e-15);
  EXPECT_NEAR(p.hop_J, 1.9e-3, 1e-15);
  EXPECT_NEAR(p.drive_E, 4.0e-5, 1e-18);
  EXPECT_DOUBLE_EQ(p.g_om, 0.042);
  EXPECT_NEAR(p.mu(), 1.764e-3, 1e-15);
  EXPECT_EQ(p.theta, 0.0);
  EXPECT_EQ(p.phi, 0.0);
  EXPECT_EQ(regime(p), Regime::weak);
}

TEST(Model, StrongPreset) {
  const SystemParams p = strong_params();
  EXPECT_NEAR(p.kappa, 0.002, 1e-15);
  EXPECT_NEAR(p.hop_J, 0.016, 1e-15);
  EXPECT_NEAR(p.mu(), 0.04, 1e-15);
  EXPECT_NEAR(p.drive_E, 4.0e-5, 1e-18);
  EXPECT_EQ(regime(p), Regime::strong);
}

TEST(Model, MuIsExactlyGSquared) {
  SystemParams p = weak_params();
  p.g_om = 0.1234;
  EXPECT_EQ(p.mu(), 0.1234 * 0.1234);
}

TEST(Model, ValidateRejectsBadParams) {
  SystemParams p = weak_params();
  p.kappa = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = weak_params();
  p.drive_E = -1e-6;
  EXPECT_THROW(p.validate(), Error);
  p = weak_params();
  p.g_om = -0.1;
  EXPECT_THROW(p.validate(), Error);
  p = weak_params();
  p.delta = std::nan("");
  EXPECT_THROW(p.validate(), Error);
}

TEST(Model, DiagonalWithoutDriveGainHopping) {
  SystemParams p = weak_params();
  p.drive_E = p.lambda_gain = p.hop_J = 0.0;
  p.delta = 3e-3;
  const FockBasis b(2, 2);
  const ComplexOperator h = effective_hamiltonian(p, b);
  EXPECT_NEAR((h - ComplexOperator(h.diagonal().asDiagonal())).norm(), 0.0, 1e-18);
  EXPECT_NEAR(h(b.index(1, 0), b.index(1, 0)).real(), -p.delta - p.mu(), 1e-16);
}

TEST(Model, GainMatrixElement) {
  SystemParams p = weak_params();
  p.lambda_gain = 0.93e-6;
  const FockBasis b(2, 2);
  const ComplexOperator h = effective_hamiltonian(p, b);
  const complex v = h(b.index(2, 0), b.index(0, 0));
  EXPECT_NEAR(v.real(), 0.0, 1e-20);
  EXPECT_NEAR(v.imag(), std::sqrt(2.0) * p.lambda_gain, 1e-20);
}

TEST(Model, HoppingMatrixElements) {
  const SystemParams p = weak_params();
  const FockBasis b(2, 2);
  const ComplexOperator h = effective_hamiltonian(p, b);
  EXPECT_NEAR(std::abs(h(b.index(1, 1), b.index(0, 2)) - std::sqrt(2.0) * p.hop_J), 0.0, 1e-18);
  EXPECT_NEAR(std::abs(h(b.index(1, 1), b.index(2, 0)) - std::sqrt(2.0) * p.hop_J), 0.0, 1e-18);
}

TEST(Model, MatchesElementwiseOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    SystemParams p = oracle::random_weak(rng);
    p.theta = 3.0 * u(rng);
    p.phi = 3.0 * u(rng);
    p.driven = trial % 2 ? Cavity::second : Cavity::first;
    for (auto [m1, m2] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 3}}) {
      const ComplexOperator h = effective_hamiltonian(p, FockBasis(m1, m2));
      const ComplexOperator ref = oracle::hamiltonian(p, m1, m2);
      EXPECT_LE((h - ref).cwiseAbs().maxCoeff(), 1e-15) << "trial " << trial;
    }
  }
}

TEST(Model, HermitianForRandomDraws) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    SystemParams p = oracle::random_weak(rng);
    p.theta = 3.0 * u(rng);
    p.phi = 3.0 * u(rng);
    p.g_om = 0.3 * std::abs(u(rng));
    p.hop_J = 0.05 * std::abs(u(rng));
    EXPECT_LE(hermiticity_error(effective_hamiltonian(p, FockBasis(4, 4))), 1e-12);
  }
}

TEST(Model, ConservesPhotonNumberWithoutDriveOrGain) {
  SystemParams p = strong_params();
  p.drive_E = 0.0;
  p.lambda_gain = 0.0;
  p.delta = 0.01;
  const FockBasis b(3, 3);
  const auto ops = two_mode_ops(b);
  const ComplexOperator n = number(ops.a1) + number(ops.a2);
  EXPECT_LE(commutator(effective_hamiltonian(p, b), n).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Model, SingleExcitationEigenvalues) {
  SystemParams p = strong_params();
  p.drive_E = p.lambda_gain = 0.0;
  p.delta = 0.013;
  const FockBasis b(2, 2);
  const ComplexOperator h = effective_hamiltonian(p, b);
  Eigen::Matrix2cd block;
  const auto i10 = b.index(1, 0), i01 = b.index(0, 1);
  block << h(i10, i10), h(i10, i01), h(i01, i10), h(i01, i01);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
  const auto expected = single_excitation_energies(p);
  EXPECT_NEAR(es.eigenvalues()(0), expected[0], 1e-15);
  EXPECT_NEAR(es.eigenvalues()(1), expected[1], 1e-15);
  EXPECT_NEAR(expected[0], -p.delta - p.mu() - p.hop_J, 1e-16);
  EXPECT_NEAR(expected[1], -p.delta - p.mu() + p.hop_J, 1e-16);
}

TEST(Model, NonHermitianSinglePhotonDiagonal) {
  SystemParams p = weak_params();
  p.drive_E = p.lambda_gain = p.hop_J = p.g_om = 0.0;
  p.delta = 2e-3;
  const FockBasis b(2, 2);
  const complex v = non_hermitian_hamiltonian(p, b)(b.index(1, 0), b.index(1, 0));
  EXPECT_NEAR(v.real(), -p.delta, 1e-18);
  EXPECT_NEAR(v.imag(), -0.5 * p.kappa, 1e-18);
}

TEST(Model, AntiHermitianPartIsDecay) {
  const SystemParams p = strong_params();
  const FockBasis b(3, 3);
  const ComplexOperator h2 = non_hermitian_hamiltonian(p, b);
  const auto ops = two_mode_ops(b);
  const ComplexOperator anti = 0.5 * (h2 - h2.adjoint());
  const ComplexOperator expected = complex(0.0, -0.5 * p.kappa) * (number(ops.a1) + number(ops.a2));
  EXPECT_EQ((anti - expected).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Model, DecayFreeLimit) {
  SystemParams p = strong_params();
  p.kappa = 1e-300;
  const FockBasis b(2, 2);
  EXPECT_LE((non_hermitian_hamiltonian(p, b) - effective_hamiltonian(p, b)).cwiseAbs().maxCoeff(),
            1e-299);
}

TEST(Model, DimensionMismatch) {
  const SystemParams p = weak_params();
  const FockBasis b(2, 2);
  const auto wrong = two_mode_ops(FockBasis(3, 3));
  try {
    (void)effective_hamiltonian(p, b, wrong);
    FAIL() << "expected dimension_mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(Model, CpbDetuningsStrong) {
  const auto d = cpb_detunings(strong_params());
  EXPECT_NEAR(d.plus, 0.056, 1e-15);
  EXPECT_NEAR(d.minus, 0.024, 1e-15);
}

TEST(Model, CpbDetuningsDegenerateWithoutHopping) {
  SystemParams p = strong_params();
  p.hop_J = 0.0;
  const auto d = cpb_detunings(p);
  EXPECT_EQ(d.plus, p.mu());
  EXPECT_EQ(d.minus, p.mu());
}

TEST(Model, MirroredNegatesDetuningOnly) {
  SystemParams p = weak_params();
  p.delta = 1.5e-3;
  SystemParams m = mirrored(p);
  EXPECT_EQ(m.delta, -1.5e-3);
  m.delta = p.delta;
  EXPECT_EQ(m, p);
}
