#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "blockade/error.hpp"
#include "blockade/optimize.hpp"
#include "oracles.hpp"

using namespace blockade;

namespace {

RootSearchOptions fast() {
  RootSearchOptions o;
  o.g2_cutoff = 0;
  o.compare_printed_formula = false;
  return o;
}

double nearest(const std::vector<OptimalPair>& pairs, double delta, double lambda) {
  double best = HUGE_VAL;
  for (const auto& r : pairs) {
    best = std::min(best, std::hypot(r.delta_opt - delta, r.lambda_opt - lambda));
  }
  return best;
}

}  // namespace

TEST(Optimize, ResidualWithoutDriveIsGainTerm) {
  SystemParams p = weak_params();
  p.drive_E = 1e-30;
  const complex r = target_residual(1e-3, 1e-6, p, Cavity::first);
  EXPECT_GT(std::abs(r), 1e-6);
}

TEST(Optimize, ResidualCoherentTwoPhotonAmplitude) {
  SystemParams p = weak_params();
  p.hop_J = p.g_om = 0.0;
  const double delta = 2e-3;
  const complex lam{delta, 0.5 * p.kappa};
  const complex expected = p.drive_E * p.drive_E / (std::sqrt(2.0) * lam * lam);
  const complex r = target_residual(delta, 0.0, p, Cavity::first);
  EXPECT_NEAR(std::abs(r), std::abs(expected), 1e-12 * std::abs(expected));
  EXPECT_GT(std::abs(r), 0.0);
}

TEST(Optimize, ResidualSmallAtPublishedWeakPair) {
  const SystemParams p = weak_params();
  const double at_pair = std::abs(target_residual(0.73e-4, 0.93e-6, p, Cavity::first));
  const double no_gain = std::abs(target_residual(0.73e-4, 0.0, p, Cavity::first));
  EXPECT_LE(at_pair, 1e-2 * no_gain);
}

TEST(Optimize, ResidualRequiresZeroPhases) {
  SystemParams p = weak_params();
  p.phi = 0.5;
  EXPECT_THROW((void)target_residual(0.0, 0.0, p, Cavity::first), Error);
  EXPECT_THROW((void)find_optimal_pairs(p, Cavity::first, default_grid(Regime::weak)), Error);
}

TEST(Optimize, WeakCavityOneRoots) {
  const SystemParams p = weak_params();
  const SearchGrid grid{-0.01, 0.01, -5e-6, 5e-6};
  const auto rs = find_optimal_pairs(p, Cavity::first, grid, fast());
  EXPECT_GE(rs.pairs.size(), 3u);
  // Published (-0.73e-4, 0.93e-6) on the mirrored axis.
  const double d = 0.73e-4, l = 0.93e-6;
  EXPECT_LE(nearest(rs.pairs, d, l) / std::hypot(d, l), 0.3);
  for (std::size_t i = 1; i < rs.pairs.size(); ++i) {
    EXPECT_LT(rs.pairs[i - 1].delta_opt, rs.pairs[i].delta_opt);
  }
}

TEST(Optimize, StrongCavityOneRootNearPublishedPair) {
  const SystemParams p = strong_params();
  // Published delta in [0, 0.1] on the mirrored axis.
  const SearchGrid grid{-0.1, 0.0, -5e-6, 5e-6};
  const auto rs = find_optimal_pairs(p, Cavity::first, grid, fast());
  EXPECT_LE(nearest(rs.pairs, -0.024, 1.1e-6) / std::hypot(0.024, 1.1e-6), 0.3);
}

TEST(Optimize, NoDriveNoRoots) {
  SystemParams p = weak_params();
  p.drive_E = 0.0;
  const auto rs = find_optimal_pairs(p, Cavity::first, default_grid(Regime::weak));
  EXPECT_TRUE(rs.no_roots());
}

TEST(Optimize, RootsReevaluateBelowTolerance) {
  for (const SystemParams& p : {weak_params(), strong_params()}) {
    for (Cavity c : {Cavity::first, Cavity::second}) {
      const auto rs = find_optimal_pairs(p, c, default_grid(regime(p)), fast());
      EXPECT_FALSE(rs.no_roots());
      for (const auto& r : rs.pairs) {
        const double res = std::abs(target_residual(r.delta_opt, r.lambda_opt, p, c));
        EXPECT_LE(res, 1e-10 * p.drive_E * p.drive_E);
        EXPECT_EQ(res, r.residual);
      }
    }
  }
}

TEST(Optimize, MatchesBisectionOracle) {
  for (const SystemParams& p : {weak_params(), strong_params()}) {
    const SearchGrid grid = default_grid(regime(p));
    for (Cavity c : {Cavity::first, Cavity::second}) {
      const auto rs = find_optimal_pairs(p, c, grid, fast());
      const auto ref =
          oracle::bisection_roots(p, c, grid.delta_lo, grid.delta_hi, grid.lambda_lo, grid.lambda_hi);
      EXPECT_EQ(rs.pairs.size(), ref.size()) << "cavity " << index_of(c);
      for (const auto& r : ref) {
        EXPECT_LE(nearest(rs.pairs, r.delta, r.lambda), 1e-8)
            << "oracle root " << r.delta << ", " << r.lambda;
      }
    }
  }
}

TEST(Optimize, StableUnderGridRefinement) {
  const SystemParams p = strong_params();
  SearchGrid grid = default_grid(Regime::strong);
  const auto coarse = find_optimal_pairs(p, Cavity::first, grid, fast());
  grid.n_delta *= 2;
  grid.n_lambda *= 2;
  const auto fine = find_optimal_pairs(p, Cavity::first, grid, fast());
  ASSERT_EQ(coarse.pairs.size(), fine.pairs.size());
  for (const auto& r : fine.pairs) EXPECT_LE(nearest(coarse.pairs, r.delta_opt, r.lambda_opt), 1e-8);
}

TEST(Optimize, PrintedFormulaRootsAgree) {
  RootSearchOptions o = fast();
  o.compare_printed_formula = true;
  for (const SystemParams& p : {weak_params(), strong_params()}) {
    const auto rs = find_optimal_pairs(p, Cavity::first, default_grid(regime(p)), o);
    EXPECT_EQ(rs.printed_formula_pairs.size(), rs.pairs.size());
    EXPECT_FALSE(rs.printed_formula_differs);
  }
}

TEST(Optimize, EveryRootCarriesMasterEquationCheck) {
  const SystemParams p = weak_params();
  RootSearchOptions o;
  o.compare_printed_formula = false;
  const auto rs = find_optimal_pairs(p, Cavity::first, default_grid(Regime::weak), o);
  ASSERT_FALSE(rs.no_roots());
  for (const auto& r : rs.pairs) {
    EXPECT_TRUE(r.g2_check.has_value());
    EXPECT_TRUE(r.mechanism.has_value());
  }
}

TEST(Optimize, EveryRootIsStronglyAntibunchedInMasterEquation) {
  for (const SystemParams& p : {weak_params(), strong_params()}) {
    RootSearchOptions o;
    o.compare_printed_formula = false;
    const auto rs = find_optimal_pairs(p, Cavity::first, default_grid(regime(p)), o);
    for (const auto& r : rs.pairs) {
      EXPECT_LE(r.g2_check.value_or(HUGE_VAL), kStrongAntibunching)
          << "root (" << r.delta_opt << ", " << r.lambda_opt << ")";
    }
  }
}

TEST(Optimize, DeterministicAcrossThreadCounts) {
  RootSearchOptions a = fast(), b = fast();
  a.threads = 1;
  b.threads = 3;
  const SystemParams p = strong_params();
  const auto ra = find_optimal_pairs(p, Cavity::second, default_grid(Regime::strong), a);
  const auto rb = find_optimal_pairs(p, Cavity::second, default_grid(Regime::strong), b);
  ASSERT_EQ(ra.pairs.size(), rb.pairs.size());
  for (std::size_t i = 0; i < ra.pairs.size(); ++i) {
    EXPECT_EQ(ra.pairs[i].delta_opt, rb.pairs[i].delta_opt);
    EXPECT_EQ(ra.pairs[i].lambda_opt, rb.pairs[i].lambda_opt);
  }
}

TEST(Optimize, GridValidation) {
  EXPECT_THROW((SearchGrid{0.1, -0.1, -1e-6, 1e-6}.validate()), Error);
  EXPECT_THROW((SearchGrid{-0.1, 0.1, 1e-6, 1e-6}.validate()), Error);
  SearchGrid g{-0.1, 0.1, -1e-6, 1e-6};
  g.n_delta = 3;
  try {
    g.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_grid);
  }
}

TEST(Optimize, DefaultGrids) {
  const auto w = default_grid(Regime::weak);
  EXPECT_EQ(w.delta_lo, -0.01);
  EXPECT_EQ(w.delta_hi, 0.01);
  const auto s = default_grid(Regime::strong);
  // Published strong axis [-0.02, 0.1] mirrored.
  EXPECT_EQ(s.delta_lo, -0.1);
  EXPECT_EQ(s.delta_hi, 0.02);
  EXPECT_EQ(s.lambda_lo, -5e-6);
  EXPECT_EQ(s.lambda_hi, 5e-6);
}

TEST(Optimize, ClassifyStrongPlusResonance) {
  OptimalPair pair;
  pair.delta_opt = -0.056;
  const auto call = classify_mechanism(pair, strong_params());
  EXPECT_EQ(call.mechanism, Mechanism::cpb);
  EXPECT_TRUE(call.near_plus);
  EXPECT_FALSE(call.near_minus);
}

TEST(Optimize, ClassifyWeakPair) {
  OptimalPair pair;
  pair.delta_opt = 0.73e-4;
  EXPECT_EQ(classify_mechanism(pair, weak_params()).mechanism, Mechanism::ucpb);
}

TEST(Optimize, ClassifyDegenerateHopping) {
  SystemParams p = strong_params();
  p.hop_J = 0.0;
  OptimalPair pair;
  pair.delta_opt = -p.mu();
  const auto call = classify_mechanism(pair, p);
  EXPECT_EQ(call.mechanism, Mechanism::cpb);
  EXPECT_TRUE(call.near_plus);
  EXPECT_TRUE(call.near_minus);
}

TEST(Optimize, ClassifyStrongFarFromResonance) {
  OptimalPair pair;
  pair.delta_opt = -0.0823;
  EXPECT_EQ(classify_mechanism(pair, strong_params()).mechanism, Mechanism::ucpb);
}

TEST(Optimize, JsonSchema) {
  OptimalPair pr{-0.024, 1.1e-6, 1e-20, Cavity::first, 7e-6, Mechanism::cpb};
  OptimalPair bare{0.01, -1e-7, 2e-20, Cavity::second, std::nullopt, std::nullopt};
  const auto j = nlohmann::json::parse(pairs_to_json({pr, bare}, true, -1));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_DOUBLE_EQ(j[0]["delta_opt"].get<double>(), 0.024);
  EXPECT_EQ(j[0]["mechanism"], "CPB");
  EXPECT_EQ(j[0]["cavity"], 1);
  EXPECT_DOUBLE_EQ(j[0]["g2_check"].get<double>(), 7e-6);
  EXPECT_TRUE(j[1]["g2_check"].is_null());
  EXPECT_EQ(j[1]["cavity"], 2);
  for (const char* key : {"delta_opt", "lambda_opt", "residual", "cavity", "g2_check", "mechanism"}) {
    EXPECT_TRUE(j[0].contains(key)) << key;
  }
  const auto plain = nlohmann::json::parse(pairs_to_json({pr}, false, -1));
  EXPECT_DOUBLE_EQ(plain[0]["delta_opt"].get<double>(), -0.024);
}
