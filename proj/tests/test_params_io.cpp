#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "blockade/error.hpp"
#include "blockade/params_io.hpp"

using namespace blockade;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::io_failure;
}

}  // namespace

TEST(ParamsIo, RoundTripIsExact) {
  for (SystemParams p : {weak_params(), strong_params()}) {
    p.delta = -7.279569e-5;
    p.lambda_gain = 9.274522e-7;
    p.theta = 0.3;
    p.driven = Cavity::second;
    EXPECT_EQ(params_from_json(params_to_json(p)), p);
  }
}

TEST(ParamsIo, AbsentKeysKeepBase) {
  const SystemParams p = params_from_json(R"({"delta": 1e-3})", strong_params());
  SystemParams expected = strong_params();
  expected.delta = 1e-3;
  EXPECT_EQ(p, expected);
}

TEST(ParamsIo, HzKeysAreDividedByOmegaM) {
  const SystemParams p = params_from_json(
      R"({"lambda_gain_hz": 437.053, "kappa_hz": 942477.796076938, "delta_hz": -34304.2})",
      weak_params());
  EXPECT_NEAR(p.lambda_gain, 0.93e-6, 0.01e-6);
  EXPECT_NEAR(p.kappa, 0.002, 1e-12);
  EXPECT_NEAR(p.delta, -7.28e-5, 0.01e-5);
}

TEST(ParamsIo, OmegaMOverride) {
  const SystemParams p =
      params_from_json(R"({"omega_m_hz": 1000.0, "hop_J_hz": 5.0})", weak_params());
  EXPECT_DOUBLE_EQ(p.hop_J, 5e-3);
  const SystemParams q = params_from_json(R"({"hop_J_hz": 5.0})", weak_params(), 100.0);
  EXPECT_DOUBLE_EQ(q.hop_J, 5e-2);
}

TEST(ParamsIo, Errors) {
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"delta": 1, "delta_hz": 2})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"detla": 1})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json("{delta: 1", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json("[1, 2]", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"kappa": "fast"})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"kappa": 0})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"driven_cavity": 3})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)params_from_json(R"({"g_om": 0.1, "mu": 0.5})", weak_params()); }),
            ErrorCode::invalid_params);
  EXPECT_EQ(code_of([] { (void)load_params("/nonexistent/params.json"); }), ErrorCode::io_failure);
}

TEST(ParamsIo, DrivenCavityAndMu) {
  const SystemParams p = params_from_json(R"({"driven_cavity": 2, "g_om": 0.2, "mu": 0.04})",
                                          weak_params());
  EXPECT_EQ(p.driven, Cavity::second);
  EXPECT_DOUBLE_EQ(p.mu(), 0.04);
}

TEST(ParamsIo, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "blockade_params_test.json";
  {
    std::ofstream out(path);
    out << params_to_json(strong_params());
  }
  EXPECT_EQ(load_params(path), strong_params());
  std::filesystem::remove(path);
}
