#include "blockade/params_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "blockade/error.hpp"
#include "json_support.hpp"

namespace blockade {
namespace {

using nlohmann::json;

struct RateField {
  const char* key;
  double SystemParams::*member;
};

constexpr std::array<RateField, 6> kRateFields{{
    {"delta", &SystemParams::delta},
    {"lambda_gain", &SystemParams::lambda_gain},
    {"hop_J", &SystemParams::hop_J},
    {"kappa", &SystemParams::kappa},
    {"drive_E", &SystemParams::drive_E},
    {"g_om", &SystemParams::g_om},
}};

constexpr std::array<RateField, 2> kAngleFields{{
    {"theta", &SystemParams::theta},
    {"phi", &SystemParams::phi},
}};

double number_at(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::invalid_params, "parameter '" + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace

namespace detail {

json params_json(const SystemParams& p) {
  return json{
      {"delta", p.delta},     {"lambda_gain", p.lambda_gain},
      {"theta", p.theta},     {"phi", p.phi},
      {"hop_J", p.hop_J},     {"kappa", p.kappa},
      {"drive_E", p.drive_E}, {"g_om", p.g_om},
      {"mu", p.mu()},         {"driven_cavity", static_cast<int>(p.driven)},
  };
}

}  // namespace detail

SystemParams params_from_json(std::string_view text, const SystemParams& base,
                              double omega_m_hz) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::invalid_params, std::string("malformed parameter JSON: ") + e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::invalid_params, "parameter file must hold a JSON object");
  }

  if (obj.contains("omega_m_hz")) omega_m_hz = number_at(obj, "omega_m_hz");
  if (!(omega_m_hz > 0.0)) throw Error(ErrorCode::invalid_params, "omega_m_hz must be > 0");

  SystemParams p = base;
  std::size_t consumed = obj.contains("omega_m_hz") ? 1 : 0;

  for (const auto& f : kRateFields) {
    const std::string key = f.key;
    const std::string hz = key + "_hz";
    const bool plain = obj.contains(key);
    const bool scaled = obj.contains(hz);
    if (plain && scaled) {
      throw Error(ErrorCode::invalid_params, "both '" + key + "' and '" + hz + "' given");
    }
    if (plain) p.*f.member = number_at(obj, key), ++consumed;
    if (scaled) p.*f.member = number_at(obj, hz) / omega_m_hz, ++consumed;
  }
  for (const auto& f : kAngleFields) {
    if (obj.contains(f.key)) p.*f.member = number_at(obj, f.key), ++consumed;
  }
  if (obj.contains("driven_cavity")) {
    const double c = number_at(obj, "driven_cavity");
    if (c != 1.0 && c != 2.0) {
      throw Error(ErrorCode::invalid_params, "driven_cavity must be 1 or 2");
    }
    p.driven = c == 1.0 ? Cavity::first : Cavity::second;
    ++consumed;
  }
  // "mu" is derived; accept it when it is consistent so emitted files load back.
  if (obj.contains("mu")) {
    if (std::abs(number_at(obj, "mu") - p.mu()) > 1e-12 * std::max(1.0, p.mu())) {
      throw Error(ErrorCode::invalid_params, "'mu' is derived from g_om and disagrees with it");
    }
    ++consumed;
  }
  if (consumed != obj.size()) {
    for (const auto& [key, _] : obj.items()) {
      bool known = key == "omega_m_hz" || key == "driven_cavity" || key == "mu";
      for (const auto& f : kRateFields) {
        known = known || key == f.key || key == std::string(f.key) + "_hz";
      }
      for (const auto& f : kAngleFields) known = known || key == f.key;
      if (!known) throw Error(ErrorCode::invalid_params, "unknown parameter key '" + key + "'");
    }
  }

  p.validate();
  return p;
}

SystemParams load_params(const std::filesystem::path& path, const SystemParams& base,
                         double omega_m_hz) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return params_from_json(buf.str(), base, omega_m_hz);
}

std::string params_to_json(const SystemParams& p, int indent) {
  return detail::params_json(p).dump(indent);
}

}  // namespace blockade
