#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "blockade/model.hpp"

namespace blockade {

/// Parses a flat JSON parameter object.
///
/// Recognised keys: delta, lambda_gain, theta, phi, hop_J, kappa, drive_E,
/// g_om (units of omega_m; angles in radians) and driven_cavity (1 or 2).
/// Rate keys may instead carry a `_hz` suffix (e.g. "kappa_hz"), given in
/// rad/s and divided by omega_m_hz. An "omega_m_hz" key in the object
/// overrides the argument. Absent keys keep the value from `base`.
SystemParams params_from_json(std::string_view json, const SystemParams& base = {},
                              double omega_m_hz = kDefaultOmegaMHz);

SystemParams load_params(const std::filesystem::path& path, const SystemParams& base = {},
                         double omega_m_hz = kDefaultOmegaMHz);

/// Flat JSON object with every field plus the derived "mu".
std::string params_to_json(const SystemParams& p, int indent = 2);

}  // namespace blockade
