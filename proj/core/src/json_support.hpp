#pragma once

#include <json.hpp>

#include "blockade/model.hpp"

namespace blockade::detail {

nlohmann::json params_json(const SystemParams& p);

}  // namespace blockade::detail
