#ifndef DIVFANO_JSON_HPP
#define DIVFANO_JSON_HPP

// JSON conversions shared by the catalog, support and report formats.

#include <json.hpp>

#include "divfano/core.hpp"

namespace divfano
{

/// {"weights": [...], "degree": d}
nlohmann::json to_json(const WeightSystem &ws);
WeightSystem weight_system_from_json(const nlohmann::json &j);

} // namespace divfano

#endif
