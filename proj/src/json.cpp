#include "divfano/json.hpp"

namespace divfano
{

nlohmann::json to_json(const WeightSystem &ws)
{
    return nlohmann::json{{"weights", ws.weights()}, {"degree", ws.degree()}};
}

WeightSystem weight_system_from_json(const nlohmann::json &j)
{
    return WeightSystem{j.at("weights").get<std::vector<Int>>(), j.at("degree").get<Int>()};
}

} // namespace divfano
