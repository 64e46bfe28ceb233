#include "divfano/enumerate.hpp"
#include "divfano/json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace divfano
{

namespace
{

std::size_t table_width(const EnumerationResult &result)
{
    if (!result.systems.empty())
        return result.systems.front().size();
    return static_cast<std::size_t>(std::max(result.query.num_weights, 0));
}

nlohmann::json query_to_json(const EnumerationQuery &q)
{
    nlohmann::json j;
    j["num_weights"] = q.num_weights;
    j["index"] = q.index;
    j["d_max"] = q.d_max ? nlohmann::json(*q.d_max) : nlohmann::json(nullptr);
    j["require_well_formed"] = q.require_well_formed;
    j["exclude_linear_cone"] = q.exclude_linear_cone;
    return j;
}

EnumerationQuery query_from_json(const nlohmann::json &j)
{
    EnumerationQuery q;
    q.num_weights = j.at("num_weights").get<int>();
    q.index = j.at("index").get<Int>();
    if (!j.at("d_max").is_null())
        q.d_max = j.at("d_max").get<Int>();
    q.require_well_formed = j.at("require_well_formed").get<bool>();
    q.exclude_linear_cone = j.at("exclude_linear_cone").get<bool>();
    return q;
}

} // namespace

std::string render_table(const EnumerationResult &result, TableFormat format)
{
    std::ostringstream os;
    switch (format) {
    case TableFormat::tsv:
        os << "weights\tdegree\n";
        for (const auto &ws : result.systems) {
            for (std::size_t i = 0; i < ws.size(); ++i)
                os << (i ? " " : "") << ws.weight(i);
            os << '\t' << ws.degree() << '\n';
        }
        break;
    case TableFormat::markdown: {
        const std::size_t width = table_width(result);
        os << '|';
        for (std::size_t i = 0; i < width; ++i)
            os << " a_" << i << " |";
        os << " d |\n|";
        for (std::size_t i = 0; i <= width; ++i)
            os << "---|";
        os << '\n';
        std::vector<const WeightSystem *> rows;
        for (const auto &ws : result.systems)
            rows.push_back(&ws);
        std::sort(rows.begin(), rows.end(), [](const WeightSystem *a, const WeightSystem *b) {
            if (a->weights() != b->weights())
                return a->weights() < b->weights();
            return a->degree() < b->degree();
        });
        for (const WeightSystem *ws : rows) {
            os << '|';
            for (Int a : ws->weights())
                os << ' ' << a << " |";
            os << ' ' << ws->degree() << " |\n";
        }
        break;
    }
    case TableFormat::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &ws : result.systems)
            arr.push_back(to_json(ws));
        os << arr.dump(2) << '\n';
        break;
    }
    }
    return os.str();
}

void save_catalog(const EnumerationResult &result, const std::filesystem::path &path)
{
    nlohmann::json j;
    j["version"] = catalog_version;
    j["query"] = query_to_json(result.query);
    j["complete"] = result.complete;
    j["systems"] = nlohmann::json::array();
    for (const auto &ws : result.systems)
        j["systems"].push_back(to_json(ws));
    std::ofstream out(path);
    if (!out)
        throw catalog_error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw catalog_error("write failed for " + path.string());
}

EnumerationResult load_catalog(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw catalog_error("cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw catalog_error(path.string() + ": parse error at byte " + std::to_string(e.byte) + ": "
                            + e.what());
    }
    try {
        const int version = j.at("version").get<int>();
        if (version != catalog_version)
            throw catalog_error(path.string() + ": unsupported catalog version "
                                + std::to_string(version));
        EnumerationResult r;
        r.query = query_from_json(j.at("query"));
        r.complete = j.at("complete").get<bool>();
        for (const auto &s : j.at("systems"))
            r.systems.push_back(weight_system_from_json(s));
        if (!std::is_sorted(r.systems.begin(), r.systems.end())
            || std::adjacent_find(r.systems.begin(), r.systems.end()) != r.systems.end())
            throw catalog_error(path.string() + ": systems are not in canonical order");
        return r;
    } catch (const nlohmann::json::exception &e) {
        throw catalog_error(path.string() + ": malformed catalog: " + e.what());
    } catch (const validation_error &e) {
        throw catalog_error(path.string() + ": invalid weight system: " + e.what());
    }
}

std::optional<EnumerationResult> load_catalog(const std::filesystem::path &path,
                                              const EnumerationQuery &expected)
{
    EnumerationResult r = load_catalog(path);
    if (!(r.query == expected))
        return std::nullopt;
    return r;
}

} // namespace divfano
