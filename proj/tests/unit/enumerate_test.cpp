#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "divfano/enumerate.hpp"
#include "divfano/json.hpp"

using namespace divfano;

namespace
{

using Row = std::pair<Int, std::vector<Int>>;

// Independent oracle: for each degree d <= d_max, pick num_weights proper
// divisors of d (non-decreasing) summing to d + index, then filter on
// well-formedness by brute-force gcds.
void oracle_rec(const std::vector<Int> &divs, std::size_t from, Int left, std::size_t slots, std::vector<Int> &cur,
                Int d, std::set<Row> &out)
{
    if (slots == 0) {
        if (left != 0)
            return;
        for (std::size_t skip = 0; skip < cur.size(); ++skip) {
            Int g = 0;
            for (std::size_t k = 0; k < cur.size(); ++k)
                if (k != skip)
                    g = std::gcd(g, cur[k]);
            if (g != 1)
                return;
        }
        out.insert({d, cur});
        return;
    }
    for (std::size_t k = from; k < divs.size(); ++k) {
        if (divs[k] * static_cast<Int>(slots) > left)
            break;
        cur.push_back(divs[k]);
        oracle_rec(divs, k, left - divs[k], slots - 1, cur, d, out);
        cur.pop_back();
    }
}

std::set<Row> oracle(int num_weights, Int index, Int d_max)
{
    std::set<Row> out;
    for (Int d = 2; d <= d_max; ++d) {
        std::vector<Int> divs;
        for (Int a = 1; a < d; ++a)
            if (d % a == 0)
                divs.push_back(a);
        std::vector<Int> cur;
        oracle_rec(divs, 0, d + index, static_cast<std::size_t>(num_weights), cur, d, out);
    }
    return out;
}

std::set<Row> rows(const EnumerationResult &r)
{
    std::set<Row> s;
    for (const auto &ws : r.systems)
        s.insert({ws.degree(), ws.weights()});
    return s;
}

EnumerationResult run(int num_weights, Int index = 1, std::optional<Int> d_max = std::nullopt)
{
    EnumerationQuery q;
    q.num_weights = num_weights;
    q.index = index;
    q.d_max = d_max;
    return enumerate(q);
}

std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("divfano_" + name);
}

} // namespace

TEST_CASE("index-1 catalogs have the expected sizes")
{
    const auto surfaces = run(4);
    CHECK(surfaces.complete);
    CHECK(rows(surfaces)
          == std::set<Row>{{3, {1, 1, 1, 1}}, {4, {1, 1, 1, 2}}, {6, {1, 1, 2, 3}}, {15, {3, 3, 5, 5}}});
    const auto threefolds = run(5);
    CHECK(threefolds.systems.size() == 30);
    CHECK(rows(threefolds).count({42, {1, 1, 6, 14, 21}}) == 1);
    CHECK(rows(threefolds).count({90, {5, 5, 18, 18, 45}}) == 1);
    CHECK(run(6).systems.size() == 661);
    CHECK(run(3).systems.size() == 1); // the conic (1,1,1:2)
}

TEST_CASE("results are sorted by degree then weights and satisfy the defining relation")
{
    const auto r = run(6);
    CHECK(std::is_sorted(r.systems.begin(), r.systems.end()));
    CHECK(std::adjacent_find(r.systems.begin(), r.systems.end()) == r.systems.end());
    for (const auto &ws : r.systems) {
        CHECK(ws.index() == 1);
        CHECK(ws.divisible());
        CHECK(validate(ws, 1).ok());
    }
    // largest fourfold, cross-checked against a separate exact-fraction search
    CHECK(r.systems.back() == WeightSystem{{6, 161, 1743, 11454, 26726, 40089}, 80178});
}

TEST_CASE("enumeration matches the divisor oracle")
{
    CHECK(rows(run(4)) == oracle(4, 1, 200));
    CHECK(rows(run(5)) == oracle(5, 1, 400));

    // fourfolds up to degree 240: the full catalog restricted, and the
    // bounded query
    std::set<Row> restricted;
    for (const auto &row : rows(run(6)))
        if (row.first <= 240)
            restricted.insert(row);
    CHECK(restricted == oracle(6, 1, 240));
    const auto bounded = run(6, 1, 240);
    CHECK_FALSE(bounded.complete);
    CHECK(rows(bounded) == restricted);
}

TEST_CASE("higher index needs a degree bound")
{
    CHECK_THROWS_AS(run(4, 2), validation_error);
    const auto r = run(4, 2, 120);
    CHECK_FALSE(r.complete);
    CHECK(rows(r) == oracle(4, 2, 120));
    CHECK(rows(run(5, 3, 80)) == oracle(5, 3, 80));
}

TEST_CASE("query validation")
{
    CHECK_THROWS_AS(run(2), validation_error);
    CHECK_THROWS_AS(run(4, 0), validation_error);
    CHECK_THROWS_AS(run(4, 1, 0), validation_error);
    EnumerationQuery q;
    q.num_weights = 4;
    q.require_well_formed = false;
    CHECK_THROWS_AS(enumerate(q), validation_error);
    q.d_max = 30;
    const auto r = enumerate(q);
    CHECK(rows(r).size() >= 4);
    CHECK(rows(r).count({6, {2, 2, 2, 1}}) == 0); // stored sorted
    CHECK(rows(r).count({6, {1, 2, 2, 2}}) == 1); // not well-formed, now allowed
}

TEST_CASE("brute force agrees on bounded weights")
{
    const auto brute = enumerate_bruteforce(4, 1, 30);
    CHECK_FALSE(brute.complete);
    CHECK(rows(brute) == rows(run(4)));
    std::set<Row> restricted;
    for (const auto &row : rows(run(5)))
        if (row.second.back() <= 25)
            restricted.insert(row);
    CHECK(rows(enumerate_bruteforce(5, 1, 25)) == restricted);
}

TEST_CASE("table rendering")
{
    const auto r = run(4);
    CHECK(render_table(r, TableFormat::tsv) == "weights\tdegree\n1 1 1 1\t3\n1 1 1 2\t4\n1 1 2 3\t6\n3 3 5 5\t15\n");
    const std::string md = render_table(r, TableFormat::markdown);
    CHECK(md.rfind("| a_0 | a_1 | a_2 | a_3 | d |\n|---|---|---|---|---|\n", 0) == 0);
    CHECK(md.find("| 3 | 3 | 5 | 5 | 15 |\n") != std::string::npos);
    const auto j = nlohmann::json::parse(render_table(r, TableFormat::json));
    REQUIRE(j.size() == 4);
    CHECK(j[3]["degree"] == 15);
    CHECK(j[3]["weights"] == nlohmann::json::array({3, 3, 5, 5}));

    const std::string golden = read_file(std::filesystem::path(DIVFANO_SOURCE_DIR) / "tests/golden/table1.md");
    CHECK(render_table(run(5), TableFormat::markdown) == golden);
}

TEST_CASE("catalog round trip and corruption")
{
    const auto r = run(5);
    const auto path = temp_path("catalog.json");
    save_catalog(r, path);
    CHECK(load_catalog(path) == r);
    CHECK(load_catalog(path, r.query).has_value());
    EnumerationQuery other = r.query;
    other.num_weights = 4;
    CHECK_FALSE(load_catalog(path, other).has_value());

    auto text = read_file(path);
    {
        std::ofstream(path, std::ios::binary) << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_AS(load_catalog(path), catalog_error);

    auto j = nlohmann::json::parse(text);
    j["version"] = catalog_version + 1;
    std::ofstream(path, std::ios::binary) << j.dump();
    CHECK_THROWS_WITH_AS(load_catalog(path), doctest::Contains("version"), catalog_error);

    j = nlohmann::json::parse(text);
    std::swap(j["systems"][0], j["systems"][1]);
    std::ofstream(path, std::ios::binary) << j.dump();
    CHECK_THROWS_WITH_AS(load_catalog(path), doctest::Contains("canonical order"), catalog_error);

    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_catalog(path), catalog_error);
}
