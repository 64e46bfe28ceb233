#include "divfano/monomial.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace divfano
{

Int Monomial::degree(const WeightSystem &ambient) const
{
    if (exponents.size() != ambient.size())
        throw validation_error("monomial " + str() + " has " + std::to_string(exponents.size())
                               + " exponents, ambient has " + std::to_string(ambient.size())
                               + " weights");
    Int deg = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        deg += exponents[i] * ambient.weight(i);
    return deg;
}

std::string Monomial::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exponents.size(); ++i)
        os << (i ? "," : "") << exponents[i];
    os << ')';
    return os.str();
}

Support::Support(WeightSystem ambient, std::vector<Monomial> monomials)
        : ambient_{std::move(ambient)}, monomials_{std::move(monomials)}
{
    if (monomials_.empty())
        throw validation_error("support must contain at least one monomial");
    for (const auto &m : monomials_) {
        for (Int k : m.exponents)
            if (k < 0)
                throw validation_error("negative exponent in " + m.str());
        if (m.degree(ambient_) != ambient_.degree())
            throw validation_error("monomial " + m.str() + " has weighted degree "
                                   + std::to_string(m.degree(ambient_)) + ", expected "
                                   + std::to_string(ambient_.degree()));
    }
    std::sort(monomials_.begin(), monomials_.end(), std::greater<>{});
    monomials_.erase(std::unique(monomials_.begin(), monomials_.end()), monomials_.end());
}

bool Support::contains(const Monomial &m) const
{
    return std::binary_search(monomials_.begin(), monomials_.end(), m, std::greater<>{});
}

Monomial SupportFile::to_file_order(const Monomial &m) const
{
    Monomial out{std::vector<Int>(m.size(), 0)};
    for (std::size_t p = 0; p < m.size(); ++p)
        out.exponents[column.at(p)] = m[p];
    return out;
}

SupportFile support_from_json(const nlohmann::json &j)
{
    const auto weights = j.at("weights").get<std::vector<Int>>();
    const Int degree = j.at("degree").get<Int>();

    std::vector<std::size_t> column(weights.size());
    std::iota(column.begin(), column.end(), std::size_t{0});
    std::stable_sort(column.begin(), column.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });

    std::vector<Monomial> monomials;
    for (const auto &row : j.at("monomials")) {
        const auto k = row.get<std::vector<Int>>();
        if (k.size() != weights.size())
            throw validation_error("monomial row has " + std::to_string(k.size())
                                   + " entries, expected " + std::to_string(weights.size()));
        Monomial m{std::vector<Int>(k.size())};
        for (std::size_t p = 0; p < k.size(); ++p)
            m.exponents[p] = k[column[p]];
        monomials.push_back(std::move(m));
    }
    return SupportFile{Support{WeightSystem{weights, degree}, std::move(monomials)}, std::move(column)};
}

SupportFile load_support(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open support file " + path.string());
    return support_from_json(nlohmann::json::parse(in));
}

nlohmann::json to_json(const Support &s)
{
    nlohmann::json j = to_json(s.ambient());
    j["monomials"] = nlohmann::json::array();
    for (const auto &m : s.monomials())
        j["monomials"].push_back(m.exponents);
    return j;
}

Support fermat_support(const WeightSystem &ws)
{
    if (!ws.divisible())
        throw validation_error("Fermat member needs a_i | d for all i: " + ws.str());
    std::vector<Monomial> mons;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (ws.quotient(i) < 2)
            throw validation_error("linear cone has no Fermat member of this form: " + ws.str());
        Monomial m{std::vector<Int>(ws.size(), 0)};
        m.exponents[i] = ws.quotient(i);
        mons.push_back(std::move(m));
    }
    return Support{ws, std::move(mons)};
}

namespace
{

/// Positions j != i with k_j > 0, and their weights.
std::pair<std::vector<std::size_t>, std::vector<Int>> other_variables(const WeightSystem &ws,
                                                                      const Monomial &m,
                                                                      std::size_t i)
{
    std::vector<std::size_t> pos;
    std::vector<Int> gens;
    for (std::size_t j = 0; j < m.size(); ++j)
        if (j != i && m[j] > 0) {
            pos.push_back(j);
            gens.push_back(ws.weight(j));
        }
    return {pos, gens};
}

bool violates_at(const WeightSystem &ws, const Monomial &m, std::size_t i)
{
    if (m[i] != 1 || ws.weight(i) <= 1)
        return false;
    const auto [pos, gens] = other_variables(ws, m, i);
    return !semigroup_representable(ws.weight(i), gens);
}

} // namespace

std::optional<StarViolation> star_condition(const Support &s)
{
    for (const auto &m : s.monomials())
        for (std::size_t i = 0; i < m.size(); ++i)
            if (violates_at(s.ambient(), m, i))
                return StarViolation{m, i};
    return std::nullopt;
}

std::optional<Monomial> star_condition_at(const Support &s, std::size_t i)
{
    if (i >= s.ambient().size())
        throw std::out_of_range("star_condition_at: index out of range");
    if (s.ambient().weight(i) <= 1)
        throw validation_error("star_condition_at needs a_i > 1");
    for (const auto &m : s.monomials())
        if (violates_at(s.ambient(), m, i))
            return m;
    return std::nullopt;
}

std::optional<UniversalViolation> universal_star_at(const WeightSystem &ws, std::size_t i)
{
    if (i >= ws.size())
        throw std::out_of_range("universal_star_at: index out of range");
    const Int ai = ws.weight(i);
    if (ai <= 1)
        throw validation_error("universal_star_at needs a_i > 1");
    const Int d = ws.degree();

    // Two variables of one weight never help a witness that one of them
    // cannot give, so subsets range over distinct values. A value dividing
    // a_i puts a_i in the semigroup immediately and is dropped.
    std::vector<Int> values;
    std::vector<std::size_t> first_pos;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        const Int w = ws.weight(j);
        if (j == i || ai % w == 0)
            continue;
        if (std::find(values.begin(), values.end(), w) == values.end()) {
            values.push_back(w);
            first_pos.push_back(j);
        }
    }

    const std::size_t m = values.size();
    std::vector<std::size_t> pick;
    // subsets by size, then lexicographically
    for (std::size_t size = 0; size <= m; ++size) {
        std::vector<bool> mask(m, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
        do {
            pick.clear();
            std::vector<Int> gens;
            Int used = 0;
            for (std::size_t k = 0; k < m; ++k)
                if (mask[k]) {
                    pick.push_back(k);
                    gens.push_back(values[k]);
                    used += values[k];
                }
            const Int rest = d - ai - used;
            if (rest < 0 || semigroup_representable(ai, gens))
                continue;
            if (auto rep = semigroup_representation(rest, gens)) {
                UniversalViolation v{Monomial{std::vector<Int>(ws.size(), 0)}, {}};
                v.exponents.exponents[i] = 1;
                for (std::size_t s = 0; s < pick.size(); ++s) {
                    const std::size_t pos = first_pos[pick[s]];
                    v.exponents.exponents[pos] = 1 + (*rep)[s];
                    v.subset.push_back(pos);
                }
                return v;
            }
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return std::nullopt;
}

WeightCover cover_weights(const WeightSystem &ws, std::size_t i)
{
    if (i >= ws.size())
        throw std::out_of_range("cover: index out of range");
    if (ws.weight(i) <= 1)
        throw validation_error("cover needs a_i > 1");
    std::vector<Int> w = ws.weights();
    w[i] = 1;
    std::vector<std::size_t> order(w.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
    std::vector<std::size_t> map(w.size());
    std::vector<Int> sorted(w.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
        map[order[p]] = p;
        sorted[p] = w[order[p]];
    }
    return WeightCover{WeightSystem{std::move(sorted), ws.degree()}, std::move(map)};
}

CoverResult apply_cover(const Support &s, std::size_t i)
{
    WeightCover wc = cover_weights(s.ambient(), i);
    const Int ai = s.ambient().weight(i);
    std::vector<Monomial> mons;
    mons.reserve(s.size());
    for (const auto &m : s.monomials()) {
        Monomial out{std::vector<Int>(m.size(), 0)};
        for (std::size_t j = 0; j < m.size(); ++j)
            out.exponents[wc.position_map[j]] = j == i ? m[j] * ai : m[j];
        mons.push_back(std::move(out));
    }
    return CoverResult{Support{wc.ambient, std::move(mons)}, std::move(wc.position_map)};
}

Support substitute(const Support &s, std::size_t i, const Monomial &m)
{
    const WeightSystem &ws = s.ambient();
    if (i >= ws.size())
        throw std::out_of_range("substitute: index out of range");
    if (m.size() != ws.size())
        throw validation_error("substitution monomial has the wrong length");
    if (m[i] != 0)
        throw validation_error("substitution monomial must not involve the substituted variable");
    if (m.degree(ws) != ws.weight(i))
        throw validation_error("substitution monomial " + m.str() + " must have weighted degree "
                               + std::to_string(ws.weight(i)));

    std::set<Monomial> out(s.monomials().begin(), s.monomials().end());
    for (const auto &mono : s.monomials()) {
        const Int t = mono[i];
        Monomial cur = mono;
        for (Int r = 1; r <= t; ++r) {
            cur.exponents[i] -= 1;
            for (std::size_t j = 0; j < m.size(); ++j)
                cur.exponents[j] += m[j];
            out.insert(cur);
        }
    }
    return Support{ws, std::vector<Monomial>(out.begin(), out.end())};
}

Support move_coordinate_points(const Support &s)
{
    Support cur = s;
    const WeightSystem &ws = s.ambient();
    const Int d = ws.degree();
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (d % ws.weight(i) != 0)
            throw validation_error("coordinate point " + std::to_string(i) + ": a_i does not divide d");
        Monomial pure{std::vector<Int>(ws.size(), 0)};
        pure.exponents[i] = d / ws.weight(i);
        if (cur.contains(pure))
            continue;

        // look for z_j z_i^c, c >= 1
        std::optional<std::size_t> partner;
        for (const auto &mono : cur.monomials()) {
            if (mono[i] < 1)
                continue;
            std::optional<std::size_t> j;
            bool shape = true;
            for (std::size_t k = 0; k < mono.size() && shape; ++k) {
                if (k == i || mono[k] == 0)
                    continue;
                if (mono[k] == 1 && !j)
                    j = k;
                else
                    shape = false;
            }
            if (shape && j) {
                partner = j;
                break;
            }
        }
        if (!partner)
            throw validation_error("coordinate point P_" + std::to_string(i)
                                   + " lies on X and the support has no monomial z_j z_"
                                   + std::to_string(i) + "^c to move it");
        const std::size_t j = *partner;
        Monomial m{std::vector<Int>(ws.size(), 0)};
        m.exponents[i] = ws.weight(j) / ws.weight(i);
        cur = substitute(cur, j, m);
    }
    return cur;
}

} // namespace divfano
