#include "divfano/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace divfano
{

WeightSystem::WeightSystem(std::vector<Int> weights, Int degree)
        : weights_{std::move(weights)}, degree_{degree}
{
    if (weights_.empty())
        throw validation_error("weight system needs at least one weight");
    if (degree_ <= 0)
        throw validation_error("degree must be positive, got " + std::to_string(degree_));
    for (Int w : weights_)
        if (w <= 0)
            throw validation_error("weights must be positive, got " + std::to_string(w));
    std::sort(weights_.begin(), weights_.end());
}

Int WeightSystem::weight_sum() const
{
    return std::accumulate(weights_.begin(), weights_.end(), Int{0});
}

bool WeightSystem::divisible() const
{
    return std::all_of(weights_.begin(), weights_.end(),
                       [&](Int a) { return degree_ % a == 0; });
}

std::string WeightSystem::str() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        os << (i ? "," : "") << weights_[i];
    os << ':' << degree_;
    return os.str();
}

std::strong_ordering operator<=>(const WeightSystem &a, const WeightSystem &b)
{
    if (auto c = a.degree_ <=> b.degree_; c != 0)
        return c;
    return a.weights_ <=> b.weights_;
}

bool is_well_formed(std::span<const Int> weights)
{
    const std::size_t m = weights.size();
    if (m < 2)
        return false;
    // prefix/suffix gcds give every "all but one" gcd in linear time
    std::vector<Int> pre(m + 1, 0), suf(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        pre[i + 1] = std::gcd(pre[i], weights[i]);
    for (std::size_t i = m; i-- > 0;)
        suf[i] = std::gcd(suf[i + 1], weights[i]);
    for (std::size_t i = 0; i < m; ++i)
        if (std::gcd(pre[i], suf[i + 1]) != 1)
            return false;
    return true;
}

ValidationReport validate(const WeightSystem &ws, Int index)
{
    if (ws.size() < 2)
        throw validation_error("a single weight does not define a hypersurface: " + ws.str());
    ValidationReport r;
    r.well_formed = is_well_formed(ws.weights());
    r.divisibility = ws.divisible();
    r.linear_cone = std::find(ws.weights().begin(), ws.weights().end(), ws.degree())
                    != ws.weights().end();
    r.index_matches = ws.index() == index;
    return r;
}

StarCase star_case(const WeightSystem &ws)
{
    const Int d = ws.degree();
    if (d % 2 != 0 || d / 2 < 3)
        return {};
    const Int a = d / 2;
    const auto &w = ws.weights();
    const auto twos = std::count(w.begin(), w.end(), Int{2});
    const auto as = std::count(w.begin(), w.end(), a);
    // a >= 3 so the two entries are necessarily at different positions
    if (twos >= 1 && as >= 1)
        return {true, a};
    return {};
}

Rational threshold_c(const WeightSystem &ws)
{
    const Int d = ws.degree();
    return star_case(ws).holds ? Rational{d - 2, d} : Rational{d - 1, d};
}

const char *to_string(InequalityKind kind)
{
    switch (kind) {
    case InequalityKind::unit_weight:
        return "unit_weight";
    case InequalityKind::star_pair:
        return "star_pair";
    case InequalityKind::general:
        return "general";
    }
    return "?";
}

std::size_t InequalityReport::failures() const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const auto &c) { return !c.pass; }));
}

const InequalityCheck *InequalityReport::first_failure() const
{
    auto it = std::find_if(checks.begin(), checks.end(), [](const auto &c) { return !c.pass; });
    return it == checks.end() ? nullptr : &*it;
}

namespace
{

bool is_all_ones_shape(const WeightSystem &ws)
{
    return ws.weights().back() == 1 && ws.degree() == ws.n();
}

bool is_star_all_ones_shape(const WeightSystem &ws)
{
    const StarCase sc = star_case(ws);
    if (!sc.holds)
        return false;
    // (1,...,1,2,a : 2a): exactly n-1 ones, then 2 and a
    const auto &w = ws.weights();
    const std::size_t m = w.size();
    if (m < 3)
        return false;
    for (std::size_t k = 0; k + 2 < m; ++k)
        if (w[k] != 1)
            return false;
    return w[m - 2] == 2 && w[m - 1] == *sc.a;
}

} // namespace

InequalityReport check_lemma_ineq(const WeightSystem &ws)
{
    InequalityReport r;
    if (ws.size() < 2) {
        r.precondition_message = "need at least two weights";
        return r;
    }
    const auto v = validate(ws, 1);
    if (!v.well_formed)
        r.precondition_message = "weights are not well-formed";
    else if (!v.divisibility)
        r.precondition_message = "some weight does not divide the degree";
    else if (!v.index_matches)
        r.precondition_message = "degree is not sum(a_i) - 1";
    r.precondition_ok = r.precondition_message.empty();
    if (!r.precondition_ok)
        return r;

    const Int d = ws.degree();
    const StarCase sc = star_case(ws);
    r.c = threshold_c(ws);
    r.c_floor = Rational{ws.n() - 1, ws.n()};
    r.c_bound_holds = r.c >= r.c_floor;
    r.c_equality = r.c == r.c_floor;
    r.equality_shape_ok = !r.c_equality || is_all_ones_shape(ws) || is_star_all_ones_shape(ws);

    const auto &w = ws.weights();
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (i == j)
                continue;
            InequalityCheck chk{};
            chk.i = i;
            chk.j = j;
            const Int ai = w[i];
            if (ai == 1) {
                chk.kind = InequalityKind::unit_weight;
                chk.lhs = Rational{-d - 1 + ai} + r.c * Rational{d};
                chk.rhs = Rational{-1};
            } else if (sc.holds && ai == 2 && w[j] == *sc.a) {
                chk.kind = InequalityKind::star_pair;
                chk.lhs = Rational{-d - 1 + ai} + r.c * Rational{d, ai};
                chk.rhs = Rational{-w[j]};
            } else {
                chk.kind = InequalityKind::general;
                chk.lhs = Rational{-d - 1 + ai} + Rational{d, ai};
                chk.rhs = Rational{-w[j]};
            }
            chk.pass = chk.lhs <= chk.rhs;
            chk.equality = chk.lhs == chk.rhs;
            r.checks.push_back(chk);
        }
    }
    return r;
}

namespace
{

std::vector<char> reachable_table(Int target, std::span<const Int> generators)
{
    std::vector<char> ok(static_cast<std::size_t>(target) + 1, 0);
    ok[0] = 1;
    for (Int g : generators) {
        if (g <= 0)
            throw std::invalid_argument("semigroup generators must be positive");
        // unbounded knapsack: each generator may repeat
        for (Int t = g; t <= target; ++t)
            if (ok[static_cast<std::size_t>(t - g)])
                ok[static_cast<std::size_t>(t)] = 1;
    }
    return ok;
}

} // namespace

bool semigroup_representable(Int target, std::span<const Int> generators)
{
    if (target < 0)
        return false;
    if (target == 0)
        return true;
    if (generators.empty())
        return false;
    return reachable_table(target, generators)[static_cast<std::size_t>(target)] != 0;
}

std::optional<std::vector<Int>> semigroup_representation(Int target, std::span<const Int> generators)
{
    if (target < 0)
        return std::nullopt;
    const std::size_t k = generators.size();
    // suffix[s][t]: t reachable using generators s..k-1
    std::vector<std::vector<char>> suffix(k + 1);
    suffix[k].assign(static_cast<std::size_t>(target) + 1, 0);
    suffix[k][0] = 1;
    for (std::size_t s = k; s-- > 0;) {
        suffix[s] = suffix[s + 1];
        const Int g = generators[s];
        if (g <= 0)
            throw std::invalid_argument("semigroup generators must be positive");
        for (Int t = g; t <= target; ++t)
            if (suffix[s][static_cast<std::size_t>(t - g)])
                suffix[s][static_cast<std::size_t>(t)] = 1;
    }
    if (!suffix[0][static_cast<std::size_t>(target)])
        return std::nullopt;

    std::vector<Int> m(k, 0);
    Int rest = target;
    for (std::size_t s = 0; s < k; ++s) {
        while (!suffix[s + 1][static_cast<std::size_t>(rest)]) {
            rest -= generators[s];
            ++m[s];
        }
    }
    return m;
}

Int triple_gap(Int a0, Int a1, Int a2)
{
    return a0 * a1 * a2 - a0 - a1 - a2;
}

TripleMinimum coprime_triple_minimum(Int bound)
{
    if (bound < 5)
        throw std::invalid_argument("coprime_triple_minimum needs bound >= 5");
    std::optional<TripleMinimum> best;
    for (Int a0 = 2; a0 <= bound; ++a0) {
        for (Int a1 = a0 + 1; a1 <= bound; ++a1) {
            if (std::gcd(a0, a1) != 1)
                continue;
            for (Int a2 = a1 + 1; a2 <= bound; ++a2) {
                if (std::gcd(a0, a2) != 1 || std::gcd(a1, a2) != 1)
                    continue;
                const Int gap = triple_gap(a0, a1, a2);
                if (best && gap >= best->gap)
                    continue;
                const std::array<Int, 2> g0{a1, a2}, g1{a0, a2}, g2{a0, a1};
                if (semigroup_representable(a0, g0) || semigroup_representable(a1, g1)
                    || semigroup_representable(a2, g2))
                    continue;
                best = TripleMinimum{gap, {a0, a1, a2}};
            }
        }
    }
    if (!best)
        throw std::logic_error("no admissible triple below bound");
    return *best;
}

} // namespace divfano
