#include "divfano/monomial.hpp"

#include <algorithm>

namespace divfano
{

const char *to_string(CoverStep::Kind kind)
{
    return kind == CoverStep::Kind::cover ? "cover" : "substitute";
}

std::size_t CoverPlan::cover_count() const
{
    return static_cast<std::size_t>(std::count_if(
        steps.begin(), steps.end(), [](const CoverStep &s) { return s.kind == CoverStep::Kind::cover; }));
}

namespace
{

/// Positions with weight > 1, smallest weight first, lowest position on ties.
std::vector<std::size_t> cover_candidates(const WeightSystem &ws)
{
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (ws.weight(i) > 1)
            c.push_back(i);
    std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) { return ws.weight(a) < ws.weight(b); });
    return c;
}

CoverPlan fail(CoverPlan plan, Monomial witness, std::size_t index, const WeightSystem &ambient)
{
    plan.success = false;
    plan.witness = std::move(witness);
    plan.witness_index = index;
    plan.failed_ambient = ambient;
    return plan;
}

} // namespace

CoverPlan plan_cover_for_support(const Support &s)
{
    CoverPlan plan;
    if (auto v = star_condition(s))
        return fail(std::move(plan), v->monomial, v->index, s.ambient());

    Support cur = s;
    while (true) {
        const auto candidates = cover_candidates(cur.ambient());
        if (candidates.empty())
            break;
        const std::size_t i = candidates.front();
        const WeightSystem &ws = cur.ambient();

        // a monomial with k_i = 1 may keep the cover from being
        // quasi-smooth; move z_i by a generic multiple of a monomial of
        // the same weight built from that monomial's other variables
        const auto hit = std::find_if(cur.monomials().begin(), cur.monomials().end(),
                                      [&](const Monomial &m) { return m[i] == 1; });
        if (hit != cur.monomials().end()) {
            std::vector<std::size_t> pos;
            std::vector<Int> gens;
            for (std::size_t j = 0; j < hit->size(); ++j)
                if (j != i && (*hit)[j] > 0) {
                    pos.push_back(j);
                    gens.push_back(ws.weight(j));
                }
            const auto rep = semigroup_representation(ws.weight(i), gens);
            if (!rep)
                return fail(std::move(plan), *hit, i, ws);
            Monomial m{std::vector<Int>(ws.size(), 0)};
            for (std::size_t k = 0; k < pos.size(); ++k)
                m.exponents[pos[k]] = (*rep)[k];
            plan.steps.push_back(CoverStep{CoverStep::Kind::substitute, i, ws, m, {},
                                           "generic automorphism z_i -> z_i + lambda*M"});
            cur = substitute(cur, i, m);
            if (auto v = star_condition(cur))
                return fail(std::move(plan), v->monomial, v->index, cur.ambient());
        }

        CoverResult next = apply_cover(cur, i);
        plan.steps.push_back(CoverStep{CoverStep::Kind::cover, i, cur.ambient(), std::nullopt,
                                       next.position_map, "cyclic cover x_i -> x_i^a_i"});
        cur = std::move(next.support);
        if (auto v = star_condition(cur))
            return fail(std::move(plan), v->monomial, v->index, cur.ambient());
    }
    plan.success = true;
    return plan;
}

CoverPlan plan_cover_universal(const WeightSystem &ws)
{
    const auto check = validate(ws, 1);
    if (!check.divisibility || !check.index_matches)
        throw validation_error("universal cover planning needs an index-1 system with a_i | d: " + ws.str());

    CoverPlan plan;
    WeightSystem cur = ws;
    while (true) {
        const auto candidates = cover_candidates(cur);
        if (candidates.empty())
            break;
        std::optional<std::size_t> chosen;
        std::optional<UniversalViolation> first_violation;
        std::size_t first_index = 0;
        for (std::size_t i : candidates) {
            auto v = universal_star_at(cur, i);
            if (!v) {
                chosen = i;
                break;
            }
            if (!first_violation) {
                first_violation = std::move(v);
                first_index = i;
            }
        }
        if (!chosen)
            return fail(std::move(plan), first_violation->exponents, first_index, cur);

        WeightCover wc = cover_weights(cur, *chosen);
        plan.steps.push_back(CoverStep{CoverStep::Kind::cover, *chosen, cur, std::nullopt, wc.position_map,
                                       "cover; condition holds for every member"});
        cur = std::move(wc.ambient);
    }
    plan.success = true;
    return plan;
}

} // namespace divfano
