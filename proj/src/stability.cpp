#include "divfano/stability.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace divfano
{

const char *to_string(AlphaCase c)
{
    switch (c) {
    case AlphaCase::star:
        return "star";
    case AlphaCase::all_weights_ge2:
        return "all_weights_ge2";
    case AlphaCase::generic:
        return "generic";
    }
    return "?";
}

std::optional<AlphaBound> alpha_lower_bound(const WeightSystem &ws, bool cover_available)
{
    const auto v = validate(ws, 1);
    if (!v.ok())
        throw validation_error("alpha bound needs a well-formed index-1 system with a_i | d that is "
                               "not a linear cone: "
                               + ws.str());
    if (!cover_available)
        return std::nullopt;
    AlphaBound b{threshold_c(ws), AlphaCase::generic,
                 {"smooth cover exists, so curves have orbifold multiplicity <= 1"}};
    if (star_case(ws).holds)
        b.case_tag = AlphaCase::star;
    else if (ws.min_weight() >= 2) {
        b.value = Rational{1};
        b.case_tag = AlphaCase::all_weights_ge2;
    }
    return b;
}

const char *to_string(Verdict v)
{
    switch (v) {
    case Verdict::unknown:
        return "unknown";
    case Verdict::k_semistable:
        return "k_semistable";
    case Verdict::k_polystable:
        return "k_polystable";
    case Verdict::k_stable:
        return "k_stable";
    case Verdict::k_unstable:
        return "k_unstable";
    }
    return "?";
}

std::optional<Verdict> verdict_from_string(const std::string &s)
{
    for (Verdict v : {Verdict::unknown, Verdict::k_semistable, Verdict::k_polystable, Verdict::k_stable,
                      Verdict::k_unstable})
        if (s == to_string(v))
            return v;
    return std::nullopt;
}

bool entails(Verdict have, Verdict want)
{
    if (want == Verdict::unknown || have == want)
        return true;
    if (have == Verdict::k_unstable || want == Verdict::k_unstable)
        return false;
    return static_cast<int>(have) >= static_cast<int>(want);
}

Verdict join(Verdict a, Verdict b)
{
    if (a == Verdict::unknown)
        return b;
    if (b == Verdict::unknown)
        return a;
    if ((a == Verdict::k_unstable) != (b == Verdict::k_unstable))
        throw std::logic_error(std::string("contradictory verdicts: ") + to_string(a) + " and " + to_string(b));
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

bool aut_finite(std::span<const Int> weights, std::span<const Int> degrees)
{
    if (degrees.empty() || weights.size() < degrees.size() + 1)
        throw std::invalid_argument("aut_finite needs c >= 1 degrees and at least c + 1 weights");
    if (!std::is_sorted(weights.begin(), weights.end()))
        throw std::invalid_argument("aut_finite needs ascending weights");
    const Int c = static_cast<Int>(degrees.size());
    const Int n = static_cast<Int>(weights.size()) - 1;
    const Int degree_sum = std::accumulate(degrees.begin(), degrees.end(), Int{0});
    const Int top = std::accumulate(weights.end() - (c + 1), weights.end(), Int{0});
    if (degree_sum > top)
        return true;
    const Int index = std::accumulate(weights.begin(), weights.end(), Int{0}) - degree_sum;
    return index > 0 && index < n - c;
}

FermatVerdict fermat_k_stability(const WeightSystem &ws)
{
    if (ws.size() < 2 || !ws.divisible())
        throw validation_error("Fermat criterion needs a_i | d: " + ws.str());
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (ws.quotient(i) < 2)
            throw validation_error("Fermat criterion needs d / a_i >= 2 (not a linear cone): " + ws.str());
    if (ws.index() <= 0)
        throw validation_error("Fermat criterion needs a Fano system (positive index): " + ws.str());

    FermatVerdict f{};
    f.margin = ws.n() * ws.min_weight() - ws.index();
    const std::array<Int, 1> deg{ws.degree()};
    f.aut_finite = aut_finite(ws.weights(), deg);
    if (f.margin > 0)
        f.verdict = f.aut_finite ? Verdict::k_stable : Verdict::k_polystable;
    else if (f.margin == 0)
        f.verdict = Verdict::k_semistable;
    else
        f.verdict = Verdict::k_unstable;
    return f;
}

const char *to_string(MemberClass m)
{
    switch (m) {
    case MemberClass::fermat:
        return "fermat";
    case MemberClass::general:
        return "general";
    case MemberClass::any_quasi_smooth:
        return "any_quasi_smooth";
    }
    return "?";
}

std::optional<MemberClass> member_class_from_string(const std::string &s)
{
    if (s == "fermat")
        return MemberClass::fermat;
    if (s == "general")
        return MemberClass::general;
    if (s == "any_quasi_smooth" || s == "any")
        return MemberClass::any_quasi_smooth;
    return std::nullopt;
}

namespace
{

namespace crit
{
constexpr const char *general_low_index = "general_low_index";
constexpr const char *fermat = "fermat_criterion";
constexpr const char *aut = "aut_finiteness";
constexpr const char *cover_universal = "cover_universal";
constexpr const char *cover_support = "cover_support";
constexpr const char *cover_fermat = "cover_fermat";
constexpr const char *cover_general = "cover_general_member";
constexpr const char *alpha = "alpha_criterion";
constexpr const char *alpha_boundary = "alpha_boundary";
constexpr const char *kahler_einstein = "kahler_einstein";
constexpr const char *none = "no_criterion";
} // namespace crit

constexpr const char *cover_found = "cover_found";
constexpr const char *no_plan = "no_plan";
constexpr const char *not_applicable = "not_applicable";

bool is_star_all_ones(const WeightSystem &ws)
{
    const StarCase sc = star_case(ws);
    if (!sc.holds || ws.size() < 3)
        return false;
    const auto &w = ws.weights();
    return std::all_of(w.begin(), w.end() - 2, [](Int a) { return a == 1; }) && w[w.size() - 2] == 2
           && w.back() == *sc.a;
}

bool is_all_ones(const WeightSystem &ws)
{
    return ws.weights().back() == 1;
}

std::string eval_general_low_index(const WeightSystem &ws)
{
    const Int idx = ws.index();
    return ws.divisible() && idx > 0 && idx < ws.dim() ? to_string(Verdict::k_stable) : not_applicable;
}

std::string eval_aut(const std::vector<Int> &weights, const std::vector<Int> &degrees)
{
    return aut_finite(weights, degrees) ? "finite" : "criterion_silent";
}

std::string plan_conclusion(const CoverPlan &p)
{
    return p.success ? cover_found : no_plan;
}

std::string eval_alpha(const WeightSystem &ws, bool cover)
{
    const auto a = alpha_lower_bound(ws, cover);
    if (!a)
        return to_string(Verdict::unknown);
    const Rational threshold{ws.dim(), ws.dim() + 1};
    if (a->value > threshold)
        return to_string(Verdict::k_stable);
    if (a->value == threshold)
        return to_string(Verdict::k_semistable);
    return to_string(Verdict::unknown);
}

std::string eval_alpha_boundary(const WeightSystem &ws)
{
    return is_all_ones(ws) || is_star_all_ones(ws) ? to_string(Verdict::k_stable) : not_applicable;
}

nlohmann::json ws_inputs(const WeightSystem &ws)
{
    return to_json(ws);
}

nlohmann::json plan_detail(const CoverPlan &p)
{
    nlohmann::json j;
    j["success"] = p.success;
    j["steps"] = nlohmann::json::array();
    for (const auto &s : p.steps) {
        nlohmann::json step{{"kind", to_string(s.kind)},
                            {"index", s.index},
                            {"weight", s.ambient_before.weight(s.index)}};
        if (s.monomial)
            step["monomial"] = s.monomial->exponents;
        j["steps"].push_back(step);
    }
    if (!p.success) {
        j["label"] = "no plan found by the cover procedure";
        j["witness"] = p.witness->exponents;
        j["witness_index"] = *p.witness_index;
        j["ambient"] = to_json(*p.failed_ambient);
    }
    return j;
}

const char *cite_for(const std::string &criterion)
{
    if (criterion == crit::general_low_index)
        return "general quasi-smooth hypersurface with a_i | d and Fano index below its dimension is "
               "K-stable (Fermat K-polystability, finite Aut, openness of K-stability)";
    if (criterion == crit::fermat)
        return "Fermat hypersurface is K-polystable iff I < n*a_0 and K-semistable iff I <= n*a_0; "
               "K-polystable with finite Aut is K-stable";
    if (criterion == crit::aut)
        return "Aut(X) is finite if sum d_j > a_{n-c} + ... + a_n, in particular if I < dim X";
    if (criterion == crit::cover_universal)
        return "iterated cyclic covers with generic automorphisms, condition checked for every member";
    if (criterion == crit::cover_support)
        return "iterated cyclic covers with generic automorphisms, condition checked on the given support";
    if (criterion == crit::cover_fermat)
        return "iterated cyclic covers of the Fermat member (no exponent equals 1)";
    if (criterion == crit::cover_general)
        return "a general member with a_i | d pulls back to a smooth hypersurface of P^n";
    if (criterion == crit::alpha)
        return "smooth cover bounds lct(X, D) for D ~ -K_X; alpha > dim/(dim+1) implies K-stable";
    if (criterion == crit::alpha_boundary)
        return "alpha = dim/(dim+1): K-stable since X is smooth, or its 1/2(1,...,1) points are not "
               "weakly exceptional";
    if (criterion == crit::kahler_einstein)
        return "K-stable Fano varieties admit Kahler-Einstein metrics (cited, not computed)";
    return "no implemented criterion decides this case; unknown is not an instability claim";
}

TraceEntry make_entry(const std::string &criterion, nlohmann::json inputs, std::string conclusion,
                      nlohmann::json detail = nullptr)
{
    return TraceEntry{criterion, cite_for(criterion), std::move(inputs), std::move(conclusion),
                      std::move(detail)};
}

} // namespace

std::string recompute_conclusion(const TraceEntry &e)
{
    const auto &in = e.inputs;
    if (e.criterion == crit::general_low_index)
        return eval_general_low_index(weight_system_from_json(in));
    if (e.criterion == crit::fermat)
        return to_string(fermat_k_stability(weight_system_from_json(in)).verdict);
    if (e.criterion == crit::aut)
        return eval_aut(in.at("weights").get<std::vector<Int>>(), in.at("degrees").get<std::vector<Int>>());
    if (e.criterion == crit::cover_universal)
        return plan_conclusion(plan_cover_universal(weight_system_from_json(in)));
    if (e.criterion == crit::cover_support)
        return plan_conclusion(plan_cover_for_support(support_from_json(in).support));
    if (e.criterion == crit::cover_fermat)
        return plan_conclusion(plan_cover_for_support(fermat_support(weight_system_from_json(in))));
    if (e.criterion == crit::cover_general)
        return weight_system_from_json(in).divisible() ? cover_found : not_applicable;
    if (e.criterion == crit::alpha)
        return eval_alpha(weight_system_from_json(in.at("system")), in.at("cover_available").get<bool>());
    if (e.criterion == crit::alpha_boundary)
        return eval_alpha_boundary(weight_system_from_json(in));
    if (e.criterion == crit::kahler_einstein)
        return in.at("verdict").get<std::string>() == to_string(Verdict::k_stable) ? "ke_metric"
                                                                                   : not_applicable;
    if (e.criterion == crit::none)
        return to_string(Verdict::unknown);
    throw std::invalid_argument("unknown criterion '" + e.criterion + "'");
}

Verdict trace_join(const std::vector<TraceEntry> &trace)
{
    Verdict v = Verdict::unknown;
    for (const auto &e : trace)
        if (auto level = verdict_from_string(e.conclusion))
            v = join(v, *level);
    return v;
}

StabilityReport classify(const WeightSystem &ws, MemberClass member, const std::optional<Support> &support)
{
    if (ws.size() < 3)
        throw validation_error("classification needs at least 3 weights: " + ws.str());
    const auto v = validate(ws, ws.index());
    if (!v.divisibility)
        throw validation_error("classification needs a_i | d for all i: " + ws.str());
    if (v.linear_cone)
        throw validation_error("linear cones are excluded: " + ws.str());
    if (ws.index() <= 0)
        throw validation_error("not Fano (index " + std::to_string(ws.index()) + "): " + ws.str());
    if (support && !(support->ambient() == ws))
        throw validation_error("support ambient " + support->ambient().str() + " differs from " + ws.str());

    StabilityReport r{ws, member, Verdict::unknown, std::nullopt, std::nullopt, {}};

    const std::vector<Int> degrees{ws.degree()};
    r.aut_finite = aut_finite(ws.weights(), degrees);
    r.trace.push_back(make_entry(crit::aut, {{"weights", ws.weights()}, {"degrees", degrees}},
                                 eval_aut(ws.weights(), degrees)));

    if (member == MemberClass::general)
        r.trace.push_back(make_entry(crit::general_low_index, ws_inputs(ws), eval_general_low_index(ws)));

    if (member == MemberClass::fermat) {
        const FermatVerdict f = fermat_k_stability(ws);
        r.trace.push_back(make_entry(crit::fermat, ws_inputs(ws), to_string(f.verdict),
                                     {{"margin", f.margin}, {"aut_finite", f.aut_finite}}));
    }

    nlohmann::json witnesses = nlohmann::json::array();
    if (ws.index() == 1 && v.well_formed) {
        bool cover = false;
        const CoverPlan universal = plan_cover_universal(ws);
        r.trace.push_back(make_entry(crit::cover_universal, ws_inputs(ws), plan_conclusion(universal),
                                     plan_detail(universal)));
        cover = universal.success;
        if (!universal.success)
            witnesses.push_back(r.trace.back().detail);

        if (!cover && support) {
            const CoverPlan p = plan_cover_for_support(*support);
            r.trace.push_back(make_entry(crit::cover_support, to_json(*support), plan_conclusion(p), plan_detail(p)));
            cover = p.success;
            if (!p.success)
                witnesses.push_back(r.trace.back().detail);
        }
        if (!cover && !support && member == MemberClass::fermat) {
            const CoverPlan p = plan_cover_for_support(fermat_support(ws));
            r.trace.push_back(make_entry(crit::cover_fermat, ws_inputs(ws), plan_conclusion(p), plan_detail(p)));
            cover = p.success;
        }
        if (!cover && member == MemberClass::general) {
            r.trace.push_back(make_entry(crit::cover_general, ws_inputs(ws), cover_found));
            cover = true;
        }

        if (cover) {
            r.alpha = alpha_lower_bound(ws, true);
            const std::string concl = eval_alpha(ws, true);
            r.trace.push_back(make_entry(crit::alpha, {{"system", ws_inputs(ws)}, {"cover_available", true}}, concl,
                                         to_json(*r.alpha)));
            if (concl == to_string(Verdict::k_semistable)) {
                nlohmann::json detail;
                if (is_star_all_ones(ws)) {
                    const Int a = *star_case(ws).a;
                    detail["a"] = a;
                    detail["reason"] = a % 2 == 1 ? "a odd: X is smooth and equality suffices"
                                                  : "a even: only 1/2(1,...,1) points, not weakly exceptional";
                    if (a % 2 == 0)
                        detail["assumption"] = "cited result on weakly exceptional quotient singularities";
                } else {
                    detail["reason"] = "smooth hypersurface of degree n in P^n; equality suffices";
                }
                r.trace.push_back(make_entry(crit::alpha_boundary, ws_inputs(ws), eval_alpha_boundary(ws), detail));
            }
        }
    }

    r.verdict = trace_join(r.trace);
    if (r.verdict == Verdict::unknown)
        r.trace.push_back(make_entry(crit::none, ws_inputs(ws), to_string(Verdict::unknown),
                                     {{"member_class", to_string(member)}, {"witnesses", witnesses}}));
    if (r.verdict == Verdict::k_stable)
        r.trace.push_back(make_entry(crit::kahler_einstein, {{"verdict", to_string(r.verdict)}}, "ke_metric"));
    return r;
}

nlohmann::json to_json(const AlphaBound &a)
{
    return nlohmann::json{{"num", a.value.num()},
                          {"den", a.value.den()},
                          {"value", a.value.str()},
                          {"case", to_string(a.case_tag)},
                          {"assumptions", a.assumptions}};
}

nlohmann::json to_json(const TraceEntry &e)
{
    nlohmann::json j{{"criterion", e.criterion}, {"cite", e.cite}, {"inputs", e.inputs}, {"conclusion", e.conclusion}};
    if (!e.detail.is_null())
        j["detail"] = e.detail;
    return j;
}

TraceEntry trace_entry_from_json(const nlohmann::json &j)
{
    return TraceEntry{j.at("criterion").get<std::string>(), j.at("cite").get<std::string>(), j.at("inputs"),
                      j.at("conclusion").get<std::string>(), j.value("detail", nlohmann::json(nullptr))};
}

nlohmann::json to_json(const StabilityReport &r)
{
    nlohmann::json j;
    j["system"] = to_json(r.system);
    j["member_class"] = to_string(r.member_class);
    j["verdict"] = to_string(r.verdict);
    j["alpha"] = r.alpha ? to_json(*r.alpha) : nlohmann::json(nullptr);
    j["aut_finite"] = r.aut_finite ? nlohmann::json(*r.aut_finite) : nlohmann::json(nullptr);
    j["trace"] = nlohmann::json::array();
    for (const auto &e : r.trace)
        j["trace"].push_back(to_json(e));
    return j;
}

BatchSummary batch_classify(const EnumerationResult &catalog, MemberClass member)
{
    BatchSummary s;
    for (Verdict v : {Verdict::k_stable, Verdict::k_polystable, Verdict::k_semistable, Verdict::k_unstable,
                      Verdict::unknown})
        s.counts[v] = 0;
    for (const auto &ws : catalog.systems) {
        StabilityReport r = classify(ws, member);
        ++s.counts[r.verdict];
        ++s.total;
        if (r.verdict == Verdict::unknown)
            s.unknowns.push_back(std::move(r));
    }
    return s;
}

nlohmann::json to_json(const BatchSummary &s)
{
    nlohmann::json j;
    j["total"] = s.total;
    j["counts"] = nlohmann::json::object();
    for (const auto &[v, n] : s.counts)
        j["counts"][to_string(v)] = n;
    j["unknowns"] = nlohmann::json::array();
    for (const auto &r : s.unknowns) {
        nlohmann::json u{{"system", to_json(r.system)}};
        for (const auto &e : r.trace)
            if (e.criterion == crit::none)
                u["witnesses"] = e.detail.at("witnesses");
        j["unknowns"].push_back(u);
    }
    return j;
}

} // namespace divfano
