#include <doctest.h>

#include <filesystem>

#include "divfano/enumerate.hpp"
#include "divfano/stability.hpp"

using namespace divfano;

namespace
{

EnumerationResult catalog(int dim)
{
    EnumerationQuery q;
    q.num_weights = dim + 2;
    return enumerate(q);
}

bool has_entry(const StabilityReport &r, const std::string &criterion)
{
    return std::any_of(r.trace.begin(), r.trace.end(), [&](const TraceEntry &e) { return e.criterion == criterion; });
}

const TraceEntry &entry(const StabilityReport &r, const std::string &criterion)
{
    for (const auto &e : r.trace)
        if (e.criterion == criterion)
            return e;
    throw std::logic_error("no entry " + criterion);
}

void check_sound(const StabilityReport &r)
{
    for (const auto &e : r.trace)
        CHECK_MESSAGE(recompute_conclusion(e) == e.conclusion, r.system.str(), " ", e.criterion);
    CHECK(trace_join(r.trace) == r.verdict);
}

} // namespace

TEST_CASE("alpha bound spot values")
{
    auto a = alpha_lower_bound(WeightSystem{{1, 1, 2, 2, 5}, 10}, true);
    REQUIRE(a);
    CHECK(a->value == Rational{4, 5});
    CHECK(a->case_tag == AlphaCase::star);
    a = alpha_lower_bound(WeightSystem{{1, 1, 2, 3, 6}, 12}, true);
    CHECK(a->value == Rational{5, 6});
    a = alpha_lower_bound(WeightSystem{{2, 4, 5, 5, 5}, 20}, true);
    CHECK(a->value == Rational{1});
    CHECK(a->case_tag == AlphaCase::all_weights_ge2);
    a = alpha_lower_bound(WeightSystem{{1, 1, 1, 1, 1}, 4}, true);
    CHECK(a->value == Rational{3, 4});
    CHECK(a->case_tag == AlphaCase::generic);
    CHECK_FALSE(alpha_lower_bound(WeightSystem{{1, 1, 1, 1, 1}, 4}, false));
    CHECK_THROWS_AS(alpha_lower_bound(WeightSystem{{1, 1, 1, 1}, 4}, true), validation_error);
}

TEST_CASE("alpha bound is never below (n-1)/n on the catalogs")
{
    for (int dim = 2; dim <= 4; ++dim)
        for (const auto &ws : catalog(dim).systems) {
            const auto a = alpha_lower_bound(ws, true);
            REQUIRE(a);
            CHECK(a->value >= Rational{ws.n() - 1, ws.n()});
            const Int d = ws.degree();
            const Rational formula = star_case(ws).holds      ? Rational{d - 2, d}
                                     : ws.min_weight() >= 2 ? Rational{1}
                                                            : Rational{d - 1, d};
            CHECK(a->value == formula);
        }
}

TEST_CASE("verdict lattice")
{
    CHECK(entails(Verdict::k_stable, Verdict::k_semistable));
    CHECK(entails(Verdict::k_polystable, Verdict::k_semistable));
    CHECK_FALSE(entails(Verdict::k_semistable, Verdict::k_stable));
    CHECK_FALSE(entails(Verdict::k_unstable, Verdict::k_semistable));
    CHECK(entails(Verdict::k_unstable, Verdict::unknown));
    CHECK(join(Verdict::unknown, Verdict::k_semistable) == Verdict::k_semistable);
    CHECK(join(Verdict::k_semistable, Verdict::k_stable) == Verdict::k_stable);
    CHECK(join(Verdict::k_unstable, Verdict::unknown) == Verdict::k_unstable);
    CHECK_THROWS_AS(join(Verdict::k_unstable, Verdict::k_semistable), std::logic_error);
    for (Verdict v : {Verdict::unknown, Verdict::k_semistable, Verdict::k_polystable, Verdict::k_stable,
                      Verdict::k_unstable})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_FALSE(verdict_from_string("stable"));
}

TEST_CASE("fermat criterion")
{
    auto f = fermat_k_stability(WeightSystem{{2, 3, 3, 3, 3, 3}, 6});
    CHECK(f.verdict == Verdict::k_unstable);
    CHECK(f.margin == -1);
    f = fermat_k_stability(WeightSystem{{2, 3, 3, 3, 3}, 6});
    CHECK(f.verdict == Verdict::k_semistable);
    CHECK(f.margin == 0);
    f = fermat_k_stability(WeightSystem{{1, 1, 1, 1}, 3});
    CHECK(f.verdict == Verdict::k_stable);
    CHECK(f.margin == 2);
    CHECK(f.aut_finite);
    // P^1 x P^1 as a quadric: K-polystable, infinite automorphisms
    f = fermat_k_stability(WeightSystem{{1, 1, 1, 1}, 2});
    CHECK(f.verdict == Verdict::k_polystable);
    CHECK_FALSE(f.aut_finite);
    CHECK_THROWS_AS(fermat_k_stability(WeightSystem{{1, 2, 3}, 7}), validation_error);
    CHECK_THROWS_AS(fermat_k_stability(WeightSystem{{1, 1, 3}, 3}), validation_error);
    CHECK_THROWS_AS(fermat_k_stability(WeightSystem{{1, 2, 2}, 8}), validation_error);
}

TEST_CASE("finite automorphisms")
{
    CHECK(aut_finite(std::vector<Int>{3, 3, 4, 4}, std::vector<Int>{12}));
    CHECK_FALSE(aut_finite(std::vector<Int>{2, 3, 3, 3, 3, 3}, std::vector<Int>{6}));
    // low index branch: I = 1 < n - c = 3
    CHECK(aut_finite(std::vector<Int>{1, 1, 1, 1, 1}, std::vector<Int>{4}));
    CHECK_THROWS(aut_finite(std::vector<Int>{1, 1}, std::vector<Int>{}));
    CHECK_THROWS(aut_finite(std::vector<Int>{3, 1, 1}, std::vector<Int>{2}));
}

TEST_CASE("classification of single systems")
{
    auto r = classify(WeightSystem{{1, 1, 2, 3, 6}, 12}, MemberClass::any_quasi_smooth);
    CHECK(r.verdict == Verdict::k_stable);
    REQUIRE(r.alpha);
    CHECK(r.alpha->value == Rational{5, 6});
    CHECK(has_entry(r, "kahler_einstein"));
    check_sound(r);

    // boundary case: alpha = dim/(dim+1) exactly
    r = classify(WeightSystem{{1, 1, 1, 1, 1}, 4}, MemberClass::any_quasi_smooth);
    CHECK(entry(r, "alpha_criterion").conclusion == "k_semistable");
    CHECK(entry(r, "alpha_boundary").conclusion == "k_stable");
    CHECK(r.verdict == Verdict::k_stable);
    r = classify(WeightSystem{{1, 1, 1, 2, 4}, 8}, MemberClass::any_quasi_smooth);
    CHECK(entry(r, "alpha_boundary").detail.contains("assumption"));
    CHECK(r.verdict == Verdict::k_stable);
    check_sound(r);

    const WeightSystem x60{{3, 4, 4, 5, 15, 30}, 60};
    r = classify(x60, MemberClass::any_quasi_smooth);
    CHECK(r.verdict == Verdict::unknown);
    CHECK_FALSE(r.alpha);
    CHECK(entry(r, "cover_universal").conclusion == "no_plan");
    CHECK(entry(r, "no_criterion").detail["witnesses"].size() == 1);
    check_sound(r);

    r = classify(x60, MemberClass::general);
    CHECK(entry(r, "general_low_index").conclusion == "k_stable");
    CHECK(r.verdict == Verdict::k_stable);
    check_sound(r);

    r = classify(x60, MemberClass::fermat);
    CHECK(entry(r, "fermat_criterion").conclusion == "k_stable");
    CHECK(r.verdict == Verdict::k_stable);
    check_sound(r);

    const auto sf = load_support(std::filesystem::path(DIVFANO_SOURCE_DIR) / "fixtures/x60_p3454_15_30.json");
    r = classify(x60, MemberClass::any_quasi_smooth, sf.support);
    CHECK(entry(r, "cover_support").conclusion == "no_plan");
    CHECK(r.verdict == Verdict::unknown);
    check_sound(r);

    r = classify(WeightSystem{{2, 3, 3, 3, 3, 3}, 6}, MemberClass::fermat);
    CHECK(r.verdict == Verdict::k_unstable);
    CHECK_FALSE(has_entry(r, "kahler_einstein"));
    check_sound(r);
    r = classify(WeightSystem{{2, 3, 3, 3, 3, 3}, 6}, MemberClass::any_quasi_smooth);
    CHECK(r.verdict == Verdict::unknown);

    CHECK_THROWS_AS(classify(WeightSystem{{1, 2, 3}, 7}, MemberClass::fermat), validation_error);
    CHECK_THROWS_AS(classify(WeightSystem{{1, 1, 2, 3}, 3}, MemberClass::fermat), validation_error);
    CHECK_THROWS_AS(classify(WeightSystem{{1, 1, 1}, 6}, MemberClass::fermat), validation_error);
    CHECK_THROWS_AS(classify(WeightSystem{{1, 1, 2, 3}, 6}, MemberClass::any_quasi_smooth, sf.support),
                    validation_error);
}

TEST_CASE("tampered trace entries are detected")
{
    auto r = classify(WeightSystem{{1, 1, 2, 3, 6}, 12}, MemberClass::any_quasi_smooth);
    TraceEntry e = entry(r, "alpha_criterion");
    e.conclusion = "k_semistable";
    CHECK(recompute_conclusion(e) != e.conclusion);
    e.criterion = "made_up";
    CHECK_THROWS(recompute_conclusion(e));

    std::vector<TraceEntry> bad{entry(r, "alpha_criterion")};
    bad.push_back(bad.front());
    bad.back().conclusion = "k_unstable";
    CHECK_THROWS_AS(trace_join(bad), std::logic_error);
}

TEST_CASE("report JSON")
{
    const auto r = classify(WeightSystem{{1, 1, 2, 3, 6}, 12}, MemberClass::any_quasi_smooth);
    const auto j = to_json(r);
    CHECK(j["verdict"] == "k_stable");
    CHECK(j["member_class"] == "any_quasi_smooth");
    CHECK(j["alpha"]["value"] == "5/6");
    CHECK(j["alpha"]["num"] == 5);
    CHECK(j["aut_finite"] == true);
    REQUIRE(j["trace"].is_array());
    for (const auto &je : j["trace"]) {
        const TraceEntry e = trace_entry_from_json(je);
        CHECK(recompute_conclusion(e) == e.conclusion);
        CHECK_FALSE(e.cite.empty());
    }
}

TEST_CASE("every report on the catalogs is sound")
{
    for (int dim = 2; dim <= 4; ++dim)
        for (const auto &ws : catalog(dim).systems)
            for (MemberClass m : {MemberClass::fermat, MemberClass::general, MemberClass::any_quasi_smooth})
                check_sound(classify(ws, m));
}

TEST_CASE("batch classification")
{
    auto s = batch_classify(catalog(2));
    CHECK(s.counts[Verdict::k_stable] == 4);
    s = batch_classify(catalog(3));
    CHECK(s.counts[Verdict::k_stable] == 30);
    s = batch_classify(catalog(4));
    CHECK(s.total == 661);
    CHECK(s.counts[Verdict::k_stable] == 653);
    CHECK(s.counts[Verdict::unknown] == 8);
    std::vector<Int> degrees;
    for (const auto &r : s.unknowns)
        degrees.push_back(r.system.degree());
    CHECK(degrees == std::vector<Int>{60, 105, 140, 210, 420, 714, 1386, 1890});
    CHECK(s.unknowns.front().system == WeightSystem{{3, 4, 4, 5, 15, 30}, 60});
    const auto j = to_json(s);
    CHECK(j["counts"]["unknown"] == 8);
    CHECK(j["unknowns"].size() == 8);

    // the general member is K-stable for every fourfold
    CHECK(batch_classify(catalog(4), MemberClass::general).counts[Verdict::k_stable] == 661);
}
