#include <doctest.h>

#include <numeric>
#include <random>

#include "divfano/core.hpp"
#include "divfano/enumerate.hpp"

using namespace divfano;

namespace
{

// every n-element sub-multiset of the weights has gcd 1
bool well_formed_oracle(const std::vector<Int> &w)
{
    for (std::size_t skip = 0; skip < w.size(); ++skip) {
        Int g = 0;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (k != skip)
                g = std::gcd(g, w[k]);
        if (g != 1)
            return false;
    }
    return true;
}

bool representable_oracle(Int target, const std::vector<Int> &gens, std::size_t from = 0)
{
    if (target == 0)
        return true;
    if (from == gens.size())
        return false;
    for (Int m = 0; m * gens[from] <= target; ++m)
        if (representable_oracle(target - m * gens[from], gens, from + 1))
            return true;
    return false;
}

// lexicographically smallest coefficient vector, scanning m_0 = 0, 1, ...
std::optional<std::vector<Int>> representation_oracle(Int target, const std::vector<Int> &gens,
                                                      std::size_t from = 0)
{
    if (from == gens.size())
        return target == 0 ? std::optional<std::vector<Int>>{std::vector<Int>{}} : std::nullopt;
    for (Int m = 0; m * gens[from] <= target; ++m)
        if (auto rest = representation_oracle(target - m * gens[from], gens, from + 1)) {
            rest->insert(rest->begin(), m);
            return rest;
        }
    return std::nullopt;
}

std::vector<WeightSystem> catalog(int dim)
{
    EnumerationQuery q;
    q.num_weights = dim + 2;
    return enumerate(q).systems;
}

} // namespace

TEST_CASE("rational arithmetic is exact and reduced")
{
    CHECK(Rational{6, 8} == Rational{3, 4});
    CHECK(Rational{3, -6}.str() == "-1/2");
    CHECK(Rational{4, 4}.str() == "1/1");
    CHECK(Rational{0, 5}.str() == "0/1");
    CHECK(Rational{1, 3} + Rational{1, 6} == Rational{1, 2});
    CHECK(Rational{2, 3} * Rational{3, 4} == Rational{1, 2});
    CHECK(Rational{1, 2} / Rational{1, 4} == Rational{2});
    CHECK(Rational{1, 3} - Rational{1, 2} == Rational{-1, 6});
    CHECK(Rational{5, 6} > Rational{3, 4});
    CHECK_THROWS(Rational(1, 0));
    const Int big = std::numeric_limits<Int>::max() / 2 + 1;
    CHECK_THROWS_AS(Rational{big} + Rational{big}, std::overflow_error);
}

TEST_CASE("weight systems are kept sorted")
{
    const WeightSystem ws{{3, 30, 4, 5, 4, 15}, 60};
    CHECK(ws.weights() == std::vector<Int>{3, 4, 4, 5, 15, 30});
    CHECK(ws.str() == "3,4,4,5,15,30:60");
    CHECK(ws.index() == 1);
    CHECK(ws.n() == 5);
    CHECK(ws.dim() == 4);
    CHECK(ws.divisible());
    CHECK(ws.quotient(0) == 20);
    CHECK_THROWS_AS(WeightSystem({}, 3), validation_error);
    CHECK_THROWS_AS(WeightSystem({1, 0, 2}, 3), validation_error);
    CHECK_THROWS_AS(WeightSystem({1, 1, 2}, -4), validation_error);
}

TEST_CASE("validation flags")
{
    auto v = validate(WeightSystem{{1, 1, 2, 3}, 6}, 1);
    CHECK(v.ok());
    v = validate(WeightSystem{{2, 2, 2, 3}, 9}, 1);
    CHECK_FALSE(v.well_formed);
    CHECK_FALSE(v.divisibility);
    v = validate(WeightSystem{{1, 1, 2, 3}, 3}, 4);
    CHECK(v.linear_cone);
    CHECK_FALSE(v.ok());
    v = validate(WeightSystem{{1, 1, 1, 1}, 3}, 2);
    CHECK_FALSE(v.index_matches);
    CHECK_THROWS_AS(validate(WeightSystem{{3}, 3}, 0), validation_error);
}

TEST_CASE("well-formedness agrees with the subset-gcd oracle")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(2, 6), val(1, 30);
    for (int t = 0; t < 3000; ++t) {
        std::vector<Int> w(static_cast<std::size_t>(len(rng)));
        for (auto &x : w)
            x = val(rng);
        std::sort(w.begin(), w.end());
        CHECK(is_well_formed(w) == well_formed_oracle(w));
    }
}

TEST_CASE("star case and threshold")
{
    const WeightSystem s{{1, 1, 2, 3, 6}, 12};
    CHECK(star_case(s).holds);
    CHECK(*star_case(s).a == 6);
    CHECK(threshold_c(s) == Rational{5, 6});
    CHECK(threshold_c(WeightSystem{{1, 1, 2, 2, 5}, 10}) == Rational{4, 5});
    CHECK(threshold_c(WeightSystem{{1, 1, 1, 1, 1}, 4}) == Rational{3, 4});
    CHECK_FALSE(star_case(WeightSystem{{1, 1, 1, 2, 2}, 6}).holds); // 3 absent
    CHECK_FALSE(star_case(WeightSystem{{1, 1, 1, 2}, 4}).holds);     // d/2 = 2 < 3
    CHECK_FALSE(star_case(WeightSystem{{1, 1, 1, 1, 3}, 6}).holds);  // no 2
}

TEST_CASE("lct inequalities hold on every catalog system")
{
    std::size_t equalities = 0;
    for (int dim = 2; dim <= 4; ++dim)
        for (const auto &ws : catalog(dim)) {
            const InequalityReport r = check_lemma_ineq(ws);
            REQUIRE_MESSAGE(r.ok(), ws.str());
            CHECK(r.checks.size() == ws.size() * (ws.size() - 1));
            if (r.c_equality) {
                ++equalities;
                const auto &w = ws.weights();
                const bool ones = w.back() == 1 && ws.degree() == ws.n();
                const bool star_ones = std::all_of(w.begin(), w.end() - 2, [](Int a) { return a == 1; })
                                       && w[w.size() - 2] == 2 && ws.degree() == 2 * w.back();
                CHECK_MESSAGE((ones || star_ones), ws.str());
            }
        }
    // (1^4:3), (1,1,2,3:6), (1^5:4), (1,1,1,2,4:8), (1^6:5), (1,1,1,1,2,5:10)
    CHECK(equalities == 6);
}

TEST_CASE("lct inequality preconditions are reported")
{
    auto r = check_lemma_ineq(WeightSystem{{2, 2, 2, 3}, 6});
    CHECK_FALSE(r.precondition_ok);
    CHECK(r.precondition_message.find("well-formed") != std::string::npos);
    r = check_lemma_ineq(WeightSystem{{1, 1, 1, 1}, 4});
    CHECK_FALSE(r.precondition_ok);
    CHECK_FALSE(r.ok());
}

TEST_CASE("semigroup membership agrees with exhaustive search")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> count(1, 4), gen(1, 40);
    for (int t = 0; t < 200; ++t) {
        std::vector<Int> gens(static_cast<std::size_t>(count(rng)));
        for (auto &g : gens)
            g = gen(rng);
        for (Int target = 0; target <= 200; ++target) {
            const bool expected = representable_oracle(target, gens);
            REQUIRE(semigroup_representable(target, gens) == expected);
        }
        for (Int target = 0; target <= 60; ++target)
            REQUIRE(semigroup_representation(target, gens) == representation_oracle(target, gens));
    }
    CHECK_FALSE(semigroup_representable(3, std::vector<Int>{}));
    CHECK(semigroup_representable(0, std::vector<Int>{}));
    CHECK_FALSE(semigroup_representable(-1, std::vector<Int>{1}));
}

TEST_CASE("coprime triple minimum")
{
    CHECK(triple_gap(3, 4, 5) == 48);
    const TripleMinimum m = coprime_triple_minimum(30);
    CHECK(m.gap == 48);
    CHECK(m.triple == std::array<Int, 3>{3, 4, 5});
    CHECK_THROWS(coprime_triple_minimum(4));

    // brute force with the oracle above
    Int best = std::numeric_limits<Int>::max();
    for (Int a = 2; a <= 12; ++a)
        for (Int b = a + 1; b <= 12; ++b)
            for (Int c = b + 1; c <= 12; ++c) {
                if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1)
                    continue;
                if (representable_oracle(a, {b, c}) || representable_oracle(b, {a, c})
                    || representable_oracle(c, {a, b}))
                    continue;
                best = std::min(best, a * b * c - a - b - c);
            }
    CHECK(coprime_triple_minimum(12).gap == best);
}
