#ifndef DIVFANO_MONOMIAL_HPP
#define DIVFANO_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "divfano/core.hpp"
#include "divfano/json.hpp"

namespace divfano
{

/// Exponent vector k_0..k_n. The weighted degree is always computed against
/// an explicit ambient, never cached.
struct Monomial
{
    std::vector<Int> exponents;

    std::size_t size() const { return exponents.size(); }
    Int operator[](std::size_t i) const { return exponents[i]; }

    /// sum k_i a_i; throws validation_error on a length mismatch.
    Int degree(const WeightSystem &ambient) const;

    /// "(k_0,...,k_n)"
    std::string str() const;

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

/// Monomials appearing with non-zero (generic) coefficient in a defining
/// equation. Kept duplicate free and in descending lexicographic order of
/// exponent vectors, which is the canonical order for reporting witnesses.
class Support
{
public:
    Support(WeightSystem ambient, std::vector<Monomial> monomials);

    const WeightSystem &ambient() const { return ambient_; }
    const std::vector<Monomial> &monomials() const { return monomials_; }
    std::size_t size() const { return monomials_.size(); }
    bool contains(const Monomial &m) const;

    friend bool operator==(const Support &, const Support &) = default;

private:
    WeightSystem ambient_;
    std::vector<Monomial> monomials_;
};

/// A support read from a file together with the map back to the file's
/// column order (files may list weights unsorted).
struct SupportFile
{
    Support support;
    /// column[p] is the file column of canonical position p.
    std::vector<std::size_t> column;

    Monomial to_file_order(const Monomial &m) const;
    std::size_t file_index(std::size_t canonical) const { return column.at(canonical); }
};

/// {"weights": [...], "degree": d, "monomials": [[k_0,...,k_n], ...]}
SupportFile support_from_json(const nlohmann::json &j);
SupportFile load_support(const std::filesystem::path &path);
nlohmann::json to_json(const Support &s);

/// { z_i^(d/a_i) }. Requires a_i | d and d != a_i for every i.
Support fermat_support(const WeightSystem &ws);

struct StarViolation
{
    Monomial monomial;
    std::size_t index;
};

/// Condition (star) over the whole support; nullopt when it holds, otherwise
/// the first violating (monomial, index) in canonical order.
std::optional<StarViolation> star_condition(const Support &s);

/// The same condition restricted to position i (which must have a_i > 1).
std::optional<Monomial> star_condition_at(const Support &s, std::size_t i);

struct UniversalViolation
{
    /// Exponent vector of degree d with k_i = 1 breaking the condition.
    Monomial exponents;
    /// Positions carrying the other variables of the witness.
    std::vector<std::size_t> subset;
};

/// Condition at i for every possible member of the family: nullopt iff each
/// degree-d exponent vector with k_i = 1 has a_i in the semigroup generated
/// by the weights of its other variables. Searched over subsets of distinct
/// weight values, not over monomials.
std::optional<UniversalViolation> universal_star_at(const WeightSystem &ws, std::size_t i);

struct WeightCover
{
    WeightSystem ambient;
    /// position_map[old] = new position after re-sorting.
    std::vector<std::size_t> position_map;
};

/// Replaces a_i by 1 and re-sorts (stable on ties).
WeightCover cover_weights(const WeightSystem &ws, std::size_t i);

struct CoverResult
{
    Support support;
    std::vector<std::size_t> position_map;
};

/// Pull-back along the cyclic cover x_i -> x_i^{a_i}: k_i becomes k_i * a_i
/// and the weight becomes 1. Degree is unchanged.
CoverResult apply_cover(const Support &s, std::size_t i);

/// Support of F(z_0, ..., z_i + lambda*M, ..., z_n) for generic lambda: every
/// z_i^t is replaced by all z_i^(t-r) M^r, r = 0..t, and merged with the
/// originals. M must have weighted degree a_i and k_i = 0.
Support substitute(const Support &s, std::size_t i, const Monomial &m);

struct CoverStep
{
    enum class Kind
    {
        cover,
        substitute
    };

    Kind kind;
    /// Position in ambient_before.
    std::size_t index;
    WeightSystem ambient_before;
    /// Substitution monomial, substitute steps only.
    std::optional<Monomial> monomial;
    /// Cover steps only: old position -> new position.
    std::vector<std::size_t> position_map;
    std::string note;
};

const char *to_string(CoverStep::Kind kind);

struct CoverPlan
{
    std::vector<CoverStep> steps;
    bool success = false;
    /// On failure: the obstruction and its position in failed_ambient.
    std::optional<Monomial> witness;
    std::optional<std::size_t> witness_index;
    std::optional<WeightSystem> failed_ambient;

    std::size_t cover_count() const;
};

/// Iterated cover construction for one explicit support. Picks the smallest
/// weight > 1 each round, substitutes with the lexicographically smallest
/// representation when some monomial has k_i = 1, covers, and re-checks
/// (star) after every step.
CoverPlan plan_cover_for_support(const Support &s);

/// Cover construction valid for every member of the family: covers any
/// position whose universal condition holds (smallest weight first, lowest
/// index on ties). Failure means the procedure finds no plan, not that no
/// smooth cover exists. Requires an index-1 system with a_i | d.
CoverPlan plan_cover_universal(const WeightSystem &ws);

/// Adds z_i^(d/a_i) for every i missing it, through z_j -> z_j + lambda
/// z_i^(a_j/a_i) where z_j z_i^c is in the support. Throws validation_error
/// naming i when no such monomial exists.
Support move_coordinate_points(const Support &s);

} // namespace divfano

#endif
