#ifndef DIVFANO_CORE_HPP
#define DIVFANO_CORE_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "divfano/rational.hpp"

namespace divfano
{

/// Thrown when an input violates a standing hypothesis (divisibility,
/// Fano index, well-formedness, ...) of the operation it was passed to.
class validation_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Weights a_0 <= ... <= a_n of a weighted projective space together with
/// the degree d of a hypersurface in it.
///
/// The weights are always kept in ascending order; constructors sort their
/// input. Nothing else (divisibility, well-formedness, Fano index) is
/// enforced here; see validate().
class WeightSystem
{
public:
    WeightSystem(std::vector<Int> weights, Int degree);

    const std::vector<Int> &weights() const { return weights_; }
    Int degree() const { return degree_; }
    Int weight(std::size_t i) const { return weights_[i]; }

    /// Number of weights, n + 1.
    std::size_t size() const { return weights_.size(); }
    /// n, the dimension of the ambient weighted projective space.
    Int n() const { return static_cast<Int>(weights_.size()) - 1; }
    /// Dimension of the hypersurface, n - 1.
    Int dim() const { return n() - 1; }

    Int weight_sum() const;
    /// Fano index sum(a_i) - d.
    Int index() const { return weight_sum() - degree_; }

    bool divisible() const;
    /// d / a_i; only meaningful when a_i | d.
    Int quotient(std::size_t i) const { return degree_ / weights_[i]; }
    Int min_weight() const { return weights_.front(); }

    /// "a0,a1,...,an:d"
    std::string str() const;

    friend bool operator==(const WeightSystem &, const WeightSystem &) = default;
    /// Orders by degree first, then lexicographically by weights.
    friend std::strong_ordering operator<=>(const WeightSystem &a, const WeightSystem &b);

private:
    std::vector<Int> weights_;
    Int degree_;
};

struct ValidationReport
{
    bool well_formed = false;
    bool divisibility = false;
    bool linear_cone = false;
    bool index_matches = false;

    /// All standing hypotheses hold: well-formed, divisible, not a cone and
    /// the expected index.
    bool ok() const { return well_formed && divisibility && !linear_cone && index_matches; }
};

/// Evaluates the standing hypotheses for ws against an expected Fano index.
/// Throws validation_error for a single weight (no hypersurface to speak of).
ValidationReport validate(const WeightSystem &ws, Int index);

/// gcd of all weights except position i, for every i, equals 1.
bool is_well_formed(std::span<const Int> weights);

struct StarCase
{
    bool holds = false;
    std::optional<Int> a;
};

/// Condition (*): d = 2a with a >= 3 and the weights containing both 2 and a
/// at two distinct positions.
StarCase star_case(const WeightSystem &ws);

/// c = (d-2)/d when (*) holds, (d-1)/d otherwise.
Rational threshold_c(const WeightSystem &ws);

enum class InequalityKind
{
    unit_weight, ///< a_i = 1
    star_pair,   ///< (*) holds, a_i = 2, a_j = a
    general      ///< a_i > 1, every other case
};

const char *to_string(InequalityKind kind);

struct InequalityCheck
{
    InequalityKind kind;
    std::size_t i;
    std::size_t j;
    Rational lhs;
    Rational rhs;
    bool pass;
    bool equality;
};

struct InequalityReport
{
    bool precondition_ok = false;
    std::string precondition_message;

    Rational c;
    Rational c_floor; ///< (n-1)/n
    bool c_bound_holds = false;
    bool c_equality = false;
    /// When c == (n-1)/n, whether the system has one of the two shapes
    /// (1,...,1 : n) or (1,...,1,2,a : 2a). Vacuously true otherwise.
    bool equality_shape_ok = false;

    std::vector<InequalityCheck> checks;

    std::size_t failures() const;
    const InequalityCheck *first_failure() const;
    bool ok() const { return precondition_ok && failures() == 0 && c_bound_holds && equality_shape_ok; }
};

/// Evaluates every per-pair log canonical threshold inequality over all
/// ordered pairs i != j, plus the lower bound c >= (n-1)/n. Preconditions
/// (well-formed, a_i | d, d = sum a_i - 1) are reported, never skipped.
InequalityReport check_lemma_ineq(const WeightSystem &ws);

/// Is target a non-negative integer combination of generators? Dynamic
/// programming over 0..target.
bool semigroup_representable(Int target, std::span<const Int> generators);

/// Coefficients m with sum m_k g_k = target, chosen lexicographically
/// smallest (minimise m_0, then m_1, ...). nullopt when not representable.
std::optional<std::vector<Int>> semigroup_representation(Int target, std::span<const Int> generators);

/// a0*a1*a2 - a0 - a1 - a2
Int triple_gap(Int a0, Int a1, Int a2);

struct TripleMinimum
{
    Int gap;
    std::array<Int, 3> triple;
};

/// Minimum of triple_gap over 1 < a0 < a1 < a2 <= bound, pairwise coprime,
/// with no a_i a non-negative combination of the other two. The witness is
/// the lexicographically first triple attaining the minimum.
TripleMinimum coprime_triple_minimum(Int bound);

} // namespace divfano

#endif
