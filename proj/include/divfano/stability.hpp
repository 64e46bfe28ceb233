#ifndef DIVFANO_STABILITY_HPP
#define DIVFANO_STABILITY_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divfano/core.hpp"
#include "divfano/enumerate.hpp"
#include "divfano/json.hpp"
#include "divfano/monomial.hpp"

namespace divfano
{

enum class AlphaCase
{
    star,            ///< condition (*): (d-2)/d
    all_weights_ge2, ///< every a_i >= 2 and not (*): 1
    generic          ///< (d-1)/d
};

const char *to_string(AlphaCase c);

/// Lower bound for the alpha invariant, never its value.
struct AlphaBound
{
    Rational value;
    AlphaCase case_tag;
    std::vector<std::string> assumptions;
};

/// Requires index 1, a_i | d, well-formed, not a linear cone. The bound is
/// conditional on curves having orbifold multiplicity <= 1, which a smooth
/// cover guarantees; without one (cover_available = false) nothing is
/// returned.
std::optional<AlphaBound> alpha_lower_bound(const WeightSystem &ws, bool cover_available);

/// k_stable => k_polystable => k_semistable; k_unstable excludes the three;
/// unknown asserts nothing.
enum class Verdict
{
    unknown,
    k_semistable,
    k_polystable,
    k_stable,
    k_unstable
};

const char *to_string(Verdict v);
std::optional<Verdict> verdict_from_string(const std::string &s);
/// Does a verdict of level `have` entail `want`?
bool entails(Verdict have, Verdict want);
/// Strongest verdict supported by both; throws std::logic_error when one
/// side says k_unstable and the other a positive level.
Verdict join(Verdict a, Verdict b);

struct FermatVerdict
{
    Verdict verdict;
    /// n * a_0 - I
    Int margin;
    bool aut_finite;
};

/// Fermat member z_0^(d/a_0) + ... + z_n^(d/a_n): K-polystable iff I < n a_0,
/// K-semistable iff I <= n a_0; upgraded to K-stable when polystable and the
/// automorphism group is known to be finite.
FermatVerdict fermat_k_stability(const WeightSystem &ws);

/// Sufficient criterion for a finite automorphism group of a weighted
/// complete intersection with the given multidegree. false means the
/// criterion is silent, not that Aut is infinite.
bool aut_finite(std::span<const Int> weights, std::span<const Int> degrees);

enum class MemberClass
{
    fermat,
    general,
    any_quasi_smooth
};

const char *to_string(MemberClass m);
std::optional<MemberClass> member_class_from_string(const std::string &s);

/// One criterion application. conclusion is recomputable from criterion and
/// inputs alone (see recompute_conclusion); detail carries witnesses and
/// other output that is not part of the check.
struct TraceEntry
{
    std::string criterion;
    std::string cite;
    nlohmann::json inputs;
    std::string conclusion;
    nlohmann::json detail;
};

struct StabilityReport
{
    WeightSystem system;
    MemberClass member_class;
    Verdict verdict = Verdict::unknown;
    std::optional<AlphaBound> alpha;
    std::optional<bool> aut_finite;
    std::vector<TraceEntry> trace;
};

/// Runs the criteria in order (general low index, Fermat, smooth cover and
/// alpha bound), records each in the trace and returns the join of their
/// conclusions. Requires a Fano system with a_i | d that is not a linear
/// cone; a support, when given, must live on the same ambient.
StabilityReport classify(const WeightSystem &ws, MemberClass member,
                         const std::optional<Support> &support = std::nullopt);

/// Re-evaluates a trace entry from its criterion name and inputs.
std::string recompute_conclusion(const TraceEntry &entry);

/// Join over the verdict-valued conclusions of a trace.
Verdict trace_join(const std::vector<TraceEntry> &trace);

nlohmann::json to_json(const AlphaBound &a);
nlohmann::json to_json(const TraceEntry &e);
nlohmann::json to_json(const StabilityReport &r);
TraceEntry trace_entry_from_json(const nlohmann::json &j);

struct BatchSummary
{
    std::size_t total = 0;
    std::map<Verdict, std::size_t> counts;
    /// Reports with verdict unknown, in catalog order.
    std::vector<StabilityReport> unknowns;
};

BatchSummary batch_classify(const EnumerationResult &catalog,
                            MemberClass member = MemberClass::any_quasi_smooth);

nlohmann::json to_json(const BatchSummary &s);

} // namespace divfano

#endif
