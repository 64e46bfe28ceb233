#ifndef DIVFANO_ENUMERATE_HPP
#define DIVFANO_ENUMERATE_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "divfano/core.hpp"

namespace divfano
{

struct EnumerationQuery
{
    int num_weights = 0; ///< n + 1, at least 3
    Int index = 1;
    std::optional<Int> d_max;
    bool require_well_formed = true;
    bool exclude_linear_cone = true;

    friend bool operator==(const EnumerationQuery &, const EnumerationQuery &) = default;
};

struct EnumerationResult
{
    EnumerationQuery query;
    /// Sorted by (degree, weights), duplicate free.
    std::vector<WeightSystem> systems;
    /// True when the list is the full classification for the query; false
    /// when it was cut off by d_max or produced by a bounded oracle.
    bool complete = false;

    friend bool operator==(const EnumerationResult &, const EnumerationResult &) = default;
};

/// All weight systems with num_weights weights, sum(a_i) - d = index and
/// a_i | d for every i (so every d / a_i >= 2 once cones are excluded).
///
/// Index 1 with both filters on is searched without any degree bound: with
/// b_i = d / a_i the defining relation becomes sum 1/b_i = 1 + 1/d, an
/// Egyptian-fraction equation with finitely many solutions, and the search
/// over ascending b_i is exhaustive. Every other query needs d_max and is
/// reported incomplete.
EnumerationResult enumerate(const EnumerationQuery &query);

/// Exhaustive scan over ascending tuples with all a_i <= a_max. Independent
/// of enumerate(); only useful for small a_max (cost ~ a_max^num_weights).
EnumerationResult enumerate_bruteforce(int num_weights, Int index, Int a_max);

enum class TableFormat
{
    tsv,
    markdown,
    json
};

/// Deterministic rendering. Markdown lists rows in the classification
/// table's order (lexicographic by weights, then degree); tsv and json keep
/// the result's (degree, weights) order.
std::string render_table(const EnumerationResult &result, TableFormat format);

class catalog_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int catalog_version = 1;

void save_catalog(const EnumerationResult &result, const std::filesystem::path &path);

/// Throws catalog_error on unreadable, corrupt or version-mismatched files.
EnumerationResult load_catalog(const std::filesystem::path &path);

/// As above, but returns nullopt (cache miss) when the stored query differs
/// from expected.
std::optional<EnumerationResult> load_catalog(const std::filesystem::path &path,
                                              const EnumerationQuery &expected);

} // namespace divfano

#endif
