#pragma once

#include "dcls/modmath.hpp"
#include "dcls/square.hpp"
#include "dcls/trade.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dcls {

/// Find a first row of order p agreeing with `fixed` (column -> symbol).
struct SearchProblem {
    Prime p;
    std::map<Residue, Residue> fixed;

    /// {0: 0, 1: j, c: e}
    [[nodiscard]] static SearchProblem from_triple(const Prime & p, NormalTriple t);
};

/// Why the fixed cells cannot belong to any first row, if they cannot:
/// out-of-range entries, a repeated symbol, or a repeated symbol - column.
[[nodiscard]] std::optional<std::string> consistency_violation(const SearchProblem & problem);

/// Restart schedule for the randomized search. Restart r is abandoned once
/// it has made cutoff * growth^r assignments.
struct SearchPolicy {
    std::uint64_t seed = 20240101;
    std::uint64_t restart_cutoff_initial = 0; ///< 0 selects 50 * p
    double restart_growth = 2.0;
    int max_restarts = 40;

    [[nodiscard]] std::uint64_t initial_cutoff(std::int64_t p) const noexcept
    {
        return restart_cutoff_initial ? restart_cutoff_initial : static_cast<std::uint64_t>(50 * p);
    }

    friend bool operator==(const SearchPolicy &, const SearchPolicy &) = default;
};

struct SearchStats {
    int restarts = 0;            ///< restarts started, including the first run
    std::uint64_t nodes = 0;     ///< assignments made across all restarts
    bool proved_infeasible = false;
};

struct SearchResult {
    std::optional<FirstRow> row;
    SearchStats stats;
};

/// Randomized-restart depth-first search. Branches on the lowest unassigned
/// column, trying the admissible symbols in an order shuffled by a
/// seed-driven mt19937_64. Identical (problem, policy) give identical results.
/// A restart that exhausts its tree below the cutoff proves infeasibility and
/// ends the search early. Throws if the fixed cells are inconsistent or the
/// policy is malformed (cutoff < p, growth <= 1, max_restarts < 1).
[[nodiscard]] SearchResult solve(const SearchProblem & problem, const SearchPolicy & policy);

/// Every first row extending the fixed cells, in lexicographic order.
/// Only for p <= 13.
[[nodiscard]] std::vector<FirstRow> exhaustive_solve(const SearchProblem & problem);

inline constexpr std::int64_t kExhaustiveLimit = 13;

} // namespace dcls
