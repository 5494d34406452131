#pragma once

#include "dcls/modmath.hpp"
#include "dcls/search.hpp"
#include "dcls/trade.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcls {

/// Which power indices m count when deciding whether a trade exists.
enum class PowerPolicy {
    all_divisors,   ///< every m >= 2 dividing p - 1
    quadratic_only, ///< m = 2 alone
};

[[nodiscard]] std::vector<int> power_indices(const Prime & p, PowerPolicy policy);

/// An admissible (j, c, e) with no trade for any tried m.
struct ExceptionRecord {
    std::int64_t p = 0;
    NormalTriple triple;
    std::vector<int> tried_ms;
};

/// All admissible (j, c, e) (e != jc) without a trade, sorted by (j, c, e).
/// `jobs` > 1 splits the j range across threads; the output is identical.
[[nodiscard]] std::vector<ExceptionRecord> enumerate_exceptions(const Prime & p, PowerPolicy policy = PowerPolicy::all_divisors, unsigned jobs = 1);

struct CensusRow {
    std::int64_t p = 0;
    std::size_t exceptions = 0;
};

[[nodiscard]] std::vector<CensusRow> exception_table(std::span<const std::int64_t> primes, PowerPolicy policy = PowerPolicy::all_divisors, unsigned jobs = 1);

/// Odd primes in [lo, hi].
[[nodiscard]] std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

/// Two-line "prime | ..." / "#excep | ..." table plus a total line.
[[nodiscard]] std::string render_table(std::span<const CensusRow> rows);

struct Resolution {
    ExceptionRecord record;
    std::uint64_t seed = 0; ///< the per-record seed handed to solve()
    std::optional<FirstRow> row;
    SearchStats stats;
};

/// Per-record search seed: policy seed mixed with (p, j, c, e).
[[nodiscard]] std::uint64_t record_seed(std::uint64_t base, std::int64_t p, NormalTriple t) noexcept;

/// Runs the randomized search on every exception of p.
[[nodiscard]] std::vector<Resolution> resolve_exceptions(const Prime & p, const SearchPolicy & policy, PowerPolicy power = PowerPolicy::all_divisors);

/// One corpus line "c e j row" with row in base-36.
struct CorpusEntry {
    std::size_t line_number = 0;
    NormalTriple triple;
    std::vector<Residue> row;
};

struct CorpusIssue {
    std::size_t line_number = 0;
    std::string reason;
};

struct CorpusReport {
    std::size_t lines = 0;       ///< non-blank lines read
    std::size_t valid = 0;       ///< lines passing every per-line check
    std::size_t expected = 0;    ///< size of the exception set
    std::vector<CorpusIssue> issues;
    std::vector<NormalTriple> missing;    ///< exceptions absent from the corpus
    std::vector<NormalTriple> unexpected; ///< corpus triples that are not exceptions

    [[nodiscard]] bool count_ok() const noexcept { return lines == expected; }
    [[nodiscard]] bool ok() const noexcept
    {
        return count_ok() && valid == lines && issues.empty() && missing.empty() && unexpected.empty();
    }
};

/// Parses "c e j row" lines; throws PreconditionError with the line number
/// on the first malformed line.
[[nodiscard]] std::vector<CorpusEntry> parse_corpus(std::string_view text);

/// Checks every line (parse, row length p, first-row validity, fixed cells
/// 0, j, e at columns 0, 1, c, membership in the exception set) and the
/// corpus triple set against enumerate_exceptions(p). Parse errors are
/// reported per line rather than thrown.
[[nodiscard]] CorpusReport verify_corpus(std::string_view text, const Prime & p);

} // namespace dcls
