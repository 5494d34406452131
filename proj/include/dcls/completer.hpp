#pragma once

#include "dcls/modmath.hpp"
#include "dcls/search.hpp"
#include "dcls/square.hpp"
#include "dcls/trade.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcls {

/// Three prescribed cyclic transversals {(i, c_k + i, s_k + i)} of a square
/// of prime order p.
struct TransversalTriple {
    Prime p;
    std::array<CyclicTransversalOffset, 3> offsets;
};

/// Which input transversal plays the role of the first, second and third.
using Ordering = std::array<int, 3>;

/// All six orderings, in the priority order used by complete().
inline constexpr std::array<Ordering, 6> kOrderings {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

/// Pairwise distinct columns, symbols and symbol - column diagonals.
/// Returns the violated inequality, or nullopt.
[[nodiscard]] std::optional<std::string> validate_triple(const TransversalTriple & t);

/// The relabeling that takes the input square to the normalized frame:
/// column shift, then symbol shift, then multiplication.
struct NormalizationMap {
    Residue column_shift = 0;
    Residue symbol_shift = 0;
    Residue multiplier = 1;

    friend bool operator==(const NormalizationMap &, const NormalizationMap &) = default;
};

struct NormalForm {
    NormalTriple triple;
    NormalizationMap map;

    friend bool operator==(const NormalForm &, const NormalForm &) = default;
};

/// Sends the chosen first transversal to (0, 0), the second to (1, j) and the
/// third to (c, e). Throws PreconditionError if the triple is invalid.
[[nodiscard]] NormalForm normalize(const TransversalTriple & t, const Ordering & ordering);

[[nodiscard]] CyclicTransversalOffset normalize_offset(const CyclicTransversalOffset & offset, const NormalizationMap & map, const Prime & p);

/// Maps a standard-order row of the normalized frame back to the input frame.
[[nodiscard]] FirstRow denormalize(const FirstRow & normalized, const NormalizationMap & map);

enum class Method { contained_in_b, trade, search };

[[nodiscard]] std::string_view to_string(Method method) noexcept;
[[nodiscard]] std::optional<Method> method_from_string(std::string_view text) noexcept;

/// Everything needed to rebuild and re-check a completion. `first_row` is in
/// the normalized frame; completed_row() gives the input-frame row.
struct CompletionCertificate {
    static constexpr int kVersion = 1;

    Method method = Method::contained_in_b;
    std::int64_t p = 0;
    Ordering ordering {0, 1, 2};
    NormalForm normal_form;
    std::optional<TradeParams> trade;
    std::optional<SearchPolicy> search;
    FirstRow first_row;
};

[[nodiscard]] FirstRow completed_row(const CompletionCertificate & cert);

/// No completion was found. Not expected for p > 7.
class CompletionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tries, in order: containment in B_{p,j} under any ordering, a trade under
/// any ordering, then randomized search in the first ordering.
/// Throws PreconditionError for p <= 7 or an invalid triple, and
/// CompletionFailure if the search gives up.
[[nodiscard]] CompletionCertificate complete(const TransversalTriple & t, const SearchPolicy & policy);

/// Rebuilds the normalized row from the certificate's parameters (B_{p,j},
/// the trade, or a replay of the seeded search when replay_search is set),
/// checks it against the recorded row, denormalizes and checks that the
/// square is a diagonally cyclic latin square holding all 3p cells of t.
[[nodiscard]] bool verify_certificate(const CompletionCertificate & cert, const TransversalTriple & t, bool replay_search = true);

/// One-line JSON record with a version field and stable key order.
[[nodiscard]] std::string certificate_to_json(const CompletionCertificate & cert);
[[nodiscard]] CompletionCertificate certificate_from_json(std::string_view text);

} // namespace dcls
