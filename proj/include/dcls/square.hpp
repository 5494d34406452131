#pragma once

#include "dcls/modmath.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcls {

/// Outcome of checking a candidate first row. `reason` is empty when ok.
struct RowVerdict {
    bool ok = false;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Checks the two first-row conditions: the row is a permutation of
/// {0..n-1}, and i -> row[i] - i (mod n) is a permutation as well.
[[nodiscard]] RowVerdict verify_first_row(std::span<const Residue> row);

/// Row 0 of a diagonally cyclic latin square of order n = size(). The whole
/// square is recovered as cell(i, j) = row[j - i] + i, so this is the
/// canonical representation everywhere in the library.
class FirstRow {
public:
    /// Throws PreconditionError carrying the verify_first_row reason.
    explicit FirstRow(std::vector<Residue> symbols);

    [[nodiscard]] std::int64_t order() const noexcept { return static_cast<std::int64_t>(symbols_.size()); }
    [[nodiscard]] std::span<const Residue> symbols() const noexcept { return symbols_; }
    [[nodiscard]] Residue operator[](std::int64_t column) const noexcept { return symbols_[static_cast<std::size_t>(column)]; }
    [[nodiscard]] bool standard_order() const noexcept { return symbols_.front() == 0; }

    friend bool operator==(const FirstRow &, const FirstRow &) = default;

private:
    std::vector<Residue> symbols_;
};

/// The transversal {(i, column + i, symbol + i)}.
struct CyclicTransversalOffset {
    Residue column = 0;
    Residue symbol = 0;

    friend bool operator==(const CyclicTransversalOffset &, const CyclicTransversalOffset &) = default;
};

struct Cell {
    Residue row = 0;
    Residue column = 0;
    Residue symbol = 0;

    friend auto operator<=>(const Cell &, const Cell &) = default;
};

/// Dense n x n grid, used for verification and display only.
class FullSquare {
public:
    FullSquare(std::int64_t n, std::vector<Residue> cells);

    [[nodiscard]] std::int64_t order() const noexcept { return n_; }
    [[nodiscard]] Residue at(std::int64_t row, std::int64_t column) const noexcept
    {
        return cells_[static_cast<std::size_t>(row * n_ + column)];
    }

    [[nodiscard]] bool is_latin() const;
    [[nodiscard]] bool is_diagonally_cyclic() const;
    [[nodiscard]] bool contains(const Cell & cell) const noexcept { return at(cell.row, cell.column) == cell.symbol; }

    /// The first row, i.e. row 0 read left to right.
    [[nodiscard]] std::vector<Residue> row(std::int64_t r) const;

    [[nodiscard]] std::string render() const;

private:
    std::int64_t n_;
    std::vector<Residue> cells_;
};

enum class Axis { rows, columns, symbols };

/// First row of B_{n,j}: row[i] = j*i mod n. Requires gcd(j, n) = 1 and j != 1.
[[nodiscard]] FirstRow build_bnj(std::int64_t n, Residue j);

[[nodiscard]] FullSquare expand(const FirstRow & row);

/// First row of L (+)_axis d: rows moves every cell (i, j, k) to (i + d, j, k),
/// columns to (i, j + d, k), symbols to (i, j, k + d).
[[nodiscard]] FirstRow shift(const FirstRow & row, Axis axis, Residue d);

/// First row of L x k for L in standard order: result[k*i] = k*row[i].
[[nodiscard]] FirstRow multiply(const FirstRow & row, Residue k);

/// Where the transversal L(alpha) lands after shift(axis, d).
[[nodiscard]] CyclicTransversalOffset shift_offset(CyclicTransversalOffset offset, Axis axis, Residue d, std::int64_t n);
/// Where the transversal L(alpha) lands after multiply(k).
[[nodiscard]] CyclicTransversalOffset multiply_offset(CyclicTransversalOffset offset, Residue k, std::int64_t n);

/// The cyclic transversal through column alpha of row 0.
[[nodiscard]] inline CyclicTransversalOffset cyclic_transversal(const FirstRow & row, Residue alpha)
{
    return {alpha, row[alpha]};
}

[[nodiscard]] inline bool contains_transversal(const FirstRow & row, const CyclicTransversalOffset & t) noexcept
{
    return row[t.column] == t.symbol;
}

/// The cells {(row[i] - i, i, row[i])}, a transversal of the addition table B_n.
[[nodiscard]] std::vector<Cell> to_bn_transversal(const FirstRow & row);

/// Inverse of to_bn_transversal. Throws PreconditionError naming the failed
/// condition when the cells are not a transversal of B_n.
[[nodiscard]] FirstRow from_bn_transversal(std::int64_t n, std::span<const Cell> cells);

/// (row, column) positions of n mutually non-attacking toroidal semi-queens.
[[nodiscard]] std::vector<std::pair<Residue, Residue>> to_semiqueens(const FirstRow & row);

/// Compact row text: base-36 digits ('a' = 10) when n <= 36, comma-separated
/// decimal otherwise.
[[nodiscard]] std::string encode_row(std::span<const Residue> row);
[[nodiscard]] std::string encode_row(const FirstRow & row);

/// Parses either encoding. The result is not validated as a first row.
/// Throws PreconditionError on a malformed string.
[[nodiscard]] std::vector<Residue> decode_row(std::string_view text);

} // namespace dcls
