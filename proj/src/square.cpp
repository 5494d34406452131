#include "dcls/square.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace dcls {

namespace {
    Residue mod(std::int64_t a, std::int64_t n) noexcept
    {
        Residue r = a % n;
        return r < 0 ? r + n : r;
    }

    char digit36(Residue d) noexcept
    {
        return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
    }
}

RowVerdict verify_first_row(std::span<const Residue> row)
{
    const auto n = static_cast<std::int64_t>(row.size());
    if (n == 0)
        return {false, "empty row"};

    std::vector<bool> seen_symbol(static_cast<std::size_t>(n)), seen_difference(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Residue s = row[static_cast<std::size_t>(i)];
        if (s < 0 || s >= n)
            return {false, "symbol " + std::to_string(s) + " at column " + std::to_string(i) + " out of range"};
        if (seen_symbol[s])
            return {false, "symbols not a permutation: " + std::to_string(s) + " repeats at column " + std::to_string(i)};
        seen_symbol[s] = true;
    }
    for (std::int64_t i = 0; i < n; ++i) {
        Residue d = mod(row[static_cast<std::size_t>(i)] - i, n);
        if (seen_difference[d])
            return {false, "differences not a permutation: " + std::to_string(d) + " repeats at column " + std::to_string(i)};
        seen_difference[d] = true;
    }
    return {true, {}};
}

FirstRow::FirstRow(std::vector<Residue> symbols) : symbols_(std::move(symbols))
{
    if (auto verdict = verify_first_row(symbols_); ! verdict)
        throw PreconditionError("invalid first row: " + verdict.reason);
}

FullSquare::FullSquare(std::int64_t n, std::vector<Residue> cells) : n_(n), cells_(std::move(cells))
{
    if (n <= 0 || cells_.size() != static_cast<std::size_t>(n * n))
        throw PreconditionError("grid size does not match order " + std::to_string(n));
}

bool FullSquare::is_latin() const
{
    for (std::int64_t a = 0; a < n_; ++a) {
        std::vector<bool> in_row(static_cast<std::size_t>(n_)), in_column(static_cast<std::size_t>(n_));
        for (std::int64_t b = 0; b < n_; ++b) {
            Residue r = at(a, b), c = at(b, a);
            if (r < 0 || r >= n_ || c < 0 || c >= n_ || in_row[r] || in_column[c])
                return false;
            in_row[r] = in_column[c] = true;
        }
    }
    return true;
}

bool FullSquare::is_diagonally_cyclic() const
{
    for (std::int64_t i = 0; i < n_; ++i)
        for (std::int64_t j = 0; j < n_; ++j)
            if (at((i + 1) % n_, (j + 1) % n_) != mod(at(i, j) + 1, n_))
                return false;
    return true;
}

std::vector<Residue> FullSquare::row(std::int64_t r) const
{
    auto first = cells_.begin() + r * n_;
    return {first, first + n_};
}

std::string FullSquare::render() const
{
    const auto width = std::to_string(n_ - 1).size();
    std::ostringstream out;
    for (std::int64_t i = 0; i < n_; ++i) {
        for (std::int64_t j = 0; j < n_; ++j) {
            auto s = std::to_string(at(i, j));
            out << std::string(width - s.size() + (j ? 1 : 0), ' ') << s;
        }
        out << '\n';
    }
    return out.str();
}

FirstRow build_bnj(std::int64_t n, Residue j)
{
    if (n <= 0 || n % 2 == 0)
        throw PreconditionError("order " + std::to_string(n) + " must be odd and positive");
    Residue jj = mod(j, n);
    if (jj == 1 % n)
        throw PreconditionError("j = 1 does not generate a latin square");
    if (std::gcd(jj, n) != 1)
        throw PreconditionError("j = " + std::to_string(j) + " is not coprime to " + std::to_string(n));
    std::vector<Residue> row(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        row[i] = jj * i % n;
    return FirstRow(std::move(row));
}

FullSquare expand(const FirstRow & row)
{
    const auto n = row.order();
    std::vector<Residue> cells(static_cast<std::size_t>(n * n));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t c = 0; c < n; ++c)
            cells[i * n + c] = (row[mod(c - i, n)] + i) % n;
    return FullSquare(n, std::move(cells));
}

FirstRow shift(const FirstRow & row, Axis axis, Residue d)
{
    const auto n = row.order();
    d = mod(d, n);
    std::vector<Residue> out(static_cast<std::size_t>(n));
    for (std::int64_t c = 0; c < n; ++c) {
        switch (axis) {
        case Axis::rows:
            // new row 0 is old row -d: cell(-d, c) = row[c + d] - d
            out[c] = mod(row[(c + d) % n] - d, n);
            break;
        case Axis::columns:
            out[c] = row[mod(c - d, n)];
            break;
        case Axis::symbols:
            out[c] = (row[c] + d) % n;
            break;
        }
    }
    return FirstRow(std::move(out));
}

FirstRow multiply(const FirstRow & row, Residue k)
{
    const auto n = row.order();
    if (! row.standard_order())
        throw PreconditionError("multiply requires a row in standard order (row[0] = 0)");
    k = mod(k, n);
    if (std::gcd(k, n) != 1)
        throw PreconditionError("multiplier " + std::to_string(k) + " is not coprime to " + std::to_string(n));
    std::vector<Residue> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        out[k * i % n] = k * row[i] % n;
    return FirstRow(std::move(out));
}

CyclicTransversalOffset shift_offset(CyclicTransversalOffset offset, Axis axis, Residue d, std::int64_t n)
{
    switch (axis) {
    case Axis::rows:
        return {mod(offset.column - d, n), mod(offset.symbol - d, n)};
    case Axis::columns:
        return {mod(offset.column + d, n), mod(offset.symbol, n)};
    case Axis::symbols:
        return {mod(offset.column, n), mod(offset.symbol + d, n)};
    }
    return offset;
}

CyclicTransversalOffset multiply_offset(CyclicTransversalOffset offset, Residue k, std::int64_t n)
{
    return {mod(mod(k, n) * mod(offset.column, n), n), mod(mod(k, n) * mod(offset.symbol, n), n)};
}

std::vector<Cell> to_bn_transversal(const FirstRow & row)
{
    const auto n = row.order();
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        out.push_back({mod(row[i] - i, n), i, row[i]});
    return out;
}

FirstRow from_bn_transversal(std::int64_t n, std::span<const Cell> cells)
{
    if (n <= 0 || cells.size() != static_cast<std::size_t>(n))
        throw PreconditionError("transversal of B_" + std::to_string(n) + " needs exactly n cells");
    std::vector<bool> rows(static_cast<std::size_t>(n)), columns(static_cast<std::size_t>(n)), symbols(static_cast<std::size_t>(n));
    std::vector<Residue> out(static_cast<std::size_t>(n));
    for (const auto & cell : cells) {
        if (cell.row < 0 || cell.row >= n || cell.column < 0 || cell.column >= n || cell.symbol < 0 || cell.symbol >= n)
            throw PreconditionError("cell coordinates out of range");
        if (cell.symbol != (cell.row + cell.column) % n)
            throw PreconditionError("cell is not in B_n: symbol != row + column");
        if (rows[cell.row])
            throw PreconditionError("rows not distinct");
        if (columns[cell.column])
            throw PreconditionError("columns not distinct");
        if (symbols[cell.symbol])
            throw PreconditionError("symbols not distinct");
        rows[cell.row] = columns[cell.column] = symbols[cell.symbol] = true;
        out[cell.column] = cell.symbol;
    }
    return FirstRow(std::move(out));
}

std::vector<std::pair<Residue, Residue>> to_semiqueens(const FirstRow & row)
{
    std::vector<std::pair<Residue, Residue>> out;
    for (const auto & cell : to_bn_transversal(row))
        out.emplace_back(cell.row, cell.column);
    return out;
}

std::string encode_row(std::span<const Residue> row)
{
    std::string out;
    if (row.size() <= 36) {
        for (Residue s : row) {
            if (s < 0 || s >= 36)
                throw PreconditionError("symbol " + std::to_string(s) + " has no base-36 digit");
            out.push_back(digit36(s));
        }
        return out;
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out.push_back(',');
        out += std::to_string(row[i]);
    }
    return out;
}

std::string encode_row(const FirstRow & row)
{
    return encode_row(row.symbols());
}

std::vector<Residue> decode_row(std::string_view text)
{
    std::vector<Residue> out;
    if (text.empty())
        throw PreconditionError("empty row string");

    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos)
                end = text.size();
            auto token = text.substr(start, end - start);
            Residue value = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0)
                throw PreconditionError("malformed decimal symbol '" + std::string(token) + "'");
            out.push_back(value);
            start = end + 1;
        }
        return out;
    }

    for (char ch : text) {
        if (ch >= '0' && ch <= '9')
            out.push_back(ch - '0');
        else if (ch >= 'a' && ch <= 'z')
            out.push_back(ch - 'a' + 10);
        else
            throw PreconditionError(std::string("malformed base-36 digit '") + ch + "'");
    }
    return out;
}

} // namespace dcls
