#include "doctest.h"
#include "oracles.hpp"

#include "dcls/square.hpp"

#include <numeric>
#include <random>
#include <tuple>
#include <set>

using namespace dcls;

namespace {

// Rows of order n for property tests: B_{n,j} relabeled by random shifts.
std::vector<FirstRow> sample_rows(std::int64_t n, std::mt19937_64 & rng)
{
    std::vector<FirstRow> out;
    for (std::int64_t j = 2; j < n; ++j) {
        if (std::gcd(j, n) != 1 || std::gcd(j - 1, n) != 1)
            continue;
        auto row = build_bnj(n, j);
        row = shift(row, Axis::columns, static_cast<Residue>(rng() % n));
        row = shift(row, Axis::symbols, static_cast<Residue>(rng() % n));
        out.push_back(row);
    }
    return out;
}

std::vector<std::int64_t> as_vector(const FirstRow & r)
{
    return {r.symbols().begin(), r.symbols().end()};
}

// Transform every cell of the expanded square, then read row 0 back.
std::vector<std::int64_t> shift_oracle(const FirstRow & r, Axis axis, std::int64_t d)
{
    const auto n = r.order();
    auto g = oracle::grid(as_vector(r));
    std::vector<std::vector<std::int64_t>> out(n, std::vector<std::int64_t>(n, -1));
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) {
            auto [a, b, k] = std::tuple {i, j, g[i][j]};
            if (axis == Axis::rows)
                a = oracle::mod(a + d, n);
            else if (axis == Axis::columns)
                b = oracle::mod(b + d, n);
            else
                k = oracle::mod(k + d, n);
            out[a][b] = k;
        }
    return out[0];
}

}

TEST_CASE("build_bnj")
{
    CHECK(as_vector(build_bnj(5, 3)) == std::vector<std::int64_t> {0, 3, 1, 4, 2});
    CHECK(as_vector(build_bnj(11, 6)) == std::vector<std::int64_t> {0, 6, 1, 7, 2, 8, 3, 9, 4, 10, 5});
    CHECK(as_vector(build_bnj(5, 2)) == std::vector<std::int64_t> {0, 2, 4, 1, 3});
    CHECK_NOTHROW((void) build_bnj(15, 2));
    CHECK_THROWS_AS((void) build_bnj(5, 1), PreconditionError);
    CHECK_THROWS_AS((void) build_bnj(9, 3), PreconditionError);
    CHECK_THROWS_AS((void) build_bnj(6, 5), PreconditionError);
}

TEST_CASE("verify_first_row")
{
    CHECK(verify_first_row(std::vector<Residue> {0, 4, 1, 7, 5, 10, 2, 9, 3, 6, 8}).ok);
    auto identity = verify_first_row(std::vector<Residue> {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK_FALSE(identity.ok);
    CHECK(identity.reason.find("differences not a permutation") != std::string::npos);
    CHECK_FALSE(verify_first_row(std::vector<Residue> {0, 3, 3, 4, 2}).ok);
    CHECK_FALSE(verify_first_row(std::vector<Residue> {0, 3, 1, 4, 5}).ok);
    CHECK_FALSE(verify_first_row(std::vector<Residue> {}).ok);
    CHECK_THROWS_AS((void) FirstRow({0, 1, 2}), PreconditionError);

    // Agreement with full enumeration for n = 5 and 7.
    for (std::int64_t n : {5, 7}) {
        auto rows = oracle::all_rows(n, {});
        std::vector<Residue> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::size_t valid = 0;
        do {
            valid += verify_first_row(perm).ok;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(valid == rows.size());
    }
}

TEST_CASE("expand")
{
    const auto b53 = build_bnj(5, 3);
    const auto square = expand(b53);
    CHECK(square.at(1, 0) == 3);
    CHECK(square.at(4, 4) == 4);
    CHECK(square.row(4) == std::vector<Residue> {2, 0, 3, 1, 4});
    for (Residue i = 0; i < 5; ++i)
        CHECK(square.at(0, i) == b53[i]);

    // Every valid row of small odd order expands to a latin, diagonally
    // cyclic square, and its cyclic transversals partition the cells.
    std::mt19937_64 rng(7);
    for (std::int64_t n = 3; n <= 31; n += 2)
        for (const auto & row : sample_rows(n, rng)) {
            const auto sq = expand(row);
            REQUIRE(sq.is_latin());
            REQUIRE(sq.is_diagonally_cyclic());
            std::set<std::pair<Residue, Residue>> cells;
            for (Residue alpha = 0; alpha < n; ++alpha) {
                auto t = cyclic_transversal(row, alpha);
                for (Residue i = 0; i < n; ++i) {
                    CHECK(sq.contains({i, (t.column + i) % n, (t.symbol + i) % n}));
                    cells.insert({i, (t.column + i) % n});
                }
            }
            CHECK(cells.size() == static_cast<std::size_t>(n * n));
        }
    for (const auto & row : oracle::all_rows(7, {})) {
        const auto sq = expand(FirstRow(row));
        REQUIRE(sq.is_latin());
        REQUIRE(sq.is_diagonally_cyclic());
    }
}

TEST_CASE("shift matches the expand-transform-extract oracle")
{
    const auto b53 = build_bnj(5, 3);
    CHECK(shift(b53, Axis::symbols, 0) == b53);
    CHECK(as_vector(shift(b53, Axis::symbols, 1)) == std::vector<std::int64_t> {1, 4, 2, 0, 3});
    // Row 0 of L(+)_1 1 is old row 4.
    CHECK(as_vector(shift(b53, Axis::rows, 1)) == std::vector<std::int64_t> {2, 0, 3, 1, 4});

    std::mt19937_64 rng(11);
    for (std::int64_t n : {3, 5, 7, 9, 11, 13, 15}) {
        for (const auto & row : sample_rows(n, rng))
            for (auto axis : {Axis::rows, Axis::columns, Axis::symbols})
                for (std::int64_t d = -1; d <= n; ++d) {
                    const auto shifted = shift(row, axis, d);
                    REQUIRE(as_vector(shifted) == shift_oracle(row, axis, d));
                    // Offset laws agree with re-extracting the transversals.
                    for (Residue alpha = 0; alpha < n; ++alpha) {
                        auto moved = shift_offset(cyclic_transversal(row, alpha), axis, d, n);
                        CHECK(contains_transversal(shifted, moved));
                    }
                }
    }
}

TEST_CASE("shifts commute")
{
    std::mt19937_64 rng(5);
    for (const auto & row : sample_rows(13, rng))
        for (auto a : {Axis::rows, Axis::columns, Axis::symbols})
            for (auto b : {Axis::rows, Axis::columns, Axis::symbols}) {
                const auto d1 = static_cast<Residue>(rng() % 13), d2 = static_cast<Residue>(rng() % 13);
                CHECK(shift(shift(row, a, d1), b, d2) == shift(shift(row, b, d2), a, d1));
            }
}

TEST_CASE("multiply")
{
    const auto b53 = build_bnj(5, 3);
    CHECK(multiply(b53, 1) == b53);
    for (Residue k = 1; k < 5; ++k)
        CHECK(multiply(b53, k) == b53);
    CHECK_THROWS_AS((void) multiply(shift(b53, Axis::symbols, 1), 2), PreconditionError);
    CHECK_THROWS_AS((void) multiply(build_bnj(9, 2), 3), PreconditionError);

    // i o_k j = (i k^-1 o j k^-1) k on the full square.
    std::mt19937_64 rng(19);
    for (std::int64_t n : {5, 7, 9, 11, 13}) {
        std::vector<FirstRow> rows;
        if (n <= 7)
            for (const auto & r : oracle::all_rows(n, {{0, 0}}))
                rows.emplace_back(r);
        else
            for (const auto & r : sample_rows(n, rng))
                rows.push_back(shift(r, Axis::symbols, -r[0]));

        for (const auto & row : rows) {
            const auto g = oracle::grid(as_vector(row));
            for (Residue k = 1; k < n; ++k) {
                if (std::gcd(k, n) != 1)
                    continue;
                const auto product = multiply(row, k);
                const auto sq = expand(product);
                const auto kinv = oracle::inverse(k, n);
                for (Residue i = 0; i < n; ++i)
                    for (Residue j = 0; j < n; ++j)
                        REQUIRE(sq.at(i, j) == oracle::mod(g[i * kinv % n][j * kinv % n] * k, n));
                for (Residue alpha = 0; alpha < n; ++alpha)
                    CHECK(contains_transversal(product, multiply_offset(cyclic_transversal(row, alpha), k, n)));
            }
        }
    }
}

TEST_CASE("B_n transversal and semi-queen equivalences")
{
    const auto b53 = build_bnj(5, 3);
    const std::vector<Cell> expected {{0, 0, 0}, {2, 1, 3}, {4, 2, 1}, {1, 3, 4}, {3, 4, 2}};
    CHECK(to_bn_transversal(b53) == expected);
    CHECK(from_bn_transversal(5, expected) == b53);

    const std::vector<std::pair<Residue, Residue>> queens {{0, 0}, {2, 1}, {4, 2}, {1, 3}, {3, 4}};
    CHECK(to_semiqueens(b53) == queens);

    for (const auto & r : oracle::all_rows(7, {})) {
        const FirstRow row(r);
        auto cells = to_bn_transversal(row);
        std::set<Residue> rows, columns, symbols, diagonals;
        for (const auto & c : cells) {
            rows.insert(c.row);
            columns.insert(c.column);
            symbols.insert(c.symbol);
            CHECK(c.symbol == (c.row + c.column) % 7);
        }
        CHECK(rows.size() == 7);
        CHECK(columns.size() == 7);
        CHECK(symbols.size() == 7);
        CHECK(from_bn_transversal(7, cells) == row);

        auto q = to_semiqueens(row);
        CHECK(q.size() == 7);
        for (auto [a, b] : q)
            diagonals.insert((a + b) % 7);
        CHECK(diagonals.size() == 7);
    }

    CHECK_THROWS_WITH_AS((void) from_bn_transversal(3, std::vector<Cell> {{0, 0, 0}, {0, 1, 1}, {2, 2, 1}}),
        doctest::Contains("rows not distinct"), PreconditionError);
    CHECK_THROWS_WITH_AS((void) from_bn_transversal(3, std::vector<Cell> {{0, 0, 1}, {1, 1, 2}, {2, 2, 1}}),
        doctest::Contains("not in B_n"), PreconditionError);
    CHECK_THROWS_AS((void) from_bn_transversal(3, std::vector<Cell> {{0, 0, 0}}), PreconditionError);
}

TEST_CASE("row codec")
{
    CHECK(encode_row(std::vector<Residue> {0, 4, 1, 7, 5, 10, 2, 9, 3, 6, 8}) == "04175a29368");
    CHECK(decode_row("04175a29368") == std::vector<Residue> {0, 4, 1, 7, 5, 10, 2, 9, 3, 6, 8});
    CHECK(decode_row("0,5,3") == std::vector<Residue> {0, 5, 3});
    CHECK_THROWS_AS((void) decode_row("04A"), PreconditionError);
    CHECK_THROWS_AS((void) decode_row(""), PreconditionError);
    CHECK_THROWS_AS((void) decode_row("1,,2"), PreconditionError);

    // Round trip on both encodings: order 37 switches to decimal.
    std::mt19937_64 rng(3);
    for (std::int64_t n : {3, 11, 35, 37, 61}) {
        for (const auto & row : sample_rows(n, rng)) {
            const auto text = encode_row(row);
            CHECK((text.find(',') != std::string::npos) == (n > 36));
            REQUIRE(decode_row(text) == std::vector<Residue>(row.symbols().begin(), row.symbols().end()));
        }
    }
}
