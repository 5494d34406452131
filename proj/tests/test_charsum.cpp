#include "doctest.h"
#include "oracles.hpp"

#include "dcls/charsum.hpp"

#include <random>

using namespace dcls;

namespace {

NormalTriple random_admissible(const Prime & p, std::mt19937_64 & rng)
{
    for (;;) {
        NormalTriple t {static_cast<Residue>(rng() % p.value()), static_cast<Residue>(rng() % p.value()),
            static_cast<Residue>(rng() % p.value())};
        if (is_admissible(p, t))
            return t;
    }
}

}

TEST_CASE("j_of_x values")
{
    const Prime p(31);
    const NormalTriple t {4, 7, 11};
    REQUIRE(is_admissible(p, t));
    for (Residue x = 0; x < 31; ++x) {
        auto v = eval_fgh(p, t, x);
        const int J = j_of_x(p, t, x);
        const int ex = oracle::quadratic_character(x, 31);
        if (ex == -1)
            CHECK(J == 0);
        const bool in_a = ex == 1 && oracle::quadratic_character(v.F, 31) == 1 && oracle::quadratic_character(v.G, 31) == -1
            && oracle::quadratic_character(v.H, 31) == -1;
        if (in_a)
            CHECK(J == 16);
        if (x == 0 || v.F == 0 || v.G == 0 || v.H == 0)
            CHECK(J <= 8);
        if (! in_a)
            CHECK(J <= 8);
        CHECK((J == 0 || J == 1 || J == 2 || J == 4 || J == 8 || J == 16));
    }
    CHECK(j_of_x(p, t, 1) == 0);
}

TEST_CASE("compute_S")
{
    const Prime p11(11);
    auto r = compute_S(p11, {4, 2, 1});
    CHECK(r.size_a == 0);
    CHECK(r.within_a_bound);

    CHECK(compute_S(p11, {6, 2, 4}).size_a >= 0);
    CHECK_THROWS_AS((void) compute_S(p11, {4, 2, 8}), PreconditionError);

    std::mt19937_64 rng(17);
    for (std::int64_t n : {11, 13, 29, 61, 101}) {
        const Prime q(n);
        for (int k = 0; k < 20; ++k) {
            auto t = random_admissible(q, rng);
            auto report = compute_S(q, t);
            std::int64_t S = 0, A = 0;
            for (Residue x = 0; x < n; ++x) {
                const int J = j_of_x(q, t, x);
                S += J;
                A += J == 16;
            }
            CHECK(report.S == S);
            CHECK(report.size_a == A);
            CHECK(report.within_a_bound);
            CHECK(report.meets_weil_bound);
            // Nonempty A gives a strict-sign x, so find_x succeeds for m = 2.
            if (report.size_a > 0)
                CHECK(find_x(q, t, 2));
            CHECK(expanded_S(q, t) == report.S);
        }
    }

    for (std::int64_t n : {191, 193, 197}) {
        const Prime q(n);
        for (int k = 0; k < 10; ++k) {
            auto report = compute_S(q, random_admissible(q, rng));
            CHECK(report.exceeds_32);
            CHECK(report.meets_weil_bound);
            CHECK(report.bound > 32.0);
        }
    }
}

TEST_CASE("expanded_S equals direct S for every admissible triple at p = 13")
{
    const Prime p(13);
    for (Residue j = 0; j < 13; ++j)
        for (Residue c = 0; c < 13; ++c)
            for (Residue e = 0; e < 13; ++e)
                if (is_admissible(p, {j, c, e}))
                    REQUIRE(expanded_S(p, {j, c, e}) == compute_S(p, {j, c, e}).S);
}

TEST_CASE("single linear factors sum to zero")
{
    std::mt19937_64 rng(23);
    for (std::int64_t n : {11, 29, 101}) {
        const Prime q(n);
        auto t = random_admissible(q, rng);
        for (unsigned mask : {1u, 2u, 4u, 8u})
            CHECK(factor_product_sum(q, mask, t) == 0);
    }
}

TEST_CASE("quadratic_sum_check")
{
    CHECK(quadratic_sum_check(Prime(7), 1, 0, 1));
    CHECK(quadratic_sum_check(Prime(11), 2, 1, 3));

    // Independent count for x^2 + 1 over GF(7): values 1,2,5,3,3,5,2.
    int sum = 0;
    for (int x = 0; x < 7; ++x)
        sum += oracle::quadratic_character(x * x + 1, 7);
    CHECK(sum == -1);
    sum = 0;
    for (int x = 0; x < 11; ++x)
        sum += oracle::quadratic_character(2 * x * x + x + 3, 11);
    CHECK(sum == 1);

    CHECK_THROWS_WITH_AS((void) quadratic_sum_check(Prime(7), 1, 0, 0), doctest::Contains("hypothesis violated"), PreconditionError);
    CHECK_THROWS_WITH_AS((void) quadratic_sum_check(Prime(7), 0, 1, 1), doctest::Contains("hypothesis violated"), PreconditionError);
    // (x + 1)^2 has zero discriminant.
    CHECK_THROWS_AS((void) quadratic_sum_check(Prime(11), 1, 2, 1), PreconditionError);
}

TEST_CASE("weil_bound_check")
{
    std::mt19937_64 rng(29);
    for (std::int64_t n : {31, 61, 101}) {
        const Prime q(n);
        for (int k = 0; k < 10; ++k) {
            auto t = random_admissible(q, rng);
            for (unsigned mask = 1; mask < 16; ++mask) {
                const int d = std::popcount(mask);
                if (d < 2)
                    continue;
                CHECK(weil_bound_check(q, mask, t));
                const auto s = factor_product_sum(q, mask, t);
                // Quadratic sums are exactly -eta(leading coefficient).
                if (d == 2)
                    CHECK((s == 1 || s == -1));
            }
        }
    }
    const Prime p(11);
    CHECK_THROWS_AS((void) weil_bound_check(p, 1u, {4, 2, 1}), PreconditionError);
    CHECK_THROWS_AS((void) weil_bound_check(p, 3u, {4, 2, 8}), PreconditionError);
    CHECK_THROWS_AS((void) weil_bound_check(p, 16u, {4, 2, 1}), PreconditionError);
}
