#pragma once

#include "dcls/modmath.hpp"
#include "dcls/trade.hpp"

#include <cstdint>
#include <string>

namespace dcls {

/// Linear factors in x of the counting argument, as a bitmask.
enum FactorMask : unsigned {
    factor_x = 1u,
    factor_F = 2u,
    factor_neg_G = 4u,
    factor_neg_H = 8u,
};

/// J(x) = [1 + eta(x)][1 + eta(F)][1 - eta(G)][1 - eta(H)].
/// x = 1 is allowed: G(1) = H(1) = 1 so J(1) = 0.
[[nodiscard]] int j_of_x(const Prime & p, NormalTriple t, Residue x);

struct CharSumReport {
    std::int64_t p = 0;
    NormalTriple triple;
    std::int64_t S = 0;
    std::int64_t size_a = 0;
    double bound = 0.0; ///< p - 11 sqrt(p) - 6, for display only

    bool exceeds_32 = false;          ///< S > 32
    bool meets_weil_bound = false;    ///< S >= p - 11 sqrt(p) - 6, checked in integers
    bool within_a_bound = false;      ///< S <= 16 |A| + 32
};

/// Direct summation of J over GF(p) and direct count of
/// A = {x : eta(x) = eta(F) = 1, eta(G) = eta(H) = -1}.
[[nodiscard]] CharSumReport compute_S(const Prime & p, NormalTriple t);

/// S recomputed as p plus the signed eta-sums of every nonempty product of
/// {x, F, G, H}, each G or H factor contributing a sign of -1.
[[nodiscard]] std::int64_t expanded_S(const Prime & p, NormalTriple t);

/// sum over x of eta(a2 x^2 + a1 x + a0) == -eta(a2). Throws if a2 = 0 or the
/// discriminant vanishes.
[[nodiscard]] bool quadratic_sum_check(const Prime & p, Residue a2, Residue a1, Residue a0);

/// sum over x of eta(K(x)) for K the product of the masked factors of
/// {x, F, -G, -H}. Any nonempty mask is accepted.
[[nodiscard]] std::int64_t factor_product_sum(const Prime & p, unsigned mask, NormalTriple t);

/// |sum| <= (d - 1) sqrt(p) for d = popcount(mask) in {2, 3, 4}, compared
/// as sum^2 <= (d - 1)^2 p. Throws on inadmissible triples or bad masks.
[[nodiscard]] bool weil_bound_check(const Prime & p, unsigned mask, NormalTriple t);

[[nodiscard]] std::string render(const CharSumReport & report);

} // namespace dcls
