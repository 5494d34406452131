#pragma once

#include "dcls/modmath.hpp"
#include "dcls/square.hpp"

#include <optional>
#include <span>
#include <string>

namespace dcls {

/// The normalized frame: transversals through 0 at column 0, j at column 1
/// and e at column c of row 0.
struct NormalTriple {
    Residue j = 0;
    Residue c = 0;
    Residue e = 0;

    friend auto operator<=>(const NormalTriple &, const NormalTriple &) = default;
};

/// Describes why (j, c, e) cannot be a valid set of three transversals, or
/// nullopt if it can. With allow_jc == false the case e = jc (already inside
/// B_{p,j}) is rejected too, giving exactly the trade-lemma hypotheses
/// j, c not in {0, 1} and e not in {0, j, c, c + j - 1, jc}.
[[nodiscard]] std::optional<std::string> admissibility_violation(const Prime & p, NormalTriple t, bool allow_jc);

[[nodiscard]] inline bool is_admissible(const Prime & p, NormalTriple t, bool allow_jc = false)
{
    return ! admissibility_violation(p, t, allow_jc);
}

/// A trade on B_{p,j}: every first-row symbol s with (s - gamma)/alpha a
/// nonzero m-th power becomes x*(s - gamma) + gamma.
struct TradeParams {
    int m = 2;
    Residue x = 0;
    Residue alpha = 1;
    Residue gamma = 0;

    friend bool operator==(const TradeParams &, const TradeParams &) = default;
};

/// Values of the three rational functions at x:
///   F(x) = (1 - jx)/(1 - j)
///   G(x) = (e - xjc)/(e - jc)
///   H(x) = (xj(1 - c) + e - j)/(e - jc)
/// F(x) is a nonzero m-th power iff the underlying power equation is
/// solvable; G and H decide whether columns 0 and 1 survive the trade.
struct FGH {
    Residue F = 0;
    Residue G = 0;
    Residue H = 0;

    friend bool operator==(const FGH &, const FGH &) = default;
};

struct TradeCompletion {
    FirstRow row;
    TradeParams params;
};

/// Trade search for a fixed prime with precomputed inverse and power tables.
/// Methods taking a NormalTriple assume it is admissible; the free functions
/// below check and then delegate here.
class TradeEngine {
public:
    explicit TradeEngine(const Prime & p);

    [[nodiscard]] const FieldTables & tables() const noexcept { return tables_; }
    [[nodiscard]] const Prime & prime() const noexcept { return tables_.prime(); }

    [[nodiscard]] FGH fgh(NormalTriple t, Residue x) const noexcept;

    /// Smallest x in [2, p) with x and F(x) nonzero m-th powers and neither
    /// G(x) nor H(x) a nonzero m-th power.
    [[nodiscard]] std::optional<Residue> find_x(NormalTriple t, int m) const;

    /// First (m, x) over ascending m, with alpha and gamma derived from x.
    [[nodiscard]] std::optional<TradeParams> find_params(NormalTriple t) const;

    [[nodiscard]] bool has_trade(NormalTriple t) const { return find_params(t).has_value(); }

    /// Writes the traded first row of B_{p,j} into out (size p). No checks.
    void apply(Residue j, const TradeParams & params, std::span<Residue> out) const;

    /// find_params + apply, with the result verified to be a first row that
    /// still holds 0, j, e at columns 0, 1, c.
    [[nodiscard]] std::optional<TradeCompletion> complete(NormalTriple t) const;

private:
    FieldTables tables_;
};

/// Throws on inadmissible (j, c, e). x may be any residue; the closed forms
/// are polynomial in x.
[[nodiscard]] FGH eval_fgh(const Prime & p, NormalTriple t, Residue x);

[[nodiscard]] std::optional<Residue> find_x(const Prime & p, NormalTriple t, int m);

/// gamma = (xjc - e)/(x - 1), alpha = (e - jc)/(x - 1), taking beta = 1.
/// Then alpha + gamma = jc and alpha*x + gamma = e.
[[nodiscard]] TradeParams derive_params(const Prime & p, NormalTriple t, Residue x, int m);

/// Applies a trade to B_{p,j}. Throws unless x is a nonzero m-th power other
/// than 1, F(x) is a nonzero m-th power, and alpha != 0.
[[nodiscard]] FirstRow apply_trade(const Prime & p, Residue j, const TradeParams & params);

/// Tries m over proper_power_divisors(p) ascending. Requires e != jc.
[[nodiscard]] std::optional<TradeCompletion> complete_via_trade(const Prime & p, NormalTriple t);

} // namespace dcls
