#include "dcls/trade.hpp"

#include <stdexcept>
#include <vector>

namespace dcls {

std::optional<std::string> admissibility_violation(const Prime & p, NormalTriple t, bool allow_jc)
{
    const auto r = [&](Residue a) { return p.reduce(a); };
    if (r(t.j) != t.j || r(t.c) != t.c || r(t.e) != t.e)
        return "j, c, e must be reduced residues mod " + std::to_string(p.value());
    if (t.j == 0)
        return "j = 0";
    if (t.j == 1)
        return "j = 1";
    if (t.c == 0)
        return "c = 0";
    if (t.c == 1)
        return "c = 1";
    if (t.e == 0)
        return "e = 0";
    if (t.e == t.j)
        return "e = j";
    if (t.e == t.c)
        return "e = c";
    if (t.e == r(t.c + t.j - 1))
        return "e - c = j - 1";
    if (! allow_jc && t.e == r(t.j * t.c))
        return "e = jc";
    return std::nullopt;
}

namespace {
    void require_admissible(const Prime & p, NormalTriple t, bool allow_jc = false)
    {
        if (auto why = admissibility_violation(p, t, allow_jc))
            throw PreconditionError("inadmissible triple (j, c, e): " + *why);
    }
}

TradeEngine::TradeEngine(const Prime & p) : tables_(p)
{
}

FGH TradeEngine::fgh(NormalTriple t, Residue x) const noexcept
{
    const auto & f = tables_;
    const Residue jc = f.mul(t.j, t.c);
    const Residue xj = f.mul(x, t.j);
    const Residue inv_1j = f.inv(f.sub(1, t.j));
    const Residue inv_ejc = f.inv(f.sub(t.e, jc));
    return {
        f.mul(f.sub(1, xj), inv_1j),
        f.mul(f.sub(t.e, f.mul(xj, t.c)), inv_ejc),
        f.mul(f.sub(f.add(f.mul(xj, f.sub(1, t.c)), t.e), t.j), inv_ejc),
    };
}

std::optional<Residue> TradeEngine::find_x(NormalTriple t, int m) const
{
    const auto & f = tables_;
    const auto & power = f.powers(m);
    const Residue p = f.prime().value();

    const Residue jc = f.mul(t.j, t.c);
    const Residue inv_1j = f.inv(f.sub(1, t.j));
    const Residue inv_ejc = f.inv(f.sub(t.e, jc));
    const Residue jc1 = f.mul(t.j, f.sub(1, t.c));
    const Residue e_minus_j = f.sub(t.e, t.j);

    for (Residue x = 2; x < p; ++x) {
        if (! power[x])
            continue;
        const Residue xj = f.mul(x, t.j);
        if (! power[f.mul(f.sub(1, xj), inv_1j)])
            continue;
        if (power[f.mul(f.sub(t.e, f.mul(x, jc)), inv_ejc)])
            continue;
        if (power[f.mul(f.add(f.mul(x, jc1), e_minus_j), inv_ejc)])
            continue;
        return x;
    }
    return std::nullopt;
}

std::optional<TradeParams> TradeEngine::find_params(NormalTriple t) const
{
    const auto & f = tables_;
    for (int m : f.divisors()) {
        if (auto x = find_x(t, m)) {
            const Residue jc = f.mul(t.j, t.c);
            const Residue inv_x1 = f.inv(f.sub(*x, 1));
            return TradeParams {
                m,
                *x,
                f.mul(f.sub(t.e, jc), inv_x1),
                f.mul(f.sub(f.mul(*x, jc), t.e), inv_x1),
            };
        }
    }
    return std::nullopt;
}

void TradeEngine::apply(Residue j, const TradeParams & params, std::span<Residue> out) const
{
    const auto & f = tables_;
    const auto & power = f.powers(params.m);
    const Residue inv_alpha = f.inv(params.alpha);
    const Residue p = f.prime().value();
    for (Residue i = 0; i < p; ++i) {
        const Residue s = f.mul(j, i);
        const Residue shifted = f.sub(s, params.gamma);
        out[static_cast<std::size_t>(i)] = power[f.mul(shifted, inv_alpha)] ? f.add(f.mul(params.x, shifted), params.gamma) : s;
    }
}

std::optional<TradeCompletion> TradeEngine::complete(NormalTriple t) const
{
    auto params = find_params(t);
    if (! params)
        return std::nullopt;
    std::vector<Residue> row(static_cast<std::size_t>(prime().value()));
    apply(t.j, *params, row);
    if (row[0] != 0 || row[1] != t.j || row[static_cast<std::size_t>(t.c)] != t.e)
        throw std::logic_error("trade moved a prescribed transversal");
    // FirstRow's constructor re-verifies the row.
    return TradeCompletion {FirstRow(std::move(row)), *params};
}

FGH eval_fgh(const Prime & p, NormalTriple t, Residue x)
{
    require_admissible(p, t);
    return TradeEngine(p).fgh(t, p.reduce(x));
}

std::optional<Residue> find_x(const Prime & p, NormalTriple t, int m)
{
    require_admissible(p, t);
    if (m < 2 || (p.value() - 1) % m != 0)
        throw PreconditionError("power index m=" + std::to_string(m) + " must be >= 2 and divide p-1");
    return TradeEngine(p).find_x(t, m);
}

TradeParams derive_params(const Prime & p, NormalTriple t, Residue x, int m)
{
    require_admissible(p, t);
    x = p.reduce(x);
    if (x == 1)
        throw PreconditionError("x = 1 leaves gamma and alpha undefined");
    const Residue jc = p.reduce(t.j * t.c);
    const Residue inv_x1 = inv(x - 1, p);
    return TradeParams {
        m,
        x,
        p.reduce(p.reduce(t.e - jc) * inv_x1),
        p.reduce(p.reduce(x * jc - t.e) * inv_x1),
    };
}

FirstRow apply_trade(const Prime & p, Residue j, const TradeParams & params)
{
    j = p.reduce(j);
    if (j == 0 || j == 1)
        throw PreconditionError("j must not be 0 or 1");
    if (params.m < 2 || (p.value() - 1) % params.m != 0)
        throw PreconditionError("power index m must be >= 2 and divide p-1");
    const Residue x = p.reduce(params.x);
    if (x == 1 || ! is_mth_power(x, params.m, p))
        throw PreconditionError("x must be a nonzero m-th power other than 1");
    const Residue F = p.reduce((1 - j * x % p) * inv(1 - j, p));
    if (! is_mth_power(F, params.m, p))
        throw PreconditionError("F(x) must be a nonzero m-th power");
    if (p.reduce(params.alpha) == 0)
        throw PreconditionError("alpha must be nonzero");

    TradeParams reduced {params.m, x, p.reduce(params.alpha), p.reduce(params.gamma)};
    std::vector<Residue> row(static_cast<std::size_t>(p.value()));
    TradeEngine(p).apply(j, reduced, row);
    return FirstRow(std::move(row));
}

std::optional<TradeCompletion> complete_via_trade(const Prime & p, NormalTriple t)
{
    require_admissible(p, t);
    return TradeEngine(p).complete(t);
}

} // namespace dcls
