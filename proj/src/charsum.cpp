#include "dcls/charsum.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <sstream>

namespace dcls {

namespace {
    void require_admissible(const Prime & p, NormalTriple t)
    {
        if (auto why = admissibility_violation(p, t, false))
            throw PreconditionError("inadmissible triple (j, c, e): " + *why);
    }

    // Factor values x, F, G, H at x, in that order.
    std::array<Residue, 4> factors_at(const TradeEngine & engine, NormalTriple t, Residue x)
    {
        auto v = engine.fgh(t, x);
        return {x, v.F, v.G, v.H};
    }

    bool below_bound(std::int64_t p, std::int64_t S)
    {
        // S >= p - 11 sqrt(p) - 6  <=>  p - 6 - S <= 11 sqrt(p)
        const std::int64_t gap = p - 6 - S;
        return gap <= 0 || gap * gap <= 121 * p;
    }
}

int j_of_x(const Prime & p, NormalTriple t, Residue x)
{
    require_admissible(p, t);
    TradeEngine engine(p);
    const auto & f = engine.tables();
    auto v = factors_at(engine, t, p.reduce(x));
    return (1 + f.eta(v[0])) * (1 + f.eta(v[1])) * (1 - f.eta(v[2])) * (1 - f.eta(v[3]));
}

CharSumReport compute_S(const Prime & p, NormalTriple t)
{
    require_admissible(p, t);
    TradeEngine engine(p);
    const auto & f = engine.tables();

    CharSumReport report;
    report.p = p.value();
    report.triple = t;
    for (Residue x = 0; x < p.value(); ++x) {
        auto v = factors_at(engine, t, x);
        int ex = f.eta(v[0]), eF = f.eta(v[1]), eG = f.eta(v[2]), eH = f.eta(v[3]);
        report.S += (1 + ex) * (1 + eF) * (1 - eG) * (1 - eH);
        if (ex == 1 && eF == 1 && eG == -1 && eH == -1)
            ++report.size_a;
    }
    const double n = static_cast<double>(p.value());
    report.bound = n - 11.0 * std::sqrt(n) - 6.0;
    report.exceeds_32 = report.S > 32;
    report.meets_weil_bound = below_bound(p.value(), report.S);
    report.within_a_bound = report.S <= 16 * report.size_a + 32;
    return report;
}

std::int64_t expanded_S(const Prime & p, NormalTriple t)
{
    require_admissible(p, t);
    TradeEngine engine(p);
    const auto & f = engine.tables();

    std::int64_t S = p.value();
    for (unsigned mask = 1; mask < 16; ++mask) {
        const int sign = std::popcount(mask & 12u) % 2 ? -1 : 1;
        std::int64_t sum = 0;
        for (Residue x = 0; x < p.value(); ++x) {
            auto v = factors_at(engine, t, x);
            Residue product = 1;
            for (unsigned k = 0; k < 4; ++k)
                if (mask & (1u << k))
                    product = f.mul(product, v[k]);
            sum += f.eta(product);
        }
        S += sign * sum;
    }
    return S;
}

bool quadratic_sum_check(const Prime & p, Residue a2, Residue a1, Residue a0)
{
    a2 = p.reduce(a2);
    a1 = p.reduce(a1);
    a0 = p.reduce(a0);
    if (a2 == 0)
        throw PreconditionError("hypothesis violated: leading coefficient is 0");
    if (p.reduce(a1 * a1 - 4 * (a0 * a2 % p.value())) == 0)
        throw PreconditionError("hypothesis violated: discriminant is 0");
    std::int64_t sum = 0;
    for (Residue x = 0; x < p.value(); ++x)
        sum += eta(a2 * x % p.value() * x % p.value() + a1 * x % p.value() + a0, p);
    return sum == -eta(a2, p);
}

std::int64_t factor_product_sum(const Prime & p, unsigned mask, NormalTriple t)
{
    require_admissible(p, t);
    if (mask == 0 || mask > 15)
        throw PreconditionError("factor mask must be a nonempty subset of {x, F, -G, -H}");
    TradeEngine engine(p);
    const auto & f = engine.tables();
    std::int64_t sum = 0;
    for (Residue x = 0; x < p.value(); ++x) {
        auto v = factors_at(engine, t, x);
        v[2] = f.sub(0, v[2]);
        v[3] = f.sub(0, v[3]);
        Residue product = 1;
        for (unsigned k = 0; k < 4; ++k)
            if (mask & (1u << k))
                product = f.mul(product, v[k]);
        sum += f.eta(product);
    }
    return sum;
}

bool weil_bound_check(const Prime & p, unsigned mask, NormalTriple t)
{
    const int degree = std::popcount(mask);
    if (degree < 2 || mask > 15)
        throw PreconditionError("Weil check needs 2 to 4 factors");
    const std::int64_t sum = factor_product_sum(p, mask, t);
    return sum * sum <= static_cast<std::int64_t>(degree - 1) * (degree - 1) * p.value();
}

std::string render(const CharSumReport & r)
{
    std::ostringstream out;
    out << "p=" << r.p << " j=" << r.triple.j << " c=" << r.triple.c << " e=" << r.triple.e << '\n'
        << "S=" << r.S << " |A|=" << r.size_a << " bound=p-11*sqrt(p)-6=" << r.bound << '\n'
        << "S>32: " << (r.exceeds_32 ? "yes" : "no") << '\n'
        << "S>=bound: " << (r.meets_weil_bound ? "yes" : "no") << '\n'
        << "S<=16|A|+32: " << (r.within_a_bound ? "yes" : "no") << '\n';
    return out.str();
}

} // namespace dcls
