#include "dcls/modmath.hpp"

#include <algorithm>

namespace dcls {

bool is_prime(std::int64_t n) noexcept
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

Prime::Prime(std::int64_t value) : value_(value)
{
    if (value <= 2 || value > kMaxModulus || ! is_prime(value))
        throw PreconditionError("modulus " + std::to_string(value) + " is not an odd prime below 2^31");
}

Residue pow_mod(Residue base, std::uint64_t exponent, const Prime & p) noexcept
{
    Residue result = 1 % p.value();
    Residue b = p.reduce(base);
    while (exponent > 0) {
        if (exponent & 1)
            result = result * b % p.value();
        b = b * b % p.value();
        exponent >>= 1;
    }
    return result;
}

Residue inv(Residue a, const Prime & p)
{
    Residue r = p.reduce(a);
    if (r == 0)
        throw PreconditionError("non-invertible: 0 has no inverse mod " + std::to_string(p.value()));
    // Fermat: a^(p-2) = a^-1.
    return pow_mod(r, static_cast<std::uint64_t>(p.value() - 2), p);
}

int eta(Residue a, const Prime & p) noexcept
{
    Residue r = p.reduce(a);
    if (r == 0)
        return 0;
    return pow_mod(r, static_cast<std::uint64_t>((p.value() - 1) / 2), p) == 1 ? 1 : -1;
}

namespace {
    void check_power_index(int m, const Prime & p)
    {
        if (m < 2 || (p.value() - 1) % m != 0)
            throw PreconditionError("power index m=" + std::to_string(m) + " must be >= 2 and divide p-1="
                + std::to_string(p.value() - 1));
    }
}

bool is_mth_power(Residue t, int m, const Prime & p)
{
    check_power_index(m, p);
    Residue r = p.reduce(t);
    if (r == 0)
        return false;
    return pow_mod(r, static_cast<std::uint64_t>((p.value() - 1) / m), p) == 1;
}

std::vector<int> proper_power_divisors(const Prime & p)
{
    std::vector<int> out;
    const std::int64_t order = p.value() - 1;
    for (std::int64_t d = 1; d * d <= order; ++d) {
        if (order % d != 0)
            continue;
        if (d >= 2)
            out.push_back(static_cast<int>(d));
        if (order / d != d && order / d >= 2)
            out.push_back(static_cast<int>(order / d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

FieldTables::FieldTables(const Prime & p) :
    p_(p),
    inverse_(static_cast<std::size_t>(p.value()), 0),
    eta_(static_cast<std::size_t>(p.value()), 0),
    divisors_(proper_power_divisors(p))
{
    const std::int64_t n = p.value();

    // Walk a generator's powers once; every table falls out of the discrete log.
    Residue g = 2;
    for (;; ++g) {
        bool primitive = true;
        for (int q : divisors_)
            if (pow_mod(g, static_cast<std::uint64_t>((n - 1) / q), p) == 1) {
                primitive = false;
                break;
            }
        if (primitive)
            break;
    }

    std::vector<std::int64_t> log(static_cast<std::size_t>(n), -1);
    Residue power = 1;
    for (std::int64_t k = 0; k < n - 1; ++k) {
        log[power] = k;
        power = power * g % n;
    }

    for (Residue a = 1; a < n; ++a) {
        inverse_[a] = pow_mod(g, static_cast<std::uint64_t>((n - 1 - log[a]) % (n - 1)), p);
        eta_[a] = (log[a] % 2 == 0) ? 1 : -1;
    }

    powers_.reserve(divisors_.size());
    for (int m : divisors_) {
        std::vector<std::uint8_t> table(static_cast<std::size_t>(n), 0);
        for (Residue a = 1; a < n; ++a)
            table[a] = (log[a] % m == 0) ? 1 : 0;
        powers_.push_back(std::move(table));
    }
}

const std::vector<std::uint8_t> & FieldTables::powers(int m) const
{
    auto it = std::lower_bound(divisors_.begin(), divisors_.end(), m);
    if (it == divisors_.end() || *it != m)
        throw PreconditionError("power index m=" + std::to_string(m) + " must be >= 2 and divide p-1="
            + std::to_string(p_.value() - 1));
    return powers_[static_cast<std::size_t>(it - divisors_.begin())];
}

} // namespace dcls
