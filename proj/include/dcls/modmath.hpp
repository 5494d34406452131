#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcls {

/// Raised when an operation is called outside its domain (non-invertible
/// input, inadmissible triple, malformed row, ...). The message names the
/// violated condition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Residues are stored reduced into [0, p). Products of two residues are
/// formed in 64 bits, so every modulus handled here must satisfy
/// p < 2^31 (then p^2 < 2^62).
using Residue = std::int64_t;

/// Largest modulus accepted by Prime. Keeps p^2 inside int64 and trial
/// division cheap.
inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

/// An odd prime modulus, checked by trial division on construction.
class Prime {
public:
    explicit Prime(std::int64_t value);

    [[nodiscard]] std::int64_t value() const noexcept { return value_; }
    operator std::int64_t() const noexcept { return value_; }

    /// Reduce any integer (possibly negative) into [0, p).
    [[nodiscard]] Residue reduce(std::int64_t a) const noexcept
    {
        Residue r = a % value_;
        return r < 0 ? r + value_ : r;
    }

    friend bool operator==(const Prime &, const Prime &) = default;

private:
    std::int64_t value_;
};

[[nodiscard]] bool is_prime(std::int64_t n) noexcept;

[[nodiscard]] Residue pow_mod(Residue base, std::uint64_t exponent, const Prime & p) noexcept;

/// Multiplicative inverse; throws PreconditionError("non-invertible") on 0 mod p.
[[nodiscard]] Residue inv(Residue a, const Prime & p);

/// Quadratic character: 0 for 0, +1 for nonzero squares, -1 otherwise.
[[nodiscard]] int eta(Residue a, const Prime & p) noexcept;

/// True iff t is a nonzero m-th power mod p. Zero is never reported as an
/// m-th power; callers that accept zero test for it separately.
/// Throws unless m >= 2 and m | p-1.
[[nodiscard]] bool is_mth_power(Residue t, int m, const Prime & p);

/// Divisors m of p-1 with 2 <= m <= p-1, ascending.
[[nodiscard]] std::vector<int> proper_power_divisors(const Prime & p);

/// Per-modulus lookup tables for the hot loops of the census and trade
/// engine: inverses, quadratic character, and m-th power membership for
/// each proper divisor m of p-1.
class FieldTables {
public:
    explicit FieldTables(const Prime & p);

    [[nodiscard]] const Prime & prime() const noexcept { return p_; }
    [[nodiscard]] Residue inv(Residue a) const noexcept { return inverse_[a]; }
    [[nodiscard]] int eta(Residue a) const noexcept { return eta_[a]; }
    [[nodiscard]] const std::vector<int> & divisors() const noexcept { return divisors_; }

    /// Membership table for the index-m subgroup; index with a residue.
    /// Throws if m is not a proper divisor of p-1.
    [[nodiscard]] const std::vector<std::uint8_t> & powers(int m) const;

    [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept { return a * b % p_.value(); }
    [[nodiscard]] Residue add(Residue a, Residue b) const noexcept
    {
        Residue s = a + b;
        return s >= p_.value() ? s - p_.value() : s;
    }
    [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept
    {
        Residue s = a - b;
        return s < 0 ? s + p_.value() : s;
    }

private:
    Prime p_;
    std::vector<Residue> inverse_;
    std::vector<std::int8_t> eta_;
    std::vector<int> divisors_;
    std::vector<std::vector<std::uint8_t>> powers_;
};

} // namespace dcls
