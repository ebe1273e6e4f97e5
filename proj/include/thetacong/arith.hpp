#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace thetacong {

/// Z/ell for a prime ell >= 5. Elements are canonical residues in [0, ell).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t ell);

    std::uint32_t ell() const noexcept { return ell_; }

    std::uint32_t reduce(std::int64_t a) const noexcept
    {
        const auto m = static_cast<std::int64_t>(ell_);
        auto r = a % m;
        return static_cast<std::uint32_t>(r < 0 ? r + m : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= ell_ ? s - ell_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + ell_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : ell_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return static_cast<std::uint32_t>(std::uint64_t(a) * b % ell_);
    }
    std::uint32_t pow(std::uint32_t base, std::uint64_t e) const noexcept;
    std::uint32_t inv(std::uint32_t a) const;

private:
    std::uint32_t ell_;
};

/// Kronecker symbol (a/n), total on all integer pairs.
int kronecker(std::int64_t a, std::int64_t n) noexcept;

/// Divisor sums sigma(n) for 0 <= n <= n_max (entry 0 is unused and zero).
class SigmaTable {
public:
    explicit SigmaTable(std::vector<std::uint64_t> values) : values_(std::move(values)) {}

    std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }
    std::uint64_t operator[](std::size_t n) const noexcept { return values_[n]; }
    std::span<const std::uint64_t> values() const noexcept { return values_; }

private:
    std::vector<std::uint64_t> values_;
};

SigmaTable sigma_sieve(std::int64_t n_max);

/// Inverse of a modulo the prime ell; throws non-invertible when ell | a.
std::uint32_t inv_mod(std::int64_t a, std::uint32_t ell);

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t m) noexcept;

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept;
std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept;
/// Canonical residue of a mod m in [0, m).
std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept;

bool is_prime(std::uint64_t n) noexcept;
/// Primes p with lo <= p <= hi, ascending.
std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi);
/// Distinct prime factors of |n| (n != 0), ascending.
std::vector<std::uint64_t> prime_factors(std::int64_t n);
bool is_squarefree(std::uint64_t n);

} // namespace thetacong
