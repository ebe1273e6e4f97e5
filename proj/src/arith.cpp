#include "thetacong/arith.hpp"

#include "thetacong/error.hpp"

#include <numeric>
#include <string>
#include <tuple>

namespace thetacong {

PrimeField::PrimeField(std::uint32_t ell) : ell_(ell)
{
    if (ell < 5 || !is_prime(ell))
        throw Error(ErrorKind::invalid_argument, "modulus must be a prime >= 5, got " + std::to_string(ell));
}

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t e) const noexcept
{
    return pow_mod(base, e, ell_);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const { return inv_mod(a, ell_); }

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint32_t m) noexcept
{
    std::uint64_t result = 1 % m;
    base %= m;
    while (e) {
        if (e & 1)
            result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

std::uint32_t inv_mod(std::int64_t a, std::uint32_t ell)
{
    std::int64_t r0 = mod_floor(a, ell), r1 = ell;
    if (r0 == 0)
        throw Error(ErrorKind::non_invertible, std::to_string(a) + " is not invertible mod " + std::to_string(ell));
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (r0 != 1)
        throw Error(ErrorKind::non_invertible, std::to_string(a) + " shares a factor with " + std::to_string(ell));
    return static_cast<std::uint32_t>(mod_floor(s0, ell));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept { return -floor_div(-a, b); }

std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

namespace {

// (2/n)-style lookup indexed by a mod 8
constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};

int jacobi_odd(std::uint64_t a, std::uint64_t n) noexcept
{
    // n odd and positive, 0 <= a < n
    int k = 1;
    while (a != 0) {
        int v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1)
            k *= kTab2[n & 7];
        if ((a & n & 2) != 0)
            k = -k;
        std::uint64_t r = n % a;
        n = a;
        a = r;
    }
    return n == 1 ? k : 0;
}

} // namespace

int kronecker(std::int64_t a, std::int64_t n) noexcept
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0)
        return 0;
    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            k = -k;
    }
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v & 1)
        k *= kTab2[a & 7];
    if (n == 1)
        return k;
    return k * jacobi_odd(static_cast<std::uint64_t>(mod_floor(a, n)), static_cast<std::uint64_t>(n));
}

SigmaTable sigma_sieve(std::int64_t n_max)
{
    if (n_max < 1)
        throw Error(ErrorKind::invalid_argument, "sigma_sieve needs n_max >= 1");
    std::vector<std::uint64_t> values(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t d = 1; d <= n_max; ++d)
        for (std::int64_t m = d; m <= n_max; m += d)
            values[static_cast<std::size_t>(m)] += static_cast<std::uint64_t>(d);
    return SigmaTable(std::move(values));
}

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    if (n % 3 == 0)
        return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    return true;
}

std::vector<std::uint32_t> primes_between(std::uint32_t lo, std::uint32_t hi)
{
    std::vector<std::uint32_t> out;
    if (hi < 2 || lo > hi)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi) + 1, false);
    for (std::uint64_t p = 2; p <= hi; ++p) {
        if (composite[p])
            continue;
        if (p >= lo)
            out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= hi; q += p)
            composite[q] = true;
    }
    return out;
}

std::vector<std::uint64_t> prime_factors(std::int64_t n)
{
    if (n == 0)
        throw Error(ErrorKind::invalid_argument, "prime_factors(0) is undefined");
    auto m = static_cast<std::uint64_t>(n < 0 ? -n : n);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p != 0)
            continue;
        out.push_back(p);
        while (m % p == 0)
            m /= p;
    }
    if (m > 1)
        out.push_back(m);
    return out;
}

bool is_squarefree(std::uint64_t n)
{
    if (n == 0)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return false;
    }
    return true;
}

} // namespace thetacong
