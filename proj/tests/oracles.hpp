#pragma once

// Slow, obviously-correct reference computations. Nothing here calls into the
// library, so agreement with it is evidence rather than tautology.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

inline std::uint32_t mod(std::int64_t a, std::uint32_t p)
{
    auto r = a % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t acc = 1 % m;
    b %= m;
    for (; e; e >>= 1, b = b * b % m)
        if (e & 1)
            acc = acc * b % m;
    return acc;
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int euler_legendre(std::int64_t a, std::uint64_t p)
{
    const auto x = powmod(mod(a, static_cast<std::uint32_t>(p)), (p - 1) / 2, p);
    return x == 0 ? 0 : (x == 1 ? 1 : -1);
}

inline std::uint64_t sigma(std::uint64_t n)
{
    std::uint64_t s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0)
            s += d;
    return s;
}

inline bool prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// r-colored partitions by coin change: every part size comes in r distinct kinds.
inline std::vector<mpz_class> colored_partitions(int r, int n_max)
{
    std::vector<mpz_class> ways(static_cast<std::size_t>(n_max + 1), 0);
    ways[0] = 1;
    for (int part = 1; part <= n_max; ++part)
        for (int c = 0; c < r; ++c)
            for (int n = part; n <= n_max; ++n)
                ways[n] += ways[n - part];
    return ways;
}

// prod_{n>=1} (1 - q^n)^e mod p for e >= 0, one factor at a time.
inline std::vector<std::uint32_t> euler_product(int e, std::uint32_t p, std::size_t len)
{
    std::vector<std::uint32_t> c(len, 0);
    c[0] = 1;
    for (std::size_t n = 1; n < len; ++n)
        for (int k = 0; k < e; ++k)
            for (std::size_t i = len; i-- > n;)
                c[i] = (c[i] + p - c[i - n]) % p;
    return c;
}

// Integer products of truncated q-expansions.
inline std::vector<mpz_class> times(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b)
{
    std::vector<mpz_class> c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// Rank over F_p by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<std::uint32_t>> m, std::uint32_t p)
{
    std::size_t rk = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t col = 0; col < cols && rk < m.size(); ++col) {
        std::size_t piv = rk;
        while (piv < m.size() && m[piv][col] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[piv], m[rk]);
        const auto inv = powmod(m[rk][col], p - 2, p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rk || m[i][col] == 0)
                continue;
            const auto f = m[i][col] * inv % p;
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = static_cast<std::uint32_t>((m[i][j] + p - f * m[rk][j] % p) % p);
        }
        ++rk;
    }
    return rk;
}

// Sparse grid expansions: index N of q^(N/24) -> integer coefficient.
inline std::map<std::int64_t, std::int64_t> eta_sum(std::int64_t trunc)
{
    // sum over n >= 1 of (12/n) q^(n^2/24)
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t n = 1; n * n <= trunc; ++n) {
        const auto r = n % 12;
        if (r == 1 || r == 11)
            out[n * n] = 1;
        else if (r == 5 || r == 7)
            out[n * n] = -1;
    }
    return out;
}

inline std::map<std::int64_t, std::int64_t> eta_cubed_sum(std::int64_t trunc)
{
    // sum over n >= 1 of (-4/n) n q^(3 n^2/24)
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t n = 1; 3 * n * n <= trunc; n += 2)
        out[3 * n * n] = (n % 4 == 1) ? n : -n;
    return out;
}

} // namespace oracle
