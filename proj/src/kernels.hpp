#pragma once

// Dense/sparse coefficient kernels over Z/ell shared by the series code and
// the partition tables. Accumulation is done in 64 bits and reduced lazily.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace thetacong::detail {

/// Number of products (< (ell-1)^2) that fit in a uint64 accumulator on top
/// of a reduced residue.
inline std::uint64_t lazy_block(std::uint32_t ell) noexcept
{
    const std::uint64_t e = ell - 1;
    const std::uint64_t sq = e * e;
    if (sq == 0)
        return std::numeric_limits<std::uint64_t>::max();
    return (std::numeric_limits<std::uint64_t>::max() - ell) / sq;
}

struct SparseTerm {
    std::size_t offset;
    std::uint32_t value;
};

inline std::vector<SparseTerm> nonzero_terms(std::span<const std::uint32_t> v)
{
    std::vector<SparseTerm> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.push_back({i, v[i]});
    return out;
}

/// out[k] = sum_j a[j] b[k-j] for 0 <= k < len, with `a` given sparsely.
inline std::vector<std::uint32_t> convolve(std::span<const SparseTerm> a, std::span<const std::uint32_t> b,
                                           std::size_t len, std::uint32_t ell)
{
    std::vector<std::uint32_t> out(len, 0);
    const std::uint64_t block = lazy_block(ell);
    for (std::size_t k = 0; k < len; ++k) {
        std::uint64_t acc = 0, pending = 0;
        for (const auto &t : a) {
            if (t.offset > k)
                break;
            const std::size_t j = k - t.offset;
            if (j >= b.size())
                continue;
            acc += std::uint64_t(t.value) * b[j];
            if (++pending == block) {
                acc %= ell;
                pending = 0;
            }
        }
        out[k] = static_cast<std::uint32_t>(acc % ell);
    }
    return out;
}

/// In place v <- v / s where s is sparse with s[0] == 1 at offset 0.
/// Online recurrence: v[k] -= sum_{j>=1} s[j] v[k-j].
inline void divide_by_sparse(std::vector<std::uint32_t> &v, std::span<const SparseTerm> s, std::uint32_t ell)
{
    const std::uint64_t block = lazy_block(ell);
    for (std::size_t k = 1; k < v.size(); ++k) {
        std::uint64_t acc = 0, pending = 0;
        for (const auto &t : s) {
            if (t.offset == 0)
                continue;
            if (t.offset > k)
                break;
            acc += std::uint64_t(t.value) * v[k - t.offset];
            if (++pending == block) {
                acc %= ell;
                pending = 0;
            }
        }
        const auto sub = static_cast<std::uint32_t>(acc % ell);
        v[k] = v[k] >= sub ? v[k] - sub : v[k] + ell - sub;
    }
}

/// In place v <- v * s where s is sparse with s[0] == 1 at offset 0.
inline void multiply_by_sparse(std::vector<std::uint32_t> &v, std::span<const SparseTerm> s, std::uint32_t ell)
{
    const std::uint64_t block = lazy_block(ell);
    for (std::size_t k = v.size(); k-- > 1;) {
        std::uint64_t acc = v[k], pending = 0;
        for (const auto &t : s) {
            if (t.offset == 0)
                continue;
            if (t.offset > k)
                break;
            acc += std::uint64_t(t.value) * v[k - t.offset];
            if (++pending == block) {
                acc %= ell;
                pending = 0;
            }
        }
        v[k] = static_cast<std::uint32_t>(acc % ell);
    }
}

} // namespace thetacong::detail
