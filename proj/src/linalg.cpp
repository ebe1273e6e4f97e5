#include "thetacong/linalg.hpp"

#include "thetacong/arith.hpp"

#include <algorithm>

namespace thetacong {

std::vector<std::size_t> row_reduce(std::vector<Row> &rows, std::uint32_t ell)
{
    std::vector<std::size_t> pivots;
    if (rows.empty())
        return pivots;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                               [col](const Row &r) { return r[col] != 0; });
        if (it == rows.end())
            continue;
        std::swap(*it, rows[rank]);
        Row &piv = rows[rank];
        const std::uint32_t scale = inv_mod(piv[col], ell);
        for (auto &x : piv)
            x = static_cast<std::uint32_t>(std::uint64_t(x) * scale % ell);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0)
                continue;
            const std::uint64_t factor = ell - rows[i][col];
            for (std::size_t j = col; j < cols; ++j)
                rows[i][j] = static_cast<std::uint32_t>((rows[i][j] + factor * piv[j]) % ell);
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

std::optional<Row> solve_in_echelon(std::span<const Row> echelon, std::span<const std::size_t> pivots,
                                    std::span<const std::uint32_t> target, std::uint32_t ell)
{
    Row residual(target.begin(), target.end());
    Row coords(echelon.size(), 0);
    for (std::size_t i = 0; i < echelon.size(); ++i) {
        const std::uint32_t c = residual[pivots[i]];
        coords[i] = c;
        if (c == 0)
            continue;
        const std::uint64_t factor = ell - c;
        for (std::size_t j = 0; j < residual.size(); ++j)
            residual[j] = static_cast<std::uint32_t>((residual[j] + factor * echelon[i][j]) % ell);
    }
    if (std::any_of(residual.begin(), residual.end(), [](std::uint32_t x) { return x != 0; }))
        return std::nullopt;
    return coords;
}

} // namespace thetacong
