#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace thetacong {

using Row = std::vector<std::uint32_t>;

/// Reduced row echelon form over Z/ell, in place. Zero rows are dropped;
/// returns the pivot column of each remaining row.
std::vector<std::size_t> row_reduce(std::vector<Row> &rows, std::uint32_t ell);

/// Coordinates x with sum_i x_i rows[i] == target, when target lies in the
/// row space of an echelon matrix produced by row_reduce.
std::optional<Row> solve_in_echelon(std::span<const Row> echelon, std::span<const std::size_t> pivots,
                                    std::span<const std::uint32_t> target, std::uint32_t ell);

} // namespace thetacong
