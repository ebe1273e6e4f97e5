#pragma once

#include "thetacong/qseries.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace thetacong {

/// p_r(n) mod ell for 0 <= n <= n_max.
struct PartitionTable {
    int r = 0;
    std::uint32_t ell = 0;
    std::vector<std::uint32_t> values;

    std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(values.size()) - 1; }
    /// p_r(n) mod ell, 0 for negative n; throws table-range past n_max.
    std::uint32_t at(std::int64_t n) const;
};

/// Exact p_r(n) for 0 <= n <= n_max.
struct ExactPartitionTable {
    int r = 0;
    std::vector<mpz_class> values;

    std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(values.size()) - 1; }
    PartitionTable reduce(std::uint32_t ell) const;
};

/// sigma recursion p_r(n) = (r/n) sum_{j<n} p_r(j) sigma(n-j), over Z.
ExactPartitionTable pr_exact(int r, std::int64_t n_max);

/// Coefficients of prod (1 - q^n)^(-r) mod ell.
PartitionTable pr_mod(int r, std::uint32_t ell, std::int64_t n_max);

struct GenFunc {
    int r = 0;
    std::uint32_t ell = 0;
    int delta = 0;
    Q24Series series;
    SeriesMeta meta;
};

/// Index of p_r in the coefficient of f_{r,ell,delta} at grid index N, or
/// nullopt when that coefficient is zero by definition.
std::optional<std::int64_t> genfunc_index(int r, std::uint32_t ell, int delta, std::int64_t N);

/// Smallest stored N and the largest partition index needed through trunc.
std::int64_t genfunc_start(int r, std::uint32_t ell, int delta);
std::int64_t genfunc_needed_n(int r, std::uint32_t ell, int delta, std::int64_t trunc);

/// f_{r,ell,delta} through grid index trunc, delta in {0, -1, +1}.
GenFunc build_f(int r, std::uint32_t ell, int delta, std::int64_t trunc);
/// Same, reading values from an existing table.
GenFunc build_f(const PartitionTable &table, int delta, std::int64_t trunc);

/// (Delta^(r(ell^2-1)/24) | U_ell) / eta^(r ell), computed independently of
/// any partition table.
Q24Series build_f0_via_lemma(int r, std::uint32_t ell, std::int64_t trunc);

// ---------------------------------------------------------------------------
// Disk cache

/// Parsed PRTABLE file. ell == 0 marks an exact table.
struct PrTableFile {
    int r = 0;
    std::uint32_t ell = 0;
    std::int64_t n_max = 0;
    std::vector<std::string> values; // decimal text as stored
};

std::string format_prtable(const PartitionTable &table);
std::string format_prtable(const ExactPartitionTable &table);
/// Throws io on malformed content or a checksum mismatch.
PrTableFile parse_prtable(const std::string &text);
PartitionTable to_mod_table(const PrTableFile &file);
ExactPartitionTable to_exact_table(const PrTableFile &file);

std::filesystem::path prtable_path(const std::filesystem::path &dir, int r, std::uint32_t ell);

enum class WriteOutcome { written, unchanged, refused };

/// Write-once store: an existing valid file is left alone; an invalid or
/// different one is only replaced when `force` is set.
WriteOutcome write_prtable(const std::filesystem::path &path, const std::string &content, bool force);

/// Thread-safe table provider backed by an optional cache directory.
class PartitionCache {
public:
    explicit PartitionCache(std::optional<std::filesystem::path> dir = std::nullopt, bool build = true);

    /// Table of at least n_max + 1 entries. Reads the cache file when it
    /// covers n_max; otherwise builds in memory (or throws io with build off).
    std::shared_ptr<const PartitionTable> get(int r, std::uint32_t ell, std::int64_t n_max);

private:
    std::optional<std::filesystem::path> dir_;
    bool build_;
    std::mutex mutex_;
    std::map<std::pair<int, std::uint32_t>, std::shared_ptr<const PartitionTable>> memo_;
};

} // namespace thetacong
