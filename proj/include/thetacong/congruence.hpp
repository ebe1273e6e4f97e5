#pragma once

#include "thetacong/etaforms.hpp"
#include "thetacong/partitions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace thetacong {

/// True when f_{r,ell,delta} has no nonzero coefficient among its first
/// n_probe potential positions that the table covers.
bool class_vanishes(const PartitionTable &table, int delta, std::int64_t n_probe);

/// Ramanujan-type congruence for (r, ell): f_{r,ell,0} vanishes on n_probe
/// class positions.
bool ramanujan_check(int r, std::uint32_t ell, std::int64_t n_probe = 2000);

/// (r(r - 24t) / m), the square class of t at modulus m.
int square_class(int r, std::int64_t t, std::int64_t m) noexcept;

enum class VerdictStatus { ruled_out, candidate, trivial_ramanujan };

const char *to_string(VerdictStatus s) noexcept;

struct SearchVerdict {
    int r = 0;
    std::uint32_t ell = 0;
    std::uint32_t m = 0;
    int delta = 0;
    VerdictStatus status = VerdictStatus::candidate;
    std::optional<std::int64_t> t_plus;
    std::optional<std::int64_t> t_minus;
    std::vector<int> surviving;  // epsilon values with no witness (candidates)
    std::int64_t evidence = 0;   // nonzero t with epsilon != 0 seen for m
    bool budget_limited = false;
    std::string notes;
};

struct SearchOptions {
    std::int64_t t_budget = 100000;
    std::int64_t n_probe = 2000;
    /// Candidates backed by fewer nonzero t values are flagged budget-limited.
    std::int64_t min_evidence = 32;
};

/// The witness search for one (r, ell, delta) over primes m in [m_min, m_max].
/// Tables are read from `cache` when given; scanning is staged so that the
/// verdicts never depend on what the cache happens to hold.
std::vector<SearchVerdict> rule_out_search(int r, std::uint32_t ell, int delta, std::uint32_t m_min,
                                           std::uint32_t m_max, const SearchOptions &opt = {},
                                           PartitionCache *cache = nullptr);

/// Splits squarefree m into (m', m'') with m'' the part dividing r(r - 24t).
std::pair<std::int64_t, std::int64_t> reduce_modulus(int r, std::int64_t t, std::int64_t m, std::uint32_t ell);

/// p_r(ell m n + t) = 0 mod ell for all 0 <= n <= n_max.
bool brute_verify(const PartitionTable &table, std::int64_t m, std::int64_t t, std::int64_t n_max);
bool brute_verify(int r, std::uint32_t ell, std::int64_t m, std::int64_t t, std::int64_t n_max);

// ---------------------------------------------------------------------------
// Eta-quotient families

struct FamilyPair {
    int family_case = 1; // 1: f0 = alpha eta, 2: f0 = alpha eta^3
    int a = 0;
    std::int64_t r = 0;
    std::uint32_t ell = 0;
    std::uint32_t leading = 0;    // p_r((ell + r)/24) or p_r((3 ell + r)/24) mod ell
    bool ramanujan_type = false;  // leading == 0, so f0 vanishes identically
};

/// Whether (r, ell) satisfies the side conditions of the given case; returns a.
std::optional<int> family_parameter(std::int64_t r, std::uint32_t ell, int family_case);

/// All family pairs with 5 <= ell <= ell_max (and r <= r_max when given),
/// ordered by case, ell, a.
std::vector<FamilyPair> family_enumerate(std::uint32_t ell_max, bool include_case2 = true,
                                         std::optional<std::int64_t> r_max = std::nullopt);

/// Case-1 pairs with no Ramanujan-type congruence, r <= r_max, ell <= ell_max.
std::vector<FamilyPair> figure_pairs(std::int64_t r_max = 501, std::uint32_t ell_max = 1583,
                                     bool include_case2 = false);

/// Checks f_{r,ell,0} = alpha eta (case 1) or alpha eta^3 (case 2) through
/// trunc; returns alpha. Throws hypothesis-failure or shape-mismatch.
std::uint32_t etafamily_verify(int r, std::uint32_t ell, int family_case, std::int64_t trunc);

/// 2 b(r, ell), an integer.
std::int64_t b_value_times_2(std::int64_t r, std::int64_t ell);

/// Checks the hypotheses and the conclusion of the three abnormal cases.
/// Conditions that are observed but not required land in `notes`.
ThetaShape abnormal_verify(int r, std::uint32_t ell, int abnormal_case, std::int64_t trunc,
                           std::vector<std::string> *notes = nullptr);

} // namespace thetacong
