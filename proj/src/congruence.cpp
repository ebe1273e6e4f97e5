#include "thetacong/congruence.hpp"

#include "thetacong/arith.hpp"
#include "thetacong/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace thetacong {

int square_class(int r, std::int64_t t, std::int64_t m) noexcept
{
    return kronecker(static_cast<std::int64_t>(r) * (r - 24 * t), m);
}

bool class_vanishes(const PartitionTable &table, int delta, std::int64_t n_probe)
{
    std::int64_t members = 0;
    for (std::int64_t t = 0; t <= table.n_max() && members < n_probe; ++t) {
        if (square_class(table.r, t, table.ell) != delta)
            continue;
        ++members;
        if (table.values[static_cast<std::size_t>(t)] != 0)
            return false;
    }
    return true;
}

bool ramanujan_check(int r, std::uint32_t ell, std::int64_t n_probe)
{
    if (r % static_cast<std::int64_t>(ell) == 0)
        throw Error(ErrorKind::excluded_case, fmt::format("{} divides r={}", ell, r));
    // class-0 members are spaced ell apart
    const auto table = pr_mod(r, ell, static_cast<std::int64_t>(ell) * n_probe + r);
    return class_vanishes(table, 0, n_probe);
}

const char *to_string(VerdictStatus s) noexcept
{
    switch (s) {
    case VerdictStatus::ruled_out:
        return "ruled_out";
    case VerdictStatus::candidate:
        return "candidate";
    case VerdictStatus::trivial_ramanujan:
        return "trivial_ramanujan";
    }
    return "?";
}

namespace {

struct MState {
    std::uint32_t m;
    std::int64_t enough; // evidence after which an open class stops scanning
    std::optional<std::int64_t> plus, minus;
    std::int64_t evidence = 0;
    bool open() const { return !(plus && minus); }
    bool settled() const { return !open() || evidence >= enough; }
};

} // namespace

std::vector<SearchVerdict> rule_out_search(int r, std::uint32_t ell, int delta, std::uint32_t m_min,
                                           std::uint32_t m_max, const SearchOptions &opt, PartitionCache *cache)
{
    if (r < 1 || r % 2 == 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("the search needs odd r >= 1, got {}", r));
    if (ell < 5 || !is_prime(ell))
        throw Error(ErrorKind::invalid_argument, fmt::format("ell must be a prime >= 5, got {}", ell));
    if (r % static_cast<int>(ell) == 0)
        throw Error(ErrorKind::excluded_case, fmt::format("{} divides r={}", ell, r));
    if (delta < -1 || delta > 1)
        throw Error(ErrorKind::invalid_argument, fmt::format("delta must be 0 or +-1, got {}", delta));
    if (opt.t_budget < 1 || opt.n_probe < 1)
        throw Error(ErrorKind::invalid_argument, "t_budget and n_probe must be positive");

    std::vector<MState> scan;
    std::vector<std::uint32_t> divisors_of_r;
    for (std::uint32_t m : primes_between(std::max<std::uint32_t>(m_min, 5), m_max)) {
        if (m == ell)
            continue;
        if (r % static_cast<int>(m) == 0)
            divisors_of_r.push_back(m);
        else
            scan.push_back({m, std::max<std::int64_t>(4 * std::int64_t(m), opt.min_evidence), {}, {}, 0});
    }

    const std::int64_t first_stage = std::min(opt.t_budget, std::max<std::int64_t>(4096, 50 * std::int64_t(ell) + 1000));
    std::vector<std::int64_t> stages{first_stage};
    if (opt.t_budget > first_stage)
        stages.push_back(opt.t_budget);

    std::optional<std::int64_t> first_nonzero;
    std::int64_t members = 0;
    bool probe_done = false; // n_probe class members seen, all zero
    std::int64_t t = 1;
    std::int64_t scanned_to = 0;
    for (std::int64_t limit : stages) {
        auto table = cache ? cache->get(r, ell, limit) : std::make_shared<const PartitionTable>(pr_mod(r, ell, limit));
        for (; t <= limit; ++t) {
            if (square_class(r, t, ell) != delta)
                continue;
            ++members;
            if (table->values[static_cast<std::size_t>(t)] == 0) {
                if (!first_nonzero && members >= opt.n_probe) {
                    probe_done = true;
                    break;
                }
                continue;
            }
            if (!first_nonzero)
                first_nonzero = t;
            const std::int64_t x = static_cast<std::int64_t>(r) * (r - 24 * t);
            bool all_settled = true;
            for (auto &s : scan) {
                if (s.settled())
                    continue;
                const int eps = kronecker(x, s.m);
                if (eps != 0) {
                    ++s.evidence;
                    auto &slot = eps > 0 ? s.plus : s.minus;
                    if (!slot)
                        slot = t;
                }
                all_settled = all_settled && s.settled();
            }
            if (all_settled) {
                ++t;
                break;
            }
        }
        scanned_to = std::min(t - 1, limit);
        const bool settled = std::all_of(scan.begin(), scan.end(), [](const MState &s) { return s.settled(); });
        if (probe_done || (first_nonzero && settled))
            break;
    }

    std::vector<SearchVerdict> out;
    auto base = [&](std::uint32_t m) {
        SearchVerdict v;
        v.r = r;
        v.ell = ell;
        v.m = m;
        v.delta = delta;
        return v;
    };
    if (!first_nonzero) {
        // p_r(t) vanishes on the whole delta class mod ell: a Ramanujan-type congruence
        std::vector<std::uint32_t> all;
        for (const auto &s : scan)
            all.push_back(s.m);
        all.insert(all.end(), divisors_of_r.begin(), divisors_of_r.end());
        std::sort(all.begin(), all.end());
        for (std::uint32_t m : all) {
            auto v = base(m);
            v.status = VerdictStatus::trivial_ramanujan;
            v.notes = fmt::format("class vanishes on {} probed positions (t <= {})", members, scanned_to);
            out.push_back(std::move(v));
        }
        return out;
    }
    for (const auto &s : scan) {
        auto v = base(s.m);
        v.t_plus = s.plus;
        v.t_minus = s.minus;
        v.evidence = s.evidence;
        if (!s.open()) {
            v.status = VerdictStatus::ruled_out;
        } else {
            v.status = VerdictStatus::candidate;
            if (!s.plus)
                v.surviving.push_back(1);
            if (!s.minus)
                v.surviving.push_back(-1);
            v.budget_limited = s.evidence < opt.min_evidence;
            std::string cls;
            for (int e : v.surviving)
                cls += fmt::format("{}{}", cls.empty() ? "" : " ", e > 0 ? "+1" : "-1");
            v.notes = fmt::format("surviving class {}; {} nonzero t scanned to t={}", cls, s.evidence, scanned_to);
        }
        out.push_back(std::move(v));
    }
    for (std::uint32_t m : divisors_of_r) {
        // every t has m | r(r-24t), so the modulus reduces to ell alone and the
        // nonzero value at first_nonzero already breaks the congruence
        auto v = base(m);
        v.status = VerdictStatus::ruled_out;
        v.t_plus = v.t_minus = first_nonzero;
        v.notes = "m divides r; reduces to modulus ell";
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const SearchVerdict &a, const SearchVerdict &b) { return a.m < b.m; });
    return out;
}

std::pair<std::int64_t, std::int64_t> reduce_modulus(int r, std::int64_t t, std::int64_t m, std::uint32_t ell)
{
    if (m < 1 || !is_squarefree(static_cast<std::uint64_t>(m)))
        throw Error(ErrorKind::invalid_argument, fmt::format("m={} is not a squarefree positive integer", m));
    if (std::gcd(m, 6 * static_cast<std::int64_t>(ell)) != 1)
        throw Error(ErrorKind::invalid_argument, fmt::format("m={} is not coprime to 6*{}", m, ell));
    const std::int64_t x = static_cast<std::int64_t>(r) * (r - 24 * t);
    std::int64_t m2 = 1;
    if (m > 1)
        for (auto p : prime_factors(m))
            if (x % static_cast<std::int64_t>(p) == 0)
                m2 *= static_cast<std::int64_t>(p);
    return {m / m2, m2};
}

bool brute_verify(const PartitionTable &table, std::int64_t m, std::int64_t t, std::int64_t n_max)
{
    if (m < 1 || n_max < 0)
        throw Error(ErrorKind::invalid_argument, "brute_verify needs m >= 1 and n_max >= 0");
    const std::int64_t step = static_cast<std::int64_t>(table.ell) * m;
    if (step * n_max + t > table.n_max())
        throw Error(ErrorKind::table_range,
                    fmt::format("table through {} does not reach {}", table.n_max(), step * n_max + t));
    for (std::int64_t n = 0; n <= n_max; ++n)
        if (table.at(step * n + t) != 0)
            return false;
    return true;
}

bool brute_verify(int r, std::uint32_t ell, std::int64_t m, std::int64_t t, std::int64_t n_max)
{
    const std::int64_t top = static_cast<std::int64_t>(ell) * m * n_max + t;
    return brute_verify(pr_mod(r, ell, std::max<std::int64_t>(top, 0)), m, t, n_max);
}

// ---------------------------------------------------------------------------

std::optional<int> family_parameter(std::int64_t r, std::uint32_t ell, int family_case)
{
    if (ell < 5 || !is_prime(ell) || r < 1 || r % static_cast<std::int64_t>(ell) == 0)
        return std::nullopt;
    const std::int64_t shift = family_case == 1 ? 1 : 3;
    if ((r + shift) % (ell - 1) != 0)
        return std::nullopt;
    const std::int64_t a = (r + shift) / (ell - 1);
    const std::int64_t a_lo = family_case == 1 ? 3 : 1;
    const std::int64_t a_hi = family_case == 1 ? 23 : 19;
    if (a % 2 == 0 || a < a_lo || a > a_hi || a > 2 * static_cast<std::int64_t>(ell) + 1)
        return std::nullopt;
    const std::int64_t mod = 24 / std::gcd<std::int64_t>(24, a + shift);
    if ((ell - 1) % mod != 0)
        return std::nullopt;
    return static_cast<int>(a);
}

namespace {

std::uint32_t leading_value(std::int64_t r, std::uint32_t ell, int family_case)
{
    const std::int64_t n = ((family_case == 1 ? 1 : 3) * static_cast<std::int64_t>(ell) + r) / 24;
    return pr_mod(static_cast<int>(r), ell, n).at(n);
}

} // namespace

std::vector<FamilyPair> family_enumerate(std::uint32_t ell_max, bool include_case2, std::optional<std::int64_t> r_max)
{
    std::vector<FamilyPair> out;
    for (int c = 1; c <= (include_case2 ? 2 : 1); ++c) {
        for (std::uint32_t ell : primes_between(5, ell_max)) {
            for (int a = 1; a <= 23; a += 2) {
                const std::int64_t r = static_cast<std::int64_t>(a) * (ell - 1) - (c == 1 ? 1 : 3);
                if (r_max && r > *r_max)
                    continue;
                if (family_parameter(r, ell, c) != a)
                    continue;
                FamilyPair p{c, a, r, ell, leading_value(r, ell, c), false};
                p.ramanujan_type = p.leading == 0;
                out.push_back(p);
            }
        }
    }
    return out;
}

std::vector<FamilyPair> figure_pairs(std::int64_t r_max, std::uint32_t ell_max, bool include_case2)
{
    std::vector<FamilyPair> out;
    for (const auto &p : family_enumerate(ell_max, include_case2, r_max))
        if (!p.ramanujan_type)
            out.push_back(p);
    return out;
}

std::uint32_t etafamily_verify(int r, std::uint32_t ell, int family_case, std::int64_t trunc)
{
    if (family_case != 1 && family_case != 2)
        throw Error(ErrorKind::invalid_argument, fmt::format("family case must be 1 or 2, got {}", family_case));
    if (!family_parameter(r, ell, family_case))
        throw Error(ErrorKind::hypothesis_failure,
                    fmt::format("(r={}, ell={}) does not satisfy the case-{} side conditions", r, ell, family_case));
    const GenFunc f = build_f(r, ell, 0, trunc);
    const std::uint32_t alpha = leading_value(r, ell, family_case);
    const auto kind = family_case == 1 ? ThetaKind::eta : ThetaKind::eta3;
    const Q24Series expected = theta_shape_series(kind, alpha, ell, trunc);
    if (auto n = first_difference(f.series, expected))
        throw Error(ErrorKind::shape_mismatch,
                    fmt::format("f_{{{},{},0}} differs from {}*{} at N={}", r, ell, alpha, to_string(kind), *n), *n);
    return alpha;
}

std::int64_t b_value_times_2(std::int64_t r, std::int64_t ell)
{
    const std::int64_t num = 2 * ell * ell + r * (ell * ell - 1) - 2;
    const std::int64_t den = 2 * ell * (ell - 1);
    return 2 * (ell - 1) * floor_div(num, den) - r * ell;
}

namespace {

[[noreturn]] void hypothesis(const std::string &what) { throw Error(ErrorKind::hypothesis_failure, what); }

void expect_shape(const Q24Series &f, const Q24Series &expected, const std::string &label)
{
    if (auto n = first_difference(f, expected))
        throw Error(ErrorKind::shape_mismatch, fmt::format("{} differs from the expected shape at N={}", label, *n), *n);
}

bool positive_order(const Q24Series &f)
{
    auto o = f.order();
    return !o || *o > 0;
}

} // namespace

ThetaShape abnormal_verify(int r, std::uint32_t ell, int abnormal_case, std::int64_t trunc,
                           std::vector<std::string> *notes)
{
    if (abnormal_case < 1 || abnormal_case > 3)
        throw Error(ErrorKind::invalid_argument, fmt::format("abnormal case must be 1, 2 or 3, got {}", abnormal_case));
    if (ell < 5 || !is_prime(ell) || r < 1 || r % static_cast<int>(ell) == 0)
        hypothesis(fmt::format("need a prime ell >= 5 not dividing r (r={}, ell={})", r, ell));
    const std::int64_t l = ell;
    const PrimeField F(ell);
    const std::int64_t needed = genfunc_needed_n(r, ell, 0, trunc);
    const PartitionTable table = pr_mod(r, ell, std::max(needed, genfunc_needed_n(r, ell, -1, trunc)));
    const GenFunc f0 = build_f(table, 0, trunc);
    const std::string f0_label = fmt::format("f_{{{},{},0}}", r, ell);
    const std::string f1_label = fmt::format("f_{{{},{},-1}}", r, ell);

    if (abnormal_case == 1) {
        const std::int64_t b2 = b_value_times_2(r, l);
        if (b2 != l)
            hypothesis(fmt::format("b(r,ell) = {}/2, not ell/2", b2));
        if (mod_floor(r, 24) != 23)
            hypothesis("r is not -1 mod 24");
        // The Miller-basis argument needs the first d-1 coordinates to vanish,
        // i.e. no coefficient below N = ell.
        if (auto o = f0.series.order(); o && *o < l)
            hypothesis(fmt::format("ord of {} is {} < ell", f0_label, *o));
        if (trunc < l)
            hypothesis("truncation does not reach N = ell");
        const std::uint32_t alpha = f0.series.coeff(l);
        expect_shape(f0.series, theta_shape_series(ThetaKind::eta_ell, alpha, ell, trunc), f0_label);
        return {l, ThetaKind::eta_ell, alpha};
    }

    const GenFunc fm = build_f(table, -1, trunc);
    if (!positive_order(fm.series))
        hypothesis(fmt::format("{} has a nonzero coefficient at N <= 0", f1_label));

    if (abnormal_case == 2) {
        if (l * l != r + 4)
            hypothesis("ell^2 != r + 4");
        // The vanishing of f0 is reported, not enforced: (45,7) has
        // f0 != 0 (p_45(1) = 45) yet f_{45,7,-1} is a multiple of eta^3.
        if (notes && !f0.series.is_zero())
            notes->push_back(fmt::format("{} is not 0 mod ell", f0_label));
        if (mod_floor(r, 24) != 21)
            hypothesis("r is not -3 mod 24");
        if (trunc < 3)
            hypothesis("truncation does not reach N = 3");
        const std::uint32_t alpha = fm.series.coeff(3);
        expect_shape(fm.series, theta_shape_series(ThetaKind::eta3, alpha, ell, trunc), f1_label);
        return {3, ThetaKind::eta3, alpha};
    }

    if (l * l != r + 2)
        hypothesis("ell^2 != r + 2");
    if (mod_floor(r, 24) != 23)
        hypothesis("r is not -1 mod 24");
    if (trunc < l)
        hypothesis("truncation does not reach N = ell");
    const std::uint32_t beta = f0.series.coeff(l);
    try {
        expect_shape(f0.series, theta_shape_series(ThetaKind::eta_ell, beta, ell, trunc), f0_label);
    } catch (const Error &e) {
        hypothesis(fmt::format("{} is not a multiple of eta^ell ({})", f0_label, e.what()));
    }
    // the shape has coefficient -1 at N = 1
    const std::uint32_t alpha = F.neg(fm.series.coeff(1));
    expect_shape(fm.series, theta_shape_series(ThetaKind::eta_ell2_minus_eta, alpha, ell, trunc), f1_label);
    return {1, ThetaKind::eta_ell2_minus_eta, alpha};
}

} // namespace thetacong
