#include "thetacong/etaforms.hpp"

#include "kernels.hpp"
#include "thetacong/arith.hpp"
#include "thetacong/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace thetacong {

namespace {

using detail::SparseTerm;

// prod (1 - q^(s n)) = sum_k (-1)^k q^(s k(3k-1)/2), k over all integers
std::vector<SparseTerm> pentagonal_terms(std::size_t s, std::size_t len, std::uint32_t ell)
{
    std::vector<SparseTerm> out{{0, 1}};
    for (std::size_t k = 1;; ++k) {
        const std::size_t a = s * (k * (3 * k - 1) / 2);
        if (a >= len)
            break;
        const std::uint32_t sign = (k % 2) ? ell - 1 : 1;
        out.push_back({a, sign});
        const std::size_t b = s * (k * (3 * k + 1) / 2);
        if (b < len)
            out.push_back({b, sign});
    }
    return out;
}

// prod (1 - q^(s n))^3 = sum_{k>=0} (-1)^k (2k+1) q^(s k(k+1)/2)
std::vector<SparseTerm> jacobi_terms(std::size_t s, std::size_t len, std::uint32_t ell)
{
    std::vector<SparseTerm> out;
    for (std::size_t k = 0;; ++k) {
        const std::size_t a = s * (k * (k + 1) / 2);
        if (a >= len)
            break;
        const auto v = static_cast<std::uint32_t>((2 * k + 1) % ell);
        if (v != 0)
            out.push_back({a, (k % 2) ? ell - v : v});
    }
    return out;
}

Row poly_mul(const Row &a, const Row &b, std::size_t len, std::uint32_t ell)
{
    auto terms = detail::nonzero_terms(a);
    return detail::convolve(terms, b, len, ell);
}

Row poly_pow(const Row &a, std::uint64_t e, std::size_t len, std::uint32_t ell)
{
    Row acc(len, 0);
    acc[0] = 1;
    Row base(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(len, a.size())));
    base.resize(len, 0);
    while (e) {
        if (e & 1)
            acc = poly_mul(acc, base, len, ell);
        e >>= 1;
        if (e)
            base = poly_mul(base, base, len, ell);
    }
    return acc;
}

void check_field(std::uint32_t ell)
{
    if (ell < 5 || !is_prime(ell))
        throw Error(ErrorKind::invalid_argument, fmt::format("modulus must be a prime >= 5, got {}", ell));
}

// E4, E6, Delta mod ell as q-expansions of length len.
struct Generators {
    Row e4, e6, delta;
};

Generators generators(std::uint32_t ell, std::size_t len)
{
    Generators g{Row(len, 0), Row(len, 0), Row(len, 0)};
    std::vector<std::uint64_t> s3(len, 0), s5(len, 0);
    for (std::size_t d = 1; d < len; ++d) {
        const std::uint64_t d3 = pow_mod(d, 3, ell), d5 = pow_mod(d, 5, ell);
        for (std::size_t n = d; n < len; n += d) {
            s3[n] = (s3[n] + d3) % ell;
            s5[n] = (s5[n] + d5) % ell;
        }
    }
    const PrimeField F(ell);
    g.e4[0] = g.e6[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        g.e4[n] = F.mul(F.reduce(240), static_cast<std::uint32_t>(s3[n]));
        g.e6[n] = F.mul(F.reduce(-504), static_cast<std::uint32_t>(s5[n]));
    }
    if (len > 1) {
        auto p = euler_power(24, ell, len - 1);
        std::copy(p.begin(), p.end(), g.delta.begin() + 1);
    }
    return g;
}

// Monomial rows without the precision precondition; used internally where
// the caller controls how many coefficients matter.
FormSpace build_space(int k, std::uint32_t ell, std::int64_t q_trunc)
{
    if (k < 0 || k % 2 != 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("weight must be even and non-negative, got {}", k));
    check_field(ell);
    FormSpace fs;
    fs.weight = k;
    fs.ell = ell;
    fs.trunc = q_trunc;
    fs.dim_M = dim_modular_forms(k);
    fs.dim_S = dim_cusp_forms(k);
    const auto len = static_cast<std::size_t>(q_trunc + 1);
    if (fs.dim_M == 0)
        return fs;
    const Generators g = generators(ell, len);
    Row delta_c(len, 0);
    delta_c[0] = 1;
    for (int c = 0; c < fs.dim_M; ++c) {
        const int half = (k - 12 * c) / 2; // 2a + 3b
        const int b = half % 2;
        const int a = (half - 3 * b) / 2;
        fs.monomials.push_back({a, b, c});
        Row row = poly_mul(poly_pow(g.e4, static_cast<std::uint64_t>(a), len, ell), delta_c, len, ell);
        if (b)
            row = poly_mul(row, g.e6, len, ell);
        fs.basis_matrix.push_back(std::move(row));
        delta_c = poly_mul(delta_c, g.delta, len, ell);
    }
    fs.echelon = fs.basis_matrix;
    fs.pivots = row_reduce(fs.echelon, ell);
    return fs;
}

bool in_space(const FormSpace &fs, const Row &target)
{
    if (fs.dim_M == 0)
        return std::all_of(target.begin(), target.end(), [](std::uint32_t c) { return c == 0; });
    return solve_in_echelon(fs.echelon, fs.pivots, target, fs.ell).has_value();
}

} // namespace

Q24Series eta_series(std::uint32_t ell, std::int64_t trunc)
{
    if (trunc < 1)
        throw Error(ErrorKind::invalid_argument, "eta expansion needs trunc >= 1");
    auto c = Row(static_cast<std::size_t>(trunc), 0);
    // exponents (6k+1)^2 for k in Z; sign (-1)^k
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (std::int64_t kk : {k, -k - 1}) {
            const std::int64_t n = 6 * kk + 1;
            if (n * n > trunc)
                continue;
            any = true;
            c[static_cast<std::size_t>(n * n - 1)] = (kk % 2 == 0) ? 1 : ell - 1;
        }
        if (!any)
            break;
    }
    return Q24Series(ell, 1, std::move(c));
}

Row euler_power(std::int64_t e, std::uint32_t ell, std::size_t len)
{
    check_field(ell);
    Row v(len, 0);
    if (len == 0)
        return v;
    v[0] = 1;
    std::size_t scale = 1;
    const auto L = static_cast<std::int64_t>(ell);
    while (e != 0 && scale < len) {
        std::int64_t d = mod_floor(e, L);
        if (d > L / 2)
            d -= L;
        e = (e - d) / L;
        const std::size_t reps = static_cast<std::size_t>(std::abs(d));
        if (reps > 0) {
            const auto jac = jacobi_terms(scale, len, ell);
            const auto pent = pentagonal_terms(scale, len, ell);
            for (std::size_t i = 0; i < reps / 3; ++i)
                d > 0 ? detail::multiply_by_sparse(v, jac, ell) : detail::divide_by_sparse(v, jac, ell);
            for (std::size_t i = 0; i < reps % 3; ++i)
                d > 0 ? detail::multiply_by_sparse(v, pent, ell) : detail::divide_by_sparse(v, pent, ell);
        }
        if (scale > len / ell)
            break;
        scale *= ell;
    }
    return v;
}

Q24Series eta_pow(std::int64_t e, std::uint32_t ell, std::int64_t trunc)
{
    if (trunc < e)
        throw Error(ErrorKind::invalid_argument, fmt::format("eta^{} starts at {}, past trunc {}", e, e, trunc));
    const auto q_len = static_cast<std::size_t>((trunc - e) / 24 + 1);
    const Row p = euler_power(e, ell, q_len);
    Row c(static_cast<std::size_t>(trunc - e + 1), 0);
    for (std::size_t n = 0; n < q_len; ++n)
        c[24 * n] = p[n];
    return Q24Series(ell, e, std::move(c));
}

ExactQSeries exact_mul(const ExactQSeries &a, const ExactQSeries &b, std::size_t len)
{
    ExactQSeries out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

std::pair<ExactQSeries, ExactQSeries> e4_e6_series(std::int64_t q_trunc)
{
    if (q_trunc < 1)
        throw Error(ErrorKind::invalid_argument, "Eisenstein expansions need trunc >= 1");
    const auto len = static_cast<std::size_t>(q_trunc + 1);
    ExactQSeries s3(len, 0), s5(len, 0);
    for (std::size_t d = 1; d < len; ++d) {
        mpz_class d3, d5;
        mpz_ui_pow_ui(d3.get_mpz_t(), d, 3);
        mpz_ui_pow_ui(d5.get_mpz_t(), d, 5);
        for (std::size_t n = d; n < len; n += d) {
            s3[n] += d3;
            s5[n] += d5;
        }
    }
    ExactQSeries e4(len), e6(len);
    e4[0] = e6[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
        e4[n] = 240 * s3[n];
        e6[n] = -504 * s5[n];
    }
    return {std::move(e4), std::move(e6)};
}

ExactQSeries delta_exact(std::int64_t q_trunc)
{
    if (q_trunc < 1)
        throw Error(ErrorKind::invalid_argument, "Delta expansion needs trunc >= 1");
    const auto len = static_cast<std::size_t>(q_trunc); // prod through q^(q_trunc - 1)
    ExactQSeries j3(len, 0);
    for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k)
        j3[k * (k + 1) / 2] = (k % 2 ? -1 : 1) * static_cast<long>(2 * k + 1);
    ExactQSeries p(len, 0);
    p[0] = 1;
    for (int i = 0; i < 8; ++i)
        p = exact_mul(p, j3, len);
    ExactQSeries out(len + 1, 0);
    std::copy(p.begin(), p.end(), out.begin() + 1);
    return out;
}

Q24Series reduce_to_grid(const ExactQSeries &s, std::uint32_t ell)
{
    if (s.empty())
        throw Error(ErrorKind::invalid_argument, "empty expansion");
    Row c(24 * (s.size() - 1) + 1, 0);
    for (std::size_t n = 0; n < s.size(); ++n)
        c[24 * n] = static_cast<std::uint32_t>(mpz_fdiv_ui(s[n].get_mpz_t(), ell));
    return Q24Series(ell, 0, std::move(c));
}

Row integer_grid_coeffs(const Q24Series &f, std::size_t count)
{
    if (!f.supported_on(0, 24))
        throw Error(ErrorKind::invalid_argument, "series is not on the integer grid");
    Row out(count);
    for (std::size_t n = 0; n < count; ++n)
        out[n] = f.coeff(24 * static_cast<std::int64_t>(n));
    return out;
}

Q24Series from_integer_grid(std::uint32_t ell, const Row &q_coeffs)
{
    if (q_coeffs.empty())
        throw Error(ErrorKind::invalid_argument, "empty expansion");
    Row c(24 * (q_coeffs.size() - 1) + 1, 0);
    for (std::size_t n = 0; n < q_coeffs.size(); ++n)
        c[24 * n] = q_coeffs[n];
    return Q24Series(ell, 0, std::move(c));
}

int dim_modular_forms(int k)
{
    if (k < 0 || k % 2 != 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("weight must be even and non-negative, got {}", k));
    return k % 12 == 2 ? k / 12 : k / 12 + 1;
}

int dim_cusp_forms(int k) { return std::max(dim_modular_forms(k) - 1, 0); }

FormSpace form_space(int k, std::uint32_t ell, std::int64_t q_trunc)
{
    if (k >= 0 && k % 2 == 0 && q_trunc < dim_modular_forms(k) + 10)
        throw Error(ErrorKind::insufficient_precision,
                    fmt::format("form space of weight {} needs trunc >= {}", k, dim_modular_forms(k) + 10));
    return build_space(k, ell, q_trunc);
}

std::vector<Q24Series> miller_basis(int k, std::uint32_t ell, std::int64_t q_trunc)
{
    const FormSpace fs = form_space(k, ell, q_trunc);
    if (fs.dim_S == 0)
        throw Error(ErrorKind::empty_space, fmt::format("S_{} is zero", k));
    std::vector<Q24Series> out;
    for (int i = 1; i <= fs.dim_S; ++i)
        out.push_back(from_integer_grid(ell, fs.echelon[static_cast<std::size_t>(i)]));
    return out;
}

int filtration(const Q24Series &f, int k_start, std::uint32_t ell)
{
    if (f.ell() != ell)
        throw Error(ErrorKind::modulus_mismatch, "series modulus differs from ell");
    if (k_start < 0 || k_start % 2 != 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("weight must be even and non-negative, got {}", k_start));
    const std::int64_t q_trunc = k_start / 12 + 2;
    if (f.trunc() < 24 * q_trunc)
        throw Error(ErrorKind::insufficient_precision,
                    fmt::format("filtration at weight {} needs coefficients through q^{}", k_start, q_trunc));
    const Row target = integer_grid_coeffs(f, static_cast<std::size_t>(q_trunc + 1));
    if (!in_space(build_space(k_start, ell, q_trunc), target))
        throw Error(ErrorKind::inconsistent_input, fmt::format("series is not in M_{} mod {}", k_start, ell));
    // M_k sits inside M_{k+ell-1} through E_{ell-1} = 1, so the members form a
    // tail of the descending chain.
    int best = k_start;
    for (int k = k_start - static_cast<int>(ell - 1); k >= 0; k -= static_cast<int>(ell - 1)) {
        if (!in_space(build_space(k, ell, q_trunc), target))
            break;
        best = k;
    }
    return best;
}

CuspMembership cusp_member(const Q24Series &f, int half_weight_times_2, int eta_exp, std::uint32_t ell)
{
    if (f.ell() != ell)
        throw Error(ErrorKind::modulus_mismatch, "series modulus differs from ell");
    if (eta_exp < 0 || eta_exp >= 24)
        throw Error(ErrorKind::invalid_argument, fmt::format("eta exponent {} outside [0, 24)", eta_exp));
    CuspMembership out;
    const int w2 = half_weight_times_2 + (eta_exp == 0 ? 0 : 24 - eta_exp);
    out.integral_weight = w2 / 2;
    if (!f.supported_on(eta_exp, 24))
        return out;
    const Q24Series g = eta_exp == 0 ? f : mul(f, eta_pow(24 - eta_exp, ell, f.trunc() + 24 - eta_exp));
    if (w2 < 0 || w2 % 4 != 0) {
        // no level-one forms of this weight
        out.member = g.is_zero();
        return out;
    }
    const int k = w2 / 2;
    const std::int64_t needed = k / 12 + 1;
    const std::int64_t available = g.trunc() < 0 ? 0 : g.trunc() / 24 + 1;
    if (available < needed)
        throw Error(ErrorKind::insufficient_precision,
                    fmt::format("membership in S_{} needs {} coefficients, have {}", k, needed, available));
    const Row target = integer_grid_coeffs(g, static_cast<std::size_t>(available));
    if (target[0] != 0)
        return out;
    const FormSpace fs = build_space(k, ell, available - 1);
    if (!in_space(fs, target))
        return out;
    out.member = true;
    for (int i = 1; i <= fs.dim_S; ++i)
        out.coordinates.push_back(target[static_cast<std::size_t>(i)]);
    return out;
}

const char *to_string(ThetaKind kind) noexcept
{
    switch (kind) {
    case ThetaKind::eta:
        return "eta";
    case ThetaKind::eta3:
        return "eta3";
    case ThetaKind::eta_ell:
        return "eta_ell";
    case ThetaKind::eta_ell2_minus_eta:
        return "eta_ell2_minus_eta";
    case ThetaKind::unclassified:
        return "unclassified";
    }
    return "?";
}

std::string describe(const ThetaShape &shape)
{
    return fmt::format("{}*{} (b={})", shape.scalar, to_string(shape.kind), shape.b);
}

Q24Series theta_shape_series(ThetaKind kind, std::uint32_t alpha, std::uint32_t ell, std::int64_t trunc)
{
    const std::int64_t t = std::max<std::int64_t>(trunc, 1);
    auto eta_power_or_zero = [&](std::int64_t e) {
        return e <= t ? eta_pow(e, ell, t).restarted(1) : Q24Series::zero(ell, 1, t);
    };
    Q24Series s = Q24Series::zero(ell, 1, t);
    switch (kind) {
    case ThetaKind::eta:
        s = eta_series(ell, t);
        break;
    case ThetaKind::eta3:
        s = eta_power_or_zero(3);
        break;
    case ThetaKind::eta_ell:
        s = eta_power_or_zero(ell);
        break;
    case ThetaKind::eta_ell2_minus_eta: {
        const int chi = kronecker(12, ell);
        const std::uint64_t big = std::uint64_t(ell) * ell;
        auto hi = eta_power_or_zero(static_cast<std::int64_t>(big));
        s = sub(chi > 0 ? hi : negate(hi), eta_series(ell, t));
        break;
    }
    case ThetaKind::unclassified:
        break;
    }
    return scale(s, alpha);
}

std::optional<ThetaShape> theta_detect(const Q24Series &f)
{
    std::vector<std::int64_t> support;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f.coeffs()[i] != 0)
            support.push_back(f.start() + static_cast<std::int64_t>(i));
    if (support.size() < 5)
        throw Error(ErrorKind::insufficient_data,
                    fmt::format("{} nonzero coefficients, at least 5 are needed", support.size()));

    auto squarefree_part = [](std::int64_t n) {
        std::int64_t part = 1;
        for (std::int64_t p = 2; p * p <= n; ++p) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e % 2)
                part *= p;
        }
        return part * n;
    };
    std::int64_t b = 0;
    for (std::int64_t n : support) {
        if (n <= 0)
            return std::nullopt;
        const std::int64_t s = squarefree_part(n);
        if (b == 0)
            b = s;
        else if (s != b)
            return std::nullopt;
    }

    const std::uint32_t ell = f.ell();
    const PrimeField F(ell);
    const std::int64_t n0 = support.front();
    for (ThetaKind kind : {ThetaKind::eta, ThetaKind::eta3, ThetaKind::eta_ell, ThetaKind::eta_ell2_minus_eta}) {
        const Q24Series ref = theta_shape_series(kind, 1, ell, f.trunc());
        const std::uint32_t lead = n0 <= ref.trunc() ? ref.coeff(n0) : 0;
        if (lead == 0)
            continue;
        const std::uint32_t alpha = F.mul(f.coeff(n0), F.inv(lead));
        if (!first_difference(f, scale(ref, alpha)))
            return ThetaShape{b, kind, alpha};
    }
    return ThetaShape{b, ThetaKind::unclassified, 0};
}

} // namespace thetacong
