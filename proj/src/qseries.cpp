#include "thetacong/qseries.hpp"

#include "kernels.hpp"
#include "thetacong/arith.hpp"
#include "thetacong/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace thetacong {

namespace {

void check_modulus(std::uint32_t ell)
{
    if (ell < 5 || ell >= (1u << 31) || !is_prime(ell))
        throw Error(ErrorKind::invalid_argument, "series modulus must be a prime in [5, 2^31), got " + std::to_string(ell));
}

void check_same_modulus(const Q24Series &f, const Q24Series &g)
{
    if (f.ell() != g.ell())
        throw Error(ErrorKind::modulus_mismatch,
                    "moduli " + std::to_string(f.ell()) + " and " + std::to_string(g.ell()) + " differ");
}

// Nonzero coefficients of v sit at first + k*stride; stride 0 means at most
// one nonzero entry.
struct Lattice {
    std::size_t first = 0;
    std::size_t stride = 0;
    bool empty = true;
};

Lattice lattice_of(std::span<const std::uint32_t> v)
{
    Lattice lat;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        if (lat.empty) {
            lat.first = i;
            lat.empty = false;
        } else {
            lat.stride = std::gcd(lat.stride, i - lat.first);
            if (lat.stride == 1)
                break;
        }
    }
    return lat;
}

std::vector<std::uint32_t> gather(std::span<const std::uint32_t> v, std::size_t first, std::size_t stride,
                                  std::size_t limit)
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = first; i < limit && i < v.size(); i += stride)
        out.push_back(v[i]);
    return out;
}

// First `len` coefficients of the product of two windows given relative to
// their starts.
std::vector<std::uint32_t> product_window(std::span<const std::uint32_t> f, std::span<const std::uint32_t> g,
                                          std::size_t len, std::uint32_t ell)
{
    std::vector<std::uint32_t> out(len, 0);
    const Lattice lf = lattice_of(f.subspan(0, std::min(len, f.size())));
    const Lattice lg = lattice_of(g.subspan(0, std::min(len, g.size())));
    if (lf.empty || lg.empty || lf.first + lg.first >= len)
        return out;
    std::size_t stride = std::gcd(lf.stride, lg.stride);
    if (stride == 0)
        stride = len;
    const std::size_t offset = lf.first + lg.first;
    const std::size_t count = (len - offset + stride - 1) / stride;
    auto fc = gather(f, lf.first, stride, len);
    auto gc = gather(g, lg.first, stride, len);
    // sparser operand drives the outer sum
    auto fz = detail::nonzero_terms(fc);
    auto gz = detail::nonzero_terms(gc);
    auto packed = fz.size() <= gz.size() ? detail::convolve(fz, gc, count, ell) : detail::convolve(gz, fc, count, ell);
    for (std::size_t k = 0; k < count; ++k)
        out[offset + k * stride] = packed[k];
    return out;
}

} // namespace

Q24Series::Q24Series(std::uint32_t ell, std::int64_t start, std::vector<std::uint32_t> coeffs)
    : ell_(ell), start_(start), coeffs_(std::move(coeffs))
{
    check_modulus(ell);
    if (coeffs_.empty())
        throw Error(ErrorKind::invalid_argument, "a series needs at least one stored coefficient");
    for (auto &c : coeffs_)
        c %= ell_;
}

Q24Series Q24Series::zero(std::uint32_t ell, std::int64_t start, std::int64_t trunc)
{
    if (trunc < start)
        throw Error(ErrorKind::invalid_argument, "trunc below start");
    return Q24Series(ell, start, std::vector<std::uint32_t>(static_cast<std::size_t>(trunc - start + 1), 0));
}

Q24Series Q24Series::monomial(std::uint32_t ell, std::int64_t exponent, std::int64_t trunc, std::uint32_t c)
{
    auto s = zero(ell, exponent, std::max(trunc, exponent));
    s.coeffs_[0] = c % ell;
    return s;
}

Q24Series Q24Series::from_integers(std::uint32_t ell, std::int64_t start, std::span<const std::int64_t> values)
{
    check_modulus(ell);
    std::vector<std::uint32_t> c(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        c[i] = static_cast<std::uint32_t>(mod_floor(values[i], ell));
    return Q24Series(ell, start, std::move(c));
}

std::uint32_t Q24Series::coeff(std::int64_t n) const
{
    if (n < start_)
        return 0;
    if (n > trunc())
        throw Error(ErrorKind::table_range,
                    "coefficient " + std::to_string(n) + " beyond truncation " + std::to_string(trunc()), n);
    return coeffs_[static_cast<std::size_t>(n - start_)];
}

std::optional<std::int64_t> Q24Series::order() const noexcept
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return start_ + static_cast<std::int64_t>(i);
    return std::nullopt;
}

std::int64_t Q24Series::nonzero_count() const noexcept
{
    return std::count_if(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c != 0; });
}

bool Q24Series::supported_on(std::int64_t residue, std::int64_t modulus) const noexcept
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const std::int64_t n = start_ + static_cast<std::int64_t>(i);
        if (coeffs_[i] != 0 && mod_floor(n - residue, modulus) != 0)
            return false;
    }
    return true;
}

Q24Series Q24Series::truncated(std::int64_t new_trunc) const
{
    if (new_trunc > trunc())
        throw Error(ErrorKind::insufficient_precision,
                    "cannot extend truncation from " + std::to_string(trunc()) + " to " + std::to_string(new_trunc));
    if (new_trunc < start_)
        throw Error(ErrorKind::invalid_argument, "truncation below start");
    return Q24Series(ell_, start_,
                     std::vector<std::uint32_t>(coeffs_.begin(), coeffs_.begin() + (new_trunc - start_ + 1)));
}

Q24Series Q24Series::restarted(std::int64_t new_start) const
{
    if (new_start > start_)
        throw Error(ErrorKind::invalid_argument, "restarted() only moves the start down");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(start_ - new_start), 0);
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Q24Series(ell_, new_start, std::move(c));
}

Q24Series Q24Series::shifted(std::int64_t by) const { return Q24Series(ell_, start_ + by, coeffs_); }

namespace {

template <class Op>
Q24Series combine(const Q24Series &f, const Q24Series &g, Op op)
{
    check_same_modulus(f, g);
    const std::int64_t start = std::min(f.start(), g.start());
    const std::int64_t trunc = std::min(f.trunc(), g.trunc());
    if (trunc < start)
        throw Error(ErrorKind::insufficient_precision, "series windows do not overlap");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(trunc - start + 1));
    for (std::int64_t n = start; n <= trunc; ++n)
        c[static_cast<std::size_t>(n - start)] = op(f.coeff(n), g.coeff(n));
    return Q24Series(f.ell(), start, std::move(c));
}

} // namespace

Q24Series add(const Q24Series &f, const Q24Series &g)
{
    const std::uint32_t ell = f.ell();
    return combine(f, g, [ell](std::uint32_t a, std::uint32_t b) {
        std::uint64_t s = std::uint64_t(a) + b;
        return static_cast<std::uint32_t>(s >= ell ? s - ell : s);
    });
}

Q24Series sub(const Q24Series &f, const Q24Series &g)
{
    const std::uint32_t ell = f.ell();
    return combine(f, g, [ell](std::uint32_t a, std::uint32_t b) {
        return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t(a) + ell - b);
    });
}

Q24Series scale(const Q24Series &f, std::uint32_t c)
{
    std::vector<std::uint32_t> out(f.coeffs().begin(), f.coeffs().end());
    c %= f.ell();
    for (auto &x : out)
        x = static_cast<std::uint32_t>(std::uint64_t(x) * c % f.ell());
    return Q24Series(f.ell(), f.start(), std::move(out));
}

Q24Series negate(const Q24Series &f) { return scale(f, f.ell() - 1); }

Q24Series mul(const Q24Series &f, const Q24Series &g)
{
    check_same_modulus(f, g);
    const std::int64_t start = f.start() + g.start();
    const std::int64_t trunc = std::min(f.trunc() + g.start(), g.trunc() + f.start());
    const auto len = static_cast<std::size_t>(trunc - start + 1);
    return Q24Series(f.ell(), start, product_window(f.coeffs(), g.coeffs(), len, f.ell()));
}

Q24Series inv(const Q24Series &f, std::int64_t out_trunc)
{
    const std::uint32_t ell = f.ell();
    const std::uint32_t lead = f.coeffs()[0];
    if (lead == 0)
        throw Error(ErrorKind::non_invertible, "leading coefficient of the series is 0 mod " + std::to_string(ell),
                    f.start());
    const std::int64_t start = -f.start();
    if (out_trunc < start)
        throw Error(ErrorKind::invalid_argument, "inverse truncation below its start");
    const auto len = static_cast<std::size_t>(out_trunc - start + 1);
    if (len > f.size())
        throw Error(ErrorKind::insufficient_precision,
                    "inverse through " + std::to_string(out_trunc) + " needs the input through " +
                        std::to_string(f.start() + static_cast<std::int64_t>(len) - 1));

    // normalise to 1 + h, where h lives on a lattice of stride s
    const std::uint32_t lead_inv = inv_mod(lead, ell);
    const Lattice lat = lattice_of(f.coeffs().subspan(1, len - 1));
    const std::size_t stride = lat.empty ? len : std::gcd(lat.first + 1, lat.stride);
    std::vector<std::uint32_t> packed_f;
    for (std::size_t i = 0; i < len; i += stride)
        packed_f.push_back(static_cast<std::uint32_t>(std::uint64_t(f.coeffs()[i]) * lead_inv % ell));
    auto terms = detail::nonzero_terms(packed_f);

    std::vector<std::uint32_t> packed_g(packed_f.size(), 0);
    packed_g[0] = 1;
    detail::divide_by_sparse(packed_g, terms, ell);

    std::vector<std::uint32_t> out(len, 0);
    for (std::size_t k = 0; k < packed_g.size(); ++k)
        out[k * stride] = static_cast<std::uint32_t>(std::uint64_t(packed_g[k]) * lead_inv % ell);
    return Q24Series(ell, start, std::move(out));
}

Q24Series pow(const Q24Series &f, std::uint64_t e, std::int64_t out_trunc)
{
    if (e == 0)
        return Q24Series::monomial(f.ell(), 0, std::max<std::int64_t>(out_trunc, 0));
    const auto ee = static_cast<std::int64_t>(e);
    const std::int64_t start = ee * f.start();
    const std::int64_t natural = f.trunc() + (ee - 1) * f.start();
    const std::int64_t trunc = std::min(out_trunc, natural);
    if (trunc < start)
        throw Error(ErrorKind::invalid_argument, "power truncation below its start");
    const auto len = static_cast<std::size_t>(trunc - start + 1);

    std::vector<std::uint32_t> base(f.coeffs().begin(), f.coeffs().begin() + static_cast<std::ptrdiff_t>(len));
    std::optional<std::vector<std::uint32_t>> acc;
    while (e) {
        if (e & 1)
            acc = acc ? product_window(*acc, base, len, f.ell()) : base;
        e >>= 1;
        if (e)
            base = product_window(base, base, len, f.ell());
    }
    return Q24Series(f.ell(), start, std::move(*acc));
}

Q24Series u_op(const Q24Series &f, std::int64_t m)
{
    if (m < 1)
        throw Error(ErrorKind::invalid_argument, "U_m needs m >= 1");
    const std::int64_t start = ceil_div(f.start(), m);
    const std::int64_t trunc = floor_div(f.trunc(), m);
    if (trunc < start)
        throw Error(ErrorKind::insufficient_precision, "U_" + std::to_string(m) + " leaves no coefficients");
    std::vector<std::uint32_t> c(static_cast<std::size_t>(trunc - start + 1));
    for (std::int64_t n = start; n <= trunc; ++n)
        c[static_cast<std::size_t>(n - start)] = f.coeff(m * n);
    return Q24Series(f.ell(), start, std::move(c));
}

Q24Series v_op(const Q24Series &f, std::int64_t m)
{
    if (m < 1)
        throw Error(ErrorKind::invalid_argument, "V_m needs m >= 1");
    std::vector<std::uint32_t> c(f.size() * static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        c[i * static_cast<std::size_t>(m)] = f.coeffs()[i];
    return Q24Series(f.ell(), m * f.start(), std::move(c));
}

Q24Series twist(const Q24Series &f, std::int64_t q)
{
    if (q < 5 || !is_prime(static_cast<std::uint64_t>(q)))
        throw Error(ErrorKind::invalid_argument, "twist needs a prime Q >= 5, got " + std::to_string(q));
    std::vector<std::uint32_t> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int chi = kronecker(f.start() + static_cast<std::int64_t>(i), q);
        if (chi == 0)
            c[i] = 0;
        else if (chi < 0 && c[i] != 0)
            c[i] = f.ell() - c[i];
    }
    return Q24Series(f.ell(), f.start(), std::move(c));
}

Q24Series theta_op(const Q24Series &f, std::uint64_t iterations)
{
    const PrimeField field(f.ell());
    const std::uint32_t inv24 = field.inv(24);
    std::vector<std::uint32_t> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0)
            continue;
        const std::uint32_t n = field.reduce(f.start() + static_cast<std::int64_t>(i));
        c[i] = field.mul(c[i], field.pow(field.mul(n, inv24), iterations));
    }
    return Q24Series(f.ell(), f.start(), std::move(c));
}

std::optional<std::int64_t> first_difference(const Q24Series &f, const Q24Series &g)
{
    check_same_modulus(f, g);
    const std::int64_t start = std::min(f.start(), g.start());
    const std::int64_t trunc = std::min(f.trunc(), g.trunc());
    for (std::int64_t n = start; n <= trunc; ++n)
        if (f.coeff(n) != g.coeff(n))
            return n;
    return std::nullopt;
}

} // namespace thetacong
