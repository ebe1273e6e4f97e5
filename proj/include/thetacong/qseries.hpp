#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace thetacong {

/// Weight/multiplier bookkeeping attached to a generating function. Only the
/// support class and the weight are tracked; there is no analytic content.
struct SeriesMeta {
    std::int64_t weight_times_2 = 0;
    int eta_exponent = 0; // r in nu_eta^r, reduced mod 24
    int level = 1;
};

/// Truncated expansion sum a(N) q^(N/24) over Z/ell, stored densely for
/// start <= N <= trunc. Coefficients below `start` are zero; coefficients
/// above `trunc` are unknown. Integer-weight forms live on N = 24n.
class Q24Series {
public:
    Q24Series(std::uint32_t ell, std::int64_t start, std::vector<std::uint32_t> coeffs);

    static Q24Series zero(std::uint32_t ell, std::int64_t start, std::int64_t trunc);
    static Q24Series monomial(std::uint32_t ell, std::int64_t exponent, std::int64_t trunc, std::uint32_t c = 1);
    /// Reduces signed integers into [0, ell).
    static Q24Series from_integers(std::uint32_t ell, std::int64_t start, std::span<const std::int64_t> values);

    std::uint32_t ell() const noexcept { return ell_; }
    std::int64_t start() const noexcept { return start_; }
    std::int64_t trunc() const noexcept { return start_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const std::uint32_t> coeffs() const noexcept { return coeffs_; }

    /// a(N); zero below start, throws table-range above trunc.
    std::uint32_t coeff(std::int64_t n) const;
    std::uint32_t operator[](std::int64_t n) const { return coeff(n); }

    /// Smallest N with a(N) != 0, if any within the truncation.
    std::optional<std::int64_t> order() const noexcept;
    bool is_zero() const noexcept { return !order().has_value(); }
    std::int64_t nonzero_count() const noexcept;
    /// True when every nonzero a(N) has N = residue (mod modulus).
    bool supported_on(std::int64_t residue, std::int64_t modulus) const noexcept;

    Q24Series truncated(std::int64_t new_trunc) const;
    /// Same series stored from an earlier start (zero padded).
    Q24Series restarted(std::int64_t new_start) const;
    /// Multiply by q^(by/24).
    Q24Series shifted(std::int64_t by) const;

    friend bool operator==(const Q24Series &, const Q24Series &) = default;

private:
    std::uint32_t ell_;
    std::int64_t start_;
    std::vector<std::uint32_t> coeffs_;
};

Q24Series add(const Q24Series &f, const Q24Series &g);
Q24Series sub(const Q24Series &f, const Q24Series &g);
Q24Series scale(const Q24Series &f, std::uint32_t c);
Q24Series negate(const Q24Series &f);

/// Cauchy product; result trunc = min(f.trunc + g.start, g.trunc + f.start).
Q24Series mul(const Q24Series &f, const Q24Series &g);
/// 1/f stored through N = out_trunc. Requires a(start) invertible.
Q24Series inv(const Q24Series &f, std::int64_t out_trunc);
/// f^e through N = min(out_trunc, precision available from f).
Q24Series pow(const Q24Series &f, std::uint64_t e, std::int64_t out_trunc);

/// a(N) -> a(mN).
Q24Series u_op(const Q24Series &f, std::int64_t m);
/// q^(N/24) -> q^(mN/24).
Q24Series v_op(const Q24Series &f, std::int64_t m);
/// a(N) -> (N/Q) a(N) for a prime Q >= 5.
Q24Series twist(const Q24Series &f, std::int64_t q);
/// (q d/dq)^iterations: a(N) -> (N/24)^iterations a(N).
Q24Series theta_op(const Q24Series &f, std::uint64_t iterations);

/// First N in the common window where f and g differ.
std::optional<std::int64_t> first_difference(const Q24Series &f, const Q24Series &g);

inline Q24Series operator+(const Q24Series &f, const Q24Series &g) { return add(f, g); }
inline Q24Series operator-(const Q24Series &f, const Q24Series &g) { return sub(f, g); }
inline Q24Series operator*(const Q24Series &f, const Q24Series &g) { return mul(f, g); }

} // namespace thetacong
