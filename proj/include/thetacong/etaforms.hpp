#pragma once

#include "thetacong/linalg.hpp"
#include "thetacong/qseries.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace thetacong {

// ---------------------------------------------------------------------------
// Canonical expansions

/// eta = sum_k (-1)^k q^((6k+1)^2/24), from the pentagonal number theorem.
Q24Series eta_series(std::uint32_t ell, std::int64_t trunc);

/// Coefficients of prod_{n>=1} (1 - q^n)^e mod ell for q^0..q^(len-1); any
/// integer e. Uses (1 - q^n)^ell = 1 - q^(ell n) over F_ell on the balanced
/// base-ell digits of e, so only sparse theta-type factors are ever touched.
Row euler_power(std::int64_t e, std::uint32_t ell, std::size_t len);

/// eta^e mod ell through grid index `trunc`; e may be negative. start = e.
Q24Series eta_pow(std::int64_t e, std::uint32_t ell, std::int64_t trunc);

/// Integer q-expansion, entry n is the coefficient of q^n.
using ExactQSeries = std::vector<mpz_class>;

ExactQSeries exact_mul(const ExactQSeries &a, const ExactQSeries &b, std::size_t len);

/// E4 = 1 + 240 sum sigma_3(n) q^n and E6 = 1 - 504 sum sigma_5(n) q^n through q^q_trunc.
std::pair<ExactQSeries, ExactQSeries> e4_e6_series(std::int64_t q_trunc);

/// Delta = q prod (1 - q^n)^24 through q^q_trunc.
ExactQSeries delta_exact(std::int64_t q_trunc);

/// Reduce an integer q-expansion onto the N = 24n grid.
Q24Series reduce_to_grid(const ExactQSeries &s, std::uint32_t ell);

/// a(24n) for 0 <= n < count; the series must live on the integer grid.
Row integer_grid_coeffs(const Q24Series &f, std::size_t count);

/// Place q-expansion coefficients onto the N = 24n grid.
Q24Series from_integer_grid(std::uint32_t ell, const Row &q_coeffs);

// ---------------------------------------------------------------------------
// Level one forms mod ell

/// dim M_k for even k >= 0.
int dim_modular_forms(int k);
/// dim S_k for even k >= 0.
int dim_cusp_forms(int k);

/// M_k(F_ell) through q^trunc. One monomial E4^a E6^b Delta^c per c in
/// 0..dim_M-1 is enough: its expansion starts at q^c with coefficient 1, so
/// the rows are unitriangular and the echelon pivots are 0..dim_M-1.
struct FormSpace {
    int weight = 0;
    std::uint32_t ell = 0;
    std::int64_t trunc = 0; // q-exponents 0..trunc are stored
    std::vector<std::array<int, 3>> monomials; // (a, b, c) for E4^a E6^b Delta^c
    std::vector<Row> basis_matrix;              // one row per monomial
    std::vector<Row> echelon;                   // reduced row echelon form of basis_matrix
    std::vector<std::size_t> pivots;
    int dim_M = 0;
    int dim_S = 0;
};

/// Requires even k >= 0 and q_trunc >= dim_M + 10.
FormSpace form_space(int k, std::uint32_t ell, std::int64_t q_trunc);

/// Miller basis f_1..f_d of S_k mod ell: a_i(j) = delta_ij for 1 <= i, j <= d.
/// Series are on the integer grid through N = 24 q_trunc.
std::vector<Q24Series> miller_basis(int k, std::uint32_t ell, std::int64_t q_trunc);

/// Serre filtration of f, known to lie in M_{k_start}(F_ell).
int filtration(const Q24Series &f, int k_start, std::uint32_t ell);

struct CuspMembership {
    bool member = false;
    int integral_weight = 0; // weight of f * eta^(24 - eta_exp)
    Row coordinates;         // Miller-basis coordinates when member
};

/// Tests f in S_{w/2}(nu_eta^n) by moving to S_{(w + 24 - n)/2} with eta^(24-n).
CuspMembership cusp_member(const Q24Series &f, int half_weight_times_2, int eta_exp, std::uint32_t ell);

// ---------------------------------------------------------------------------
// Theta-series shapes

enum class ThetaKind {
    eta,                // alpha * sum (12/n) q^(n^2/24)
    eta3,               // alpha * sum (-4/n) n q^(3n^2/24)
    eta_ell,            // alpha * eta^ell
    eta_ell2_minus_eta, // alpha * ((12/ell) eta^(ell^2) - eta)
    unclassified,       // theta support, coefficient pattern not one of the above
};

const char *to_string(ThetaKind kind) noexcept;

struct ThetaShape {
    std::int64_t b = 0;
    ThetaKind kind = ThetaKind::unclassified;
    std::uint32_t scalar = 0;

    friend bool operator==(const ThetaShape &, const ThetaShape &) = default;
};

std::string describe(const ThetaShape &shape);

/// Expansion of alpha * shape through `trunc` (eta_ell kinds use f's modulus).
Q24Series theta_shape_series(ThetaKind kind, std::uint32_t alpha, std::uint32_t ell, std::int64_t trunc);

/// Detects support on N = b n^2 and classifies the coefficient pattern.
/// Throws insufficient-data below 5 nonzero coefficients.
std::optional<ThetaShape> theta_detect(const Q24Series &f);

} // namespace thetacong
