#include "oracles.hpp"

#include "thetacong/error.hpp"
#include "thetacong/etaforms.hpp"

#include <doctest.h>

using namespace thetacong;

TEST_CASE("eta_series matches the theta sum and the naive product")
{
    for (std::uint32_t ell : {5u, 7u, 13u}) {
        const auto e = eta_series(ell, 24 * 300);
        CHECK(e[1] == 1);
        CHECK(e[25] == ell - 1);
        CHECK(e[2] == 0);
        const auto terms = oracle::eta_sum(24 * 300);
        for (std::int64_t N = 0; N <= 24 * 300; ++N) {
            const auto it = terms.find(N);
            REQUIRE(e[N] == (it == terms.end() ? 0 : oracle::mod(it->second, ell)));
        }
        const auto prod = oracle::euler_product(1, ell, 300);
        for (std::int64_t n = 0; n < 300; ++n)
            REQUIRE(e[24 * n + 1] == prod[n]);
    }
}

TEST_CASE("euler_power against repeated naive products")
{
    for (std::uint32_t ell : {5u, 7u, 11u}) {
        for (int e : {0, 1, 2, 3, 4, 6, 10, 24, 29}) {
            const auto got = euler_power(e, ell, 200);
            REQUIRE(got == oracle::euler_product(e, ell, 200));
        }
        // negative exponents: multiply back to one
        for (int e : {1, 5, 13, 23}) {
            const auto neg = euler_power(-e, ell, 200);
            const auto pos = oracle::euler_product(e, ell, 200);
            for (std::size_t n = 0; n < 200; ++n) {
                std::uint64_t s = 0;
                for (std::size_t j = 0; j <= n; ++j)
                    s += std::uint64_t(neg[j]) * pos[n - j];
                REQUIRE(s % ell == (n == 0 ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("eta_pow")
{
    const auto d = eta_pow(24, 11, 24 * 5);
    CHECK(d.start() == 24);
    CHECK(d[24] == 1);
    CHECK(d[48] == oracle::mod(-24, 11));
    const auto p = eta_pow(-1, 5, 24 * 10);
    CHECK(p.start() == -1);
    CHECK(p[24 * 4 - 1] == 0);
    CHECK(p[24 * 3 - 1] == 3);
    CHECK_THROWS_AS(eta_pow(30, 5, 10), Error);
}

TEST_CASE("Delta, E4, E6 exact")
{
    const auto d = delta_exact(500);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[5] == 4830);
    auto [e4, e6] = e4_e6_series(500);
    CHECK(e4[1] == 240);
    CHECK(e6[1] == -504);
    const auto lhs = oracle::times(oracle::times(e4, e4), e4);
    const auto rhs = oracle::times(e6, e6);
    for (std::size_t n = 0; n <= 500; ++n)
        REQUIRE(lhs[n] - rhs[n] == 1728 * d[n]);
}

TEST_CASE("dimension formula")
{
    CHECK(dim_modular_forms(0) == 1);
    CHECK(dim_modular_forms(2) == 0);
    CHECK(dim_modular_forms(12) == 2);
    CHECK(dim_cusp_forms(12) == 1);
    CHECK(dim_cusp_forms(4) == 0);
    CHECK(dim_cusp_forms(0) == 0);
}

TEST_CASE("form_space rank equals the span of all E4^a E6^b")
{
    auto [e4, e6] = e4_e6_series(40);
    for (std::uint32_t ell : {5u, 7u, 13u}) {
        for (int k = 0; k <= 60; k += 2) {
            std::vector<std::vector<std::uint32_t>> rows;
            for (int a = 0; 4 * a <= k; ++a) {
                if ((k - 4 * a) % 6)
                    continue;
                const int b = (k - 4 * a) / 6;
                std::vector<mpz_class> m(41, 0);
                m[0] = 1;
                for (int i = 0; i < a; ++i)
                    m = oracle::times(m, e4);
                for (int i = 0; i < b; ++i)
                    m = oracle::times(m, e6);
                std::vector<std::uint32_t> row;
                for (auto &c : m) {
                    mpz_class r = c % ell;
                    if (r < 0)
                        r += ell;
                    row.push_back(static_cast<std::uint32_t>(r.get_ui()));
                }
                rows.push_back(row);
            }
            const auto fs = form_space(k, ell, 40);
            INFO("k=" << k << " ell=" << ell);
            REQUIRE(static_cast<std::size_t>(fs.dim_M) == oracle::rank(rows, ell));
            REQUIRE(fs.dim_S == std::max(fs.dim_M - 1, 0));
            REQUIRE(fs.echelon.size() == static_cast<std::size_t>(fs.dim_M));
        }
    }
    CHECK_THROWS_AS(form_space(13, 5, 40), Error);
    CHECK_THROWS_AS(form_space(-2, 5, 40), Error);
    CHECK_THROWS_AS(form_space(120, 5, 12), Error);
}

TEST_CASE("miller_basis")
{
    const auto b12 = miller_basis(12, 7, 40);
    REQUIRE(b12.size() == 1);
    CHECK(b12[0][24] == 1);
    CHECK(b12[0][48] == oracle::mod(-24, 7));

    const auto b16 = miller_basis(16, 1009, 40);
    REQUIRE(b16.size() == 1);
    CHECK(b16[0][48] == 216);

    for (std::uint32_t ell : {5u, 11u}) {
        for (int k : {24, 36, 48, 60}) {
            const auto b = miller_basis(k, ell, 30);
            REQUIRE(b.size() == static_cast<std::size_t>(dim_cusp_forms(k)));
            for (std::size_t i = 0; i < b.size(); ++i) {
                CHECK(b[i][0] == 0);
                for (std::size_t j = 0; j < b.size(); ++j)
                    REQUIRE(b[i][24 * static_cast<std::int64_t>(j + 1)] == (i == j ? 1u : 0u));
            }
        }
    }
    CHECK_THROWS_AS(miller_basis(10, 5, 40), Error);
}

TEST_CASE("filtration")
{
    const auto d5 = reduce_to_grid(delta_exact(20), 5);
    CHECK(filtration(d5, 12, 5) == 12);
    CHECK(filtration(d5, 20, 5) == 12);
    const auto one = from_integer_grid(7, Row(30, 0)) + Q24Series::monomial(7, 0, 24 * 29);
    CHECK(filtration(one, 6, 7) == 0);
    // Delta^((ell^2-1)/24) | U_ell for ell = 5 sits in weight <= ell + (12 - 1)/ell
    const auto du = u_op(eta_pow(24, 5, 24 * 5 * 20), 5);
    CHECK(filtration(du, 12, 5) <= 5 + 11 / 5);
    CHECK_THROWS_AS(filtration(d5, 4, 5), Error);
}

TEST_CASE("cusp_member")
{
    const std::uint32_t ell = 11;
    const auto e = eta_series(ell, 24 * 30);
    const auto m1 = cusp_member(e, 1, 1, ell);
    CHECK(m1.member);
    CHECK(m1.integral_weight == 12);
    CHECK(m1.coordinates == Row{1});
    const auto m3 = cusp_member(eta_pow(3, ell, 24 * 30), 3, 3, ell);
    CHECK(m3.member);
    CHECK(m3.coordinates == Row{1});
    CHECK_FALSE(cusp_member(eta_pow(5, ell, 24 * 30), 1, 1, ell).member);
    // E4 eta times eta^23 is E4 Delta, a cusp form; a stray q^(49/24) is not
    const auto e4 = reduce_to_grid(e4_e6_series(40).first, ell);
    CHECK(cusp_member(mul(e4, e), 9, 1, ell).member);
    CHECK_FALSE(cusp_member(e + Q24Series::monomial(ell, 49, e.trunc()), 1, 1, ell).member);
}

TEST_CASE("theta_detect")
{
    const auto e3 = eta_pow(3, 13, 3000);
    const auto s3 = theta_detect(e3);
    REQUIRE(s3);
    CHECK(s3->b == 3);
    CHECK(s3->kind == ThetaKind::eta3);
    CHECK(s3->scalar == 1);

    const auto e7 = scale(eta_pow(7, 7, 3000), 3);
    const auto s7 = theta_detect(e7);
    REQUIRE(s7);
    CHECK(s7->b == 7);
    CHECK(s7->kind == ThetaKind::eta_ell);
    CHECK(s7->scalar == 3);

    const auto e = scale(eta_series(5, 3000), 2);
    const auto s1 = theta_detect(e);
    REQUIRE(s1);
    CHECK(s1->kind == ThetaKind::eta);
    CHECK(s1->scalar == 2);

    const auto mixed = eta_series(7, 3000) + eta_pow(24, 7, 3000);
    CHECK_FALSE(theta_detect(mixed).has_value());
    CHECK_THROWS_AS(theta_detect(Q24Series::monomial(7, 1, 100)), Error);

    for (std::uint32_t ell : {5u, 7u}) {
        const auto shape = theta_shape_series(ThetaKind::eta_ell2_minus_eta, 2, ell, 4000);
        const auto got = theta_detect(shape);
        REQUIRE(got);
        CHECK(got->kind == ThetaKind::eta_ell2_minus_eta);
        CHECK(got->scalar == 2);
    }
}
