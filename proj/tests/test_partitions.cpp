#include "oracles.hpp"

#include "thetacong/arith.hpp"
#include "thetacong/error.hpp"
#include "thetacong/etaforms.hpp"
#include "thetacong/partitions.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace thetacong;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name)
{
    auto dir = fs::temp_directory_path() / ("thetacong_test_" + name + "_" + std::to_string(std::random_device{}()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("pr_exact against brute-force colored partitions")
{
    for (int r : {1, 2, 3, 5, 17, 23}) {
        const auto want = oracle::colored_partitions(r, 40);
        const auto got = pr_exact(r, 40);
        for (int n = 0; n <= 40; ++n)
            REQUIRE(got.values[n] == want[n]);
    }
    CHECK(pr_exact(1, 4).values[4] == 5);
    CHECK(pr_exact(17, 1).values[1] == 17);
    CHECK(pr_exact(2, 2).values[2] == 5);
    CHECK(pr_exact(9, 0).values[0] == 1);
}

TEST_CASE("pr_mod agrees with the reduced exact table")
{
    for (int r : {1, 4, 11, 17, 24}) {
        const auto exact = pr_exact(r, 600);
        for (std::uint32_t ell : {5u, 7u, 11u, 13u})
            REQUIRE(pr_mod(r, ell, 600).values == exact.reduce(ell).values);
    }
    CHECK(pr_mod(17, 7, 5).values[1] == 3);
    CHECK(pr_mod(23, 7, 5).values[3] == 3);
    const auto p = pr_mod(1, 5, 500);
    for (int n = 4; n <= 500; n += 5)
        REQUIRE(p.values[n] == 0);
    CHECK(p.at(-3) == 0);
    CHECK_THROWS_AS(p.at(501), Error);
}

TEST_CASE("genfunc_index")
{
    // f_{23,7,0}: N=7 is p_23((7*7 + 23)/24) = p_23(3)
    CHECK(genfunc_index(23, 7, 0, 7) == 3);
    CHECK_FALSE(genfunc_index(23, 7, 0, 8).has_value());
    CHECK(genfunc_start(23, 7, 0) == -3);
    CHECK(genfunc_start(23, 7, -1) == -23);
    // delta=-1 keeps only (-rN / ell) = -1
    for (std::int64_t N = -21; N < 200; N += 24) {
        const auto idx = genfunc_index(21, 5, -1, N);
        const int chi = kronecker(-21 * N, 5);
        CHECK(idx.has_value() == (chi == -1));
    }
}

TEST_CASE("build_f examples")
{
    const auto f = build_f(23, 7, 0, 500);
    CHECK(f.series.order() == 7);
    CHECK(f.series[7] == 3);
    CHECK(f.meta.eta_exponent == 7);

    const auto g = build_f(21, 5, -1, 2000);
    CHECK_FALSE(first_difference(g.series, eta_pow(3, 5, 2000)).has_value());

    CHECK(build_f(1, 5, 0, 2000).series.is_zero());
    CHECK_THROWS_AS(build_f(14, 7, 0, 100), Error);
    try {
        build_f(14, 7, 0, 100);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::excluded_case);
    }
    const auto small = pr_mod(5, 7, 10);
    CHECK_THROWS_AS(build_f(small, 0, 500), Error);
}

TEST_CASE("f0 via the Delta construction")
{
    CHECK(build_f0_via_lemma(1, 5, 300).is_zero());
    const auto lhs = build_f0_via_lemma(17, 7, 1000);
    CHECK_FALSE(first_difference(lhs, scale(eta_series(7, 1000), 3)).has_value());
    CHECK_FALSE(first_difference(build_f0_via_lemma(5, 7, 500), build_f(5, 7, 0, 500).series).has_value());
}

TEST_CASE("decomposition into the three classes")
{
    for (int r : {1, 3, 9}) {
        for (std::uint32_t ell : {5u, 7u, 11u}) {
            if (r % ell == 0)
                continue;
            const std::int64_t T = 1200;
            const auto f0 = build_f(r, ell, 0, T).series;
            const auto fm = build_f(r, ell, -1, T).series;
            const auto fp = build_f(r, ell, 1, T).series;
            const auto sum = v_op(f0, ell).truncated(T) + fm + fp;
            CHECK_FALSE(first_difference(sum, eta_pow(-r, ell, T)).has_value());
        }
    }
}

TEST_CASE("PRTABLE round trip and tamper detection")
{
    const auto t = pr_mod(7, 11, 300);
    const auto text = format_prtable(t);
    CHECK(text.rfind("PRTABLE 1 r=7 ell=11 nmax=300\n", 0) == 0);
    CHECK(text.find("CHECKSUM crc32=") != std::string::npos);
    const auto back = to_mod_table(parse_prtable(text));
    CHECK(back.values == t.values);
    CHECK(back.r == 7);

    auto bad = text;
    bad[bad.find('\n') + 1] = bad[bad.find('\n') + 1] == '1' ? '2' : '1';
    CHECK_THROWS_AS(parse_prtable(bad), Error);
    CHECK_THROWS_AS(parse_prtable(text.substr(0, text.rfind("CHECKSUM"))), Error);

    const auto e = pr_exact(5, 80);
    const auto etext = format_prtable(e);
    CHECK(etext.rfind("PRTABLE 1 r=5 ell=0 nmax=80\n", 0) == 0);
    CHECK(to_exact_table(parse_prtable(etext)).values == e.values);
    CHECK_THROWS_AS(to_mod_table(parse_prtable(etext)), Error);
}

TEST_CASE("write-once file store")
{
    const auto dir = scratch_dir("store");
    const auto path = prtable_path(dir, 3, 7);
    CHECK(path.filename() == "pr_r3_ell7.prtable");
    const auto a = format_prtable(pr_mod(3, 7, 50));
    const auto b = format_prtable(pr_mod(3, 7, 60));
    CHECK(write_prtable(path, a, false) == WriteOutcome::written);
    CHECK(write_prtable(path, a, false) == WriteOutcome::unchanged);
    CHECK(write_prtable(path, b, false) == WriteOutcome::unchanged);
    CHECK(parse_prtable(a).n_max == 50);
    CHECK(write_prtable(path, b, true) == WriteOutcome::written);
    {
        std::ofstream out(path, std::ios::trunc);
        out << "garbage\n";
    }
    CHECK(write_prtable(path, a, false) == WriteOutcome::refused);
    CHECK(write_prtable(path, a, true) == WriteOutcome::written);
    fs::remove_all(dir);
}

TEST_CASE("PartitionCache")
{
    const auto dir = scratch_dir("cache");
    write_prtable(prtable_path(dir, 5, 13), format_prtable(pr_mod(5, 13, 100)), false);

    PartitionCache offline(dir, false);
    CHECK(offline.get(5, 13, 80)->n_max() == 100);
    CHECK_THROWS_AS(offline.get(5, 13, 200), Error);
    CHECK_THROWS_AS(offline.get(7, 13, 10), Error);

    PartitionCache cache(dir, true);
    const auto big = cache.get(5, 13, 400);
    CHECK(big->values == pr_mod(5, 13, 400).values);
    CHECK(cache.get(5, 13, 50) == big);
    // building never touches the directory
    CHECK(parse_prtable([&] {
              std::ifstream in(prtable_path(dir, 5, 13));
              return std::string(std::istreambuf_iterator<char>(in), {});
          }())
              .n_max == 100);
    fs::remove_all(dir);
}
