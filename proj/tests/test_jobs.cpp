#include "thetacong/error.hpp"
#include "thetacong/jobs.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <random>
#include <sstream>

using namespace thetacong;
namespace fs = std::filesystem;

TEST_CASE("parse_int_list")
{
    CHECK(parse_int_list("7") == std::vector<int>{7});
    CHECK(parse_int_list("3,5,7") == std::vector<int>{3, 5, 7});
    CHECK(parse_int_list("1-5,9") == std::vector<int>{1, 2, 3, 4, 5, 9});
    CHECK_THROWS_AS(parse_int_list("x"), Error);
    CHECK_THROWS_AS(parse_int_list("5-"), Error);
}

TEST_CASE("search job output is deterministic across thread counts")
{
    JobConfig c;
    c.command = "search";
    c.r_values = {3, 5, 17};
    c.ell_min = 5;
    c.ell_max = 13;
    c.m_min = 5;
    c.m_max = 40;
    c.threads = 1;
    const auto one = run_job(c);
    c.threads = 3;
    const auto three = run_job(c);
    CHECK(one.output == three.output);
    CHECK(one.exit_code == exit_ok);
    std::istringstream in(one.output);
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,ell,m,delta,status,t_plus,t_minus,notes");

    c.format = "json";
    const auto js = nlohmann::json::parse(run_job(c).output);
    REQUIRE(js.is_array());
    CHECK(js[0].contains("status"));
    CHECK(js[0].contains("t_plus"));
}

TEST_CASE("pr-table job writes once")
{
    const auto dir = fs::temp_directory_path() / ("thetacong_job_" + std::to_string(std::random_device{}()));
    JobConfig c;
    c.command = "pr-table";
    c.r_values = {3};
    c.ell_min = 5;
    c.ell_max = 7;
    c.n_max = 200;
    c.cache_dir = dir;
    CHECK(run_job(c).exit_code == exit_ok);
    CHECK(fs::exists(dir / "pr_r3_ell5.prtable"));
    CHECK(fs::exists(dir / "pr_r3_ell7.prtable"));
    const auto before = fs::last_write_time(dir / "pr_r3_ell5.prtable");
    CHECK(run_job(c).exit_code == exit_ok);
    CHECK(fs::last_write_time(dir / "pr_r3_ell5.prtable") == before);
    fs::remove_all(dir);
}

TEST_CASE("verify jobs")
{
    JobConfig c;
    c.command = "verify";
    c.suite = "ramanujan";
    c.r_values = {1};
    c.ell_max = 13;
    CHECK(run_job(c).exit_code == exit_ok);
    c.suite = "nonsense";
    CHECK_THROWS_AS(run_job(c), Error);
}
