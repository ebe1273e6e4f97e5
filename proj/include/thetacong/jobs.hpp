#pragma once

#include "thetacong/congruence.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace thetacong {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failure = 1,
    exit_usage = 2,
    exit_budget_limited = 3,
};

struct JobConfig {
    std::string command;
    std::string suite;
    std::vector<int> r_values;
    std::uint32_t ell_min = 5, ell_max = 200;
    std::uint32_t m_min = 5, m_max = 200;
    std::vector<int> deltas{0, -1};
    std::int64_t trunc = 2000;
    std::int64_t n_max = 10000;
    std::optional<std::filesystem::path> cache_dir;
    std::optional<std::filesystem::path> out;
    std::string format = "csv";
    unsigned threads = 1;
    bool no_build = false;
    bool force = false;
    bool exact = false;         // pr-table: write exact tables (ell=0)
    std::int64_t r_max = 501;   // figure-pairs
    bool include_case2 = false; // figure-pairs
    SearchOptions search;
};

struct JobResult {
    int exit_code = exit_ok;
    std::string output;  // CSV or JSON body
    std::string summary; // human-readable, for stderr
};

/// Parses "7", "3,5,7", "3-23" and combinations like "1-9,15". Throws
/// invalid-argument on malformed text.
std::vector<int> parse_int_list(const std::string &text);

JobResult cmd_pr_table(const JobConfig &config);
JobResult cmd_verify(const JobConfig &config);
JobResult cmd_search(const JobConfig &config);
JobResult cmd_figure_pairs(const JobConfig &config);

/// Dispatch on config.command.
JobResult run_job(const JobConfig &config);

/// Rows of the verdict table in the CLI's CSV layout (header included).
std::string verdicts_csv(const std::vector<SearchVerdict> &verdicts);
std::string verdicts_json(const std::vector<SearchVerdict> &verdicts);

/// Known abnormal pairs checked by the abnormal suite: (case, r, ell).
struct AbnormalPair {
    int abnormal_case;
    int r;
    std::uint32_t ell;
};
const std::vector<AbnormalPair> &abnormal_examples();

} // namespace thetacong
