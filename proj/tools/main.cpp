#include "thetacong/error.hpp"
#include "thetacong/jobs.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

using namespace thetacong;

namespace {

struct Flags {
    std::string r;
    std::optional<std::uint32_t> ell_min, ell_max, m_min, m_max;
    std::optional<int> delta;
    std::optional<std::int64_t> trunc, n_max, t_budget, n_probe, min_evidence;
    std::string cache_dir, out, format = "csv";
    unsigned threads = 1;
    bool no_build = false, force = false, exact = false, case2 = false;
};

void add_common(CLI::App *cmd, Flags &f)
{
    cmd->add_option("--r", f.r, "r values: 23, 3,5,7 or 1-23");
    cmd->add_option("--ell-min", f.ell_min, "smallest prime ell");
    cmd->add_option("--ell-max", f.ell_max, "largest prime ell");
    cmd->add_option("--m-min", f.m_min, "smallest prime m");
    cmd->add_option("--m-max", f.m_max, "largest prime m");
    cmd->add_option("--delta", f.delta, "restrict to one class")->check(CLI::IsMember({0, -1}));
    cmd->add_option("--trunc", f.trunc, "series truncation (grid index N)");
    cmd->add_option("--n-max", f.n_max, "partition table length");
    cmd->add_option("--cache-dir", f.cache_dir, "PRTABLE cache directory");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    cmd->add_flag("--no-build", f.no_build, "fail instead of building missing tables");
    cmd->add_flag("--force", f.force, "overwrite cache files that fail their checksum");
}

std::vector<int> odd_range(int lo, int hi)
{
    std::vector<int> v;
    for (int r = lo; r <= hi; r += 2)
        v.push_back(r);
    return v;
}

JobConfig to_config(const std::string &command, const std::string &suite, const Flags &f)
{
    JobConfig c;
    c.command = command;
    c.suite = suite;
    if (command == "verify" && suite == "ramanujan")
        c.r_values = {1};
    else if (command == "search")
        c.r_values = odd_range(3, 23);
    else
        c.r_values = odd_range(1, 23);
    if (command == "verify" && (suite == "ramanujan" || suite == "lemma27" || suite == "decomposition"))
        c.ell_max = 13;
    if (command == "verify" && suite == "etafamily")
        c.ell_max = 50;
    if (command == "figure-pairs")
        c.ell_max = 1583;
    if (!f.r.empty()) {
        c.r_values = parse_int_list(f.r);
        c.r_max = *std::max_element(c.r_values.begin(), c.r_values.end());
    }
    if (f.ell_min)
        c.ell_min = *f.ell_min;
    if (f.ell_max)
        c.ell_max = *f.ell_max;
    if (f.m_min)
        c.m_min = *f.m_min;
    if (f.m_max)
        c.m_max = *f.m_max;
    if (f.delta)
        c.deltas = {*f.delta};
    if (f.trunc)
        c.trunc = *f.trunc;
    if (f.n_max)
        c.n_max = *f.n_max;
    if (f.t_budget)
        c.search.t_budget = *f.t_budget;
    if (f.n_probe)
        c.search.n_probe = *f.n_probe;
    if (f.min_evidence)
        c.search.min_evidence = *f.min_evidence;
    if (!f.cache_dir.empty())
        c.cache_dir = f.cache_dir;
    if (!f.out.empty())
        c.out = f.out;
    c.format = f.format;
    c.threads = f.threads;
    c.no_build = f.no_build;
    c.force = f.force;
    c.exact = f.exact;
    c.include_case2 = f.case2;
    return c;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Colored partition congruences mod ell: tables, verification suites and the theta-type search"};
    app.require_subcommand(1);
    Flags f;
    std::string suite;

    auto *pr = app.add_subcommand("pr-table", "write PRTABLE cache files for each (r, ell)");
    add_common(pr, f);
    pr->add_flag("--exact", f.exact, "write exact big-integer tables (ell=0)");

    auto *verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, f);
    verify->add_option("suite", suite, "ramanujan, lemma27, etafamily, abnormal or decomposition")
        ->required()
        ->check(CLI::IsMember({"ramanujan", "lemma27", "etafamily", "abnormal", "decomposition"}));
    verify->add_option("--n-probe", f.n_probe, "class positions probed for Ramanujan-type congruences");

    auto *search = app.add_subcommand("search", "rule out theta-type congruences over an (ell, m) grid");
    add_common(search, f);
    search->add_option("--t-budget", f.t_budget, "largest t scanned for witnesses");
    search->add_option("--n-probe", f.n_probe, "class positions probed for Ramanujan-type congruences");
    search->add_option("--min-evidence", f.min_evidence, "nonzero t needed before a candidate is trusted");

    auto *fig = app.add_subcommand("figure-pairs", "list the eta-family pairs (r, ell)");
    add_common(fig, f);
    fig->add_flag("--case2", f.case2, "include the eta^3 family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        const JobConfig config = to_config(command, suite, f);
        const JobResult res = run_job(config);
        if (config.out) {
            std::ofstream out(*config.out, std::ios::binary | std::ios::trunc);
            if (!out || !(out << res.output))
                throw Error(ErrorKind::io, "cannot write " + config.out->string());
        } else {
            std::cout << res.output;
        }
        std::cerr << res.summary << "\n";
        return res.exit_code;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::invalid_argument ? exit_usage : exit_verification_failure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_verification_failure;
    }
}
