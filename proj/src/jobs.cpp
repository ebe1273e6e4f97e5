#include "thetacong/jobs.hpp"

#include "thetacong/arith.hpp"
#include "thetacong/error.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace thetacong {

using nlohmann::json;

std::vector<int> parse_int_list(const std::string &text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string &s) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(s, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (s.empty() || pos != s.size())
            throw Error(ErrorKind::invalid_argument, "bad integer list '" + text + "'");
        return v;
    };
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(item.substr(0, dash)), hi = to_int(item.substr(dash + 1));
        if (hi < lo)
            throw Error(ErrorKind::invalid_argument, "empty range '" + item + "'");
        for (int v = lo; v <= hi; ++v)
            out.push_back(v);
    }
    if (out.empty())
        throw Error(ErrorKind::invalid_argument, "empty integer list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Runs body(i) for 0 <= i < n on a bounded pool; the first exception wins.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < count; ++i)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string opt_str(const std::optional<std::int64_t> &v) { return v ? std::to_string(*v) : std::string(); }

json opt_json(const std::optional<std::int64_t> &v) { return v ? json(*v) : json(nullptr); }

std::vector<std::uint32_t> ell_range(const JobConfig &c) { return primes_between(std::max(c.ell_min, 5u), c.ell_max); }

void check_format(const JobConfig &c)
{
    if (c.format != "csv" && c.format != "json")
        throw Error(ErrorKind::invalid_argument, "format must be csv or json, got '" + c.format + "'");
}

// ---------------------------------------------------------------------------
// verify report

struct CheckRow {
    std::string suite;
    std::int64_t r = 0;
    std::uint32_t ell = 0;
    std::string param;
    std::int64_t trunc = 0;
    std::string result; // pass | fail | holds | fails
    std::optional<std::int64_t> first_failure;
    std::string notes;
    bool failed = false;
};

std::string checks_output(const std::vector<CheckRow> &rows, const std::string &format)
{
    if (format == "json") {
        json arr = json::array();
        for (const auto &c : rows)
            arr.push_back({{"suite", c.suite},
                           {"r", c.r},
                           {"ell", c.ell},
                           {"param", c.param},
                           {"trunc", c.trunc},
                           {"result", c.result},
                           {"first_failure", opt_json(c.first_failure)},
                           {"notes", c.notes}});
        return arr.dump(2) + "\n";
    }
    std::string out = "suite,r,ell,param,trunc,result,first_failure,notes\n";
    for (const auto &c : rows)
        out += fmt::format("{},{},{},{},{},{},{},{}\n", c.suite, c.r, c.ell, csv_field(c.param), c.trunc, c.result,
                           opt_str(c.first_failure), csv_field(c.notes));
    return out;
}

CheckRow failed_row(CheckRow row, const Error &e)
{
    row.result = "fail";
    row.failed = true;
    row.first_failure = e.index();
    row.notes = e.what();
    return row;
}

bool known_ramanujan(int r, std::uint32_t ell) { return r == 1 && (ell == 5 || ell == 7 || ell == 11); }

std::vector<CheckRow> suite_ramanujan(const JobConfig &c)
{
    std::vector<std::pair<int, std::uint32_t>> tasks;
    for (int r : c.r_values)
        for (auto ell : ell_range(c))
            if (r > 0 && r % static_cast<int>(ell) != 0)
                tasks.emplace_back(r, ell);
    std::vector<CheckRow> rows(tasks.size());
    parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
        const auto [r, ell] = tasks[i];
        CheckRow row{"ramanujan", r, ell, "", 0, "", {}, "", false};
        row.param = fmt::format("n_probe={}", c.search.n_probe);
        const bool holds = ramanujan_check(r, ell, c.search.n_probe);
        row.result = holds ? "holds" : "fails";
        if (known_ramanujan(r, ell)) {
            row.notes = "classical congruence expected";
            row.failed = !holds;
        } else if (!holds) {
            row.notes = "no Ramanujan-type congruence (expected negative)";
        }
        rows[i] = row;
    });
    return rows;
}

std::vector<CheckRow> suite_lemma27(const JobConfig &c)
{
    std::vector<std::pair<int, std::uint32_t>> tasks;
    for (int r : c.r_values)
        for (auto ell : ell_range(c))
            if (r > 0 && r % 2 == 1 && r % static_cast<int>(ell) != 0)
                tasks.emplace_back(r, ell);
    std::vector<CheckRow> rows(tasks.size());
    parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
        const auto [r, ell] = tasks[i];
        CheckRow row{"lemma27", r, ell, "", c.trunc, "pass", {}, "", false};
        try {
            const auto direct = build_f(r, ell, 0, c.trunc).series;
            const auto lemma = build_f0_via_lemma(r, ell, c.trunc);
            if (auto n = first_difference(direct, lemma)) {
                row.result = "fail";
                row.failed = true;
                row.first_failure = *n;
            }
        } catch (const Error &e) {
            row = failed_row(row, e);
        }
        rows[i] = row;
    });
    return rows;
}

std::vector<CheckRow> suite_etafamily(const JobConfig &c)
{
    std::vector<FamilyPair> tasks;
    for (const auto &p : family_enumerate(c.ell_max, true))
        if (p.ell >= c.ell_min)
            tasks.push_back(p);
    std::vector<CheckRow> rows(tasks.size());
    parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
        const auto &p = tasks[i];
        CheckRow row{"etafamily", p.r, p.ell, fmt::format("case={} a={}", p.family_case, p.a), c.trunc, "pass", {}, "", false};
        try {
            const auto alpha = etafamily_verify(static_cast<int>(p.r), p.ell, p.family_case, c.trunc);
            row.notes = fmt::format("alpha={}{}", alpha, alpha == 0 ? " (Ramanujan-type)" : "");
            if (alpha != p.leading) {
                row.result = "fail";
                row.failed = true;
            }
        } catch (const Error &e) {
            row = failed_row(row, e);
        }
        rows[i] = row;
    });
    return rows;
}

std::vector<CheckRow> suite_abnormal(const JobConfig &c)
{
    const auto &tasks = abnormal_examples();
    std::vector<CheckRow> rows(tasks.size());
    parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
        const auto &p = tasks[i];
        CheckRow row{"abnormal", p.r, p.ell, fmt::format("case={}", p.abnormal_case), c.trunc, "pass", {}, "", false};
        try {
            std::vector<std::string> observed;
            const auto shape = abnormal_verify(p.r, p.ell, p.abnormal_case, c.trunc, &observed);
            row.notes = describe(shape);
            for (const auto &o : observed)
                row.notes += "; " + o;
            if (shape.scalar == 0) {
                row.result = "fail";
                row.failed = true;
                row.notes += " (zero multiple)";
            }
        } catch (const Error &e) {
            row = failed_row(row, e);
        }
        rows[i] = row;
    });
    return rows;
}

std::vector<CheckRow> suite_decomposition(const JobConfig &c)
{
    std::vector<std::pair<int, std::uint32_t>> tasks;
    for (int r : c.r_values)
        for (auto ell : ell_range(c))
            if (r > 0 && r % static_cast<int>(ell) != 0)
                tasks.emplace_back(r, ell);
    std::vector<CheckRow> rows(tasks.size());
    parallel_for(tasks.size(), c.threads, [&](std::size_t i) {
        const auto [r, ell] = tasks[i];
        CheckRow row{"decomposition", r, ell, "", c.trunc, "pass", {}, "", false};
        try {
            const std::int64_t T = c.trunc;
            const auto table = pr_mod(r, ell, genfunc_needed_n(r, ell, -1, T));
            const auto f0 = build_f(table, 0, floor_div(T, ell)).series;
            const auto sum = add(add(v_op(f0, ell), build_f(table, -1, T).series), build_f(table, 1, T).series);
            if (auto n = first_difference(sum, eta_pow(-r, ell, T))) {
                row.result = "fail";
                row.failed = true;
                row.first_failure = *n;
            }
        } catch (const Error &e) {
            row = failed_row(row, e);
        }
        rows[i] = row;
    });
    return rows;
}

} // namespace

const std::vector<AbnormalPair> &abnormal_examples()
{
    static const std::vector<AbnormalPair> pairs{
        {1, 23, 5},  {1, 23, 7},  {1, 47, 7},   {1, 47, 13},  {1, 71, 13}, {1, 71, 19}, {1, 95, 13},
        {1, 95, 17}, {1, 119, 11}, {1, 119, 13}, {2, 21, 5}, {2, 45, 7},  {3, 23, 5},
    };
    return pairs;
}

JobResult cmd_verify(const JobConfig &config)
{
    check_format(config);
    std::vector<CheckRow> rows;
    const auto &s = config.suite;
    if (s == "ramanujan")
        rows = suite_ramanujan(config);
    else if (s == "lemma27")
        rows = suite_lemma27(config);
    else if (s == "etafamily")
        rows = suite_etafamily(config);
    else if (s == "abnormal")
        rows = suite_abnormal(config);
    else if (s == "decomposition")
        rows = suite_decomposition(config);
    else
        throw Error(ErrorKind::invalid_argument, "unknown suite '" + s + "'");
    JobResult res;
    res.output = checks_output(rows, config.format);
    const auto failures = std::count_if(rows.begin(), rows.end(), [](const CheckRow &r) { return r.failed; });
    res.exit_code = failures ? exit_verification_failure : exit_ok;
    res.summary = fmt::format("verify {}: {} checks, {} failed", s, rows.size(), failures);
    return res;
}

// ---------------------------------------------------------------------------

JobResult cmd_pr_table(const JobConfig &config)
{
    if (!config.cache_dir)
        throw Error(ErrorKind::invalid_argument, "pr-table needs --cache-dir");
    if (config.n_max < 0)
        throw Error(ErrorKind::invalid_argument, "n-max must be non-negative");
    struct Task {
        int r;
        std::uint32_t ell; // 0 = exact
    };
    std::vector<Task> tasks;
    std::vector<std::string> skipped;
    for (int r : config.r_values) {
        if (r < 1) {
            skipped.push_back(fmt::format("r={} is not positive", r));
            continue;
        }
        if (config.exact) {
            tasks.push_back({r, 0});
            continue;
        }
        for (auto ell : ell_range(config)) {
            if (r % static_cast<int>(ell) == 0)
                skipped.push_back(fmt::format("ell={} divides r={}", ell, r));
            else
                tasks.push_back({r, ell});
        }
    }
    std::vector<std::string> content(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const auto &t = tasks[i];
        content[i] = t.ell == 0 ? format_prtable(pr_exact(t.r, config.n_max))
                                : format_prtable(pr_mod(t.r, t.ell, config.n_max));
    });
    // single writer
    JobResult res;
    std::string out = "r,ell,nmax,status,path\n";
    json arr = json::array();
    int refused = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto path = prtable_path(*config.cache_dir, tasks[i].r, tasks[i].ell);
        const auto outcome = write_prtable(path, content[i], config.force);
        const char *status = outcome == WriteOutcome::written ? "written"
                             : outcome == WriteOutcome::unchanged ? "kept"
                                                                  : "refused";
        refused += outcome == WriteOutcome::refused;
        out += fmt::format("{},{},{},{},{}\n", tasks[i].r, tasks[i].ell, config.n_max, status, csv_field(path.string()));
        arr.push_back({{"r", tasks[i].r}, {"ell", tasks[i].ell}, {"nmax", config.n_max}, {"status", status},
                       {"path", path.string()}});
    }
    check_format(config);
    res.output = config.format == "json" ? arr.dump(2) + "\n" : out;
    res.exit_code = refused ? exit_verification_failure : exit_ok;
    res.summary = fmt::format("pr-table: {} tables, {} refused (existing file fails its checksum; use --force)",
                              tasks.size(), refused);
    for (const auto &s : skipped)
        res.summary += "\n  skipped: " + s;
    return res;
}

// ---------------------------------------------------------------------------

std::string verdicts_csv(const std::vector<SearchVerdict> &verdicts)
{
    std::string out = "r,ell,m,delta,status,t_plus,t_minus,notes\n";
    for (const auto &v : verdicts) {
        std::string notes = v.notes;
        if (v.budget_limited)
            notes = "budget_limited" + (notes.empty() ? "" : "; " + notes);
        out += fmt::format("{},{},{},{},{},{},{},{}\n", v.r, v.ell, v.m, v.delta, to_string(v.status), opt_str(v.t_plus),
                           opt_str(v.t_minus), csv_field(notes));
    }
    return out;
}

std::string verdicts_json(const std::vector<SearchVerdict> &verdicts)
{
    json arr = json::array();
    for (const auto &v : verdicts)
        arr.push_back({{"r", v.r},
                       {"ell", v.ell},
                       {"m", v.m},
                       {"delta", v.delta},
                       {"status", to_string(v.status)},
                       {"t_plus", opt_json(v.t_plus)},
                       {"t_minus", opt_json(v.t_minus)},
                       {"budget_limited", v.budget_limited},
                       {"notes", v.notes}});
    return arr.dump(2) + "\n";
}

JobResult cmd_search(const JobConfig &config)
{
    check_format(config);
    struct Task {
        int r;
        std::uint32_t ell;
        int delta;
    };
    std::vector<Task> tasks;
    std::vector<std::string> skipped;
    for (int r : config.r_values) {
        if (r < 1 || r % 2 == 0) {
            skipped.push_back(fmt::format("r={} is not odd and positive", r));
            continue;
        }
        for (auto ell : ell_range(config)) {
            if (r % static_cast<int>(ell) == 0) {
                skipped.push_back(fmt::format("ell={} divides r={}", ell, r));
                continue;
            }
            for (int d : config.deltas)
                tasks.push_back({r, ell, d});
        }
    }
    PartitionCache cache(config.cache_dir, !config.no_build);
    const std::int64_t detect_trunc = std::max<std::int64_t>(config.trunc, 12000);
    std::vector<std::vector<SearchVerdict>> results(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const auto &t = tasks[i];
        auto verdicts = rule_out_search(t.r, t.ell, t.delta, config.m_min, config.m_max, config.search, &cache);
        const bool any_candidate = std::any_of(verdicts.begin(), verdicts.end(), [](const SearchVerdict &v) {
            return v.status == VerdictStatus::candidate;
        });
        if (any_candidate) {
            std::string theta;
            try {
                const auto table = cache.get(t.r, t.ell, genfunc_needed_n(t.r, t.ell, t.delta, detect_trunc));
                const auto f = build_f(*table, t.delta, detect_trunc);
                const auto shape = theta_detect(f.series);
                theta = shape ? "theta " + describe(*shape) : "theta none";
            } catch (const Error &e) {
                theta = std::string("theta ") + to_string(e.kind());
            }
            for (auto &v : verdicts)
                if (v.status == VerdictStatus::candidate)
                    v.notes += "; " + theta;
        }
        results[i] = std::move(verdicts);
    });

    std::vector<SearchVerdict> all;
    for (auto &v : results)
        all.insert(all.end(), v.begin(), v.end());
    std::stable_sort(all.begin(), all.end(), [](const SearchVerdict &a, const SearchVerdict &b) {
        return std::make_tuple(a.r, a.ell, -a.delta, a.m) < std::make_tuple(b.r, b.ell, -b.delta, b.m);
    });

    std::map<VerdictStatus, std::int64_t> counts;
    std::int64_t limited = 0;
    std::vector<std::string> candidate_triples;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto &v = all[i];
        ++counts[v.status];
        limited += v.budget_limited;
        if (v.status == VerdictStatus::candidate) {
            auto key = fmt::format("({},{},{})", v.r, v.ell, v.delta);
            if (candidate_triples.empty() || candidate_triples.back() != key)
                candidate_triples.push_back(key);
        }
    }
    JobResult res;
    res.output = config.format == "json" ? verdicts_json(all) : verdicts_csv(all);
    res.exit_code = limited ? exit_budget_limited : exit_ok;
    res.summary = fmt::format("search: {} verdicts; ruled_out={} candidate={} trivial_ramanujan={} budget_limited={}",
                              all.size(), counts[VerdictStatus::ruled_out], counts[VerdictStatus::candidate],
                              counts[VerdictStatus::trivial_ramanujan], limited);
    if (!candidate_triples.empty()) {
        res.summary += "\n  candidate triples (r,ell,delta):";
        for (const auto &k : candidate_triples)
            res.summary += " " + k;
    }
    for (const auto &s : skipped)
        res.summary += "\n  skipped: " + s;
    return res;
}

JobResult cmd_figure_pairs(const JobConfig &config)
{
    check_format(config);
    const auto pairs = figure_pairs(config.r_max, config.ell_max, config.include_case2);
    JobResult res;
    if (config.format == "json") {
        json arr = json::array();
        for (const auto &p : pairs)
            arr.push_back({{"case", p.family_case}, {"a", p.a}, {"r", p.r}, {"ell", p.ell}, {"leading", p.leading}});
        res.output = arr.dump(2) + "\n";
    } else {
        res.output = "case,a,r,ell,leading\n";
        for (const auto &p : pairs)
            res.output += fmt::format("{},{},{},{},{}\n", p.family_case, p.a, p.r, p.ell, p.leading);
    }
    std::vector<int> lines;
    for (const auto &p : pairs)
        if (std::find(lines.begin(), lines.end(), p.a) == lines.end())
            lines.push_back(p.a);
    res.summary = fmt::format("figure-pairs: {} pairs with r <= {}, ell <= {} on {} lines", pairs.size(),
                              config.r_max, config.ell_max, lines.size());
    return res;
}

JobResult run_job(const JobConfig &config)
{
    if (config.command == "pr-table")
        return cmd_pr_table(config);
    if (config.command == "verify")
        return cmd_verify(config);
    if (config.command == "search")
        return cmd_search(config);
    if (config.command == "figure-pairs")
        return cmd_figure_pairs(config);
    throw Error(ErrorKind::invalid_argument, "unknown command '" + config.command + "'");
}

} // namespace thetacong
