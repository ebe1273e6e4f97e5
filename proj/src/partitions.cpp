#include "thetacong/partitions.hpp"

#include "thetacong/arith.hpp"
#include "thetacong/etaforms.hpp"
#include "thetacong/error.hpp"

#include <fmt/format.h>
#include <zlib.h>

#include <fstream>
#include <sstream>

namespace thetacong {

namespace fs = std::filesystem;

std::uint32_t PartitionTable::at(std::int64_t n) const
{
    if (n < 0)
        return 0;
    if (n > n_max())
        throw Error(ErrorKind::table_range, fmt::format("p_{}({}) is past the table end {}", r, n, n_max()), n);
    return values[static_cast<std::size_t>(n)];
}

PartitionTable ExactPartitionTable::reduce(std::uint32_t ell) const
{
    PartitionTable t{r, ell, {}};
    t.values.reserve(values.size());
    for (const auto &v : values)
        t.values.push_back(static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), ell)));
    return t;
}

ExactPartitionTable pr_exact(int r, std::int64_t n_max)
{
    if (r < 1 || n_max < 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("pr_exact needs r >= 1 and n_max >= 0 (r={}, n_max={})", r, n_max));
    ExactPartitionTable t{r, std::vector<mpz_class>(static_cast<std::size_t>(n_max + 1))};
    t.values[0] = 1;
    if (n_max == 0)
        return t;
    const SigmaTable sigma = sigma_sieve(n_max);
    mpz_class acc, q, rem;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        acc = 0;
        for (std::int64_t j = 0; j < n; ++j)
            acc += t.values[static_cast<std::size_t>(j)] * static_cast<unsigned long>(sigma[static_cast<std::size_t>(n - j)]);
        acc *= r;
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
        if (rem != 0)
            throw Error(ErrorKind::inconsistent_input, fmt::format("inexact division in the sigma recursion at n={}", n), n);
        t.values[static_cast<std::size_t>(n)] = q;
    }
    return t;
}

PartitionTable pr_mod(int r, std::uint32_t ell, std::int64_t n_max)
{
    if (r < 1 || n_max < 0)
        throw Error(ErrorKind::invalid_argument, fmt::format("pr_mod needs r >= 1 and n_max >= 0 (r={}, n_max={})", r, n_max));
    return PartitionTable{r, ell, euler_power(-r, ell, static_cast<std::size_t>(n_max + 1))};
}

std::optional<std::int64_t> genfunc_index(int r, std::uint32_t ell, int delta, std::int64_t N)
{
    const std::int64_t x = delta == 0 ? static_cast<std::int64_t>(ell) * N + r : N + r;
    if (x < 0 || x % 24 != 0)
        return std::nullopt;
    if (delta != 0 && kronecker(-static_cast<std::int64_t>(r) * N, ell) != delta)
        return std::nullopt;
    return x / 24;
}

std::int64_t genfunc_start(int r, std::uint32_t ell, int delta)
{
    return delta == 0 ? ceil_div(-r, ell) : -r;
}

std::int64_t genfunc_needed_n(int r, std::uint32_t ell, int delta, std::int64_t trunc)
{
    const std::int64_t x = delta == 0 ? static_cast<std::int64_t>(ell) * trunc + r : trunc + r;
    return floor_div(x, 24);
}

namespace {

void check_genfunc_args(int r, std::uint32_t ell, int delta, std::int64_t trunc)
{
    if (r < 1)
        throw Error(ErrorKind::invalid_argument, fmt::format("r must be positive, got {}", r));
    if (delta < -1 || delta > 1)
        throw Error(ErrorKind::invalid_argument, fmt::format("delta must be 0 or +-1, got {}", delta));
    if (r % static_cast<std::int64_t>(ell) == 0)
        throw Error(ErrorKind::excluded_case, fmt::format("{} divides r={}", ell, r));
    if (trunc < genfunc_start(r, ell, delta))
        throw Error(ErrorKind::invalid_argument, fmt::format("trunc {} is below the first index", trunc));
}

SeriesMeta genfunc_meta(int r, std::uint32_t ell, int delta)
{
    const std::int64_t l = ell;
    SeriesMeta m;
    m.weight_times_2 = delta == 0 ? r * (l * l - l - 1) : r * l * (l * l - l - 1);
    m.eta_exponent = static_cast<int>(mod_floor(delta == 0 ? -r * l : -r, 24));
    return m;
}

} // namespace

GenFunc build_f(const PartitionTable &table, int delta, std::int64_t trunc)
{
    const int r = table.r;
    const std::uint32_t ell = table.ell;
    check_genfunc_args(r, ell, delta, trunc);
    const std::int64_t start = genfunc_start(r, ell, delta);
    if (genfunc_needed_n(r, ell, delta, trunc) > table.n_max())
        throw Error(ErrorKind::table_range, fmt::format("f_{{{},{},{}}} through {} needs p_r up to {}", r, ell, delta,
                                                        trunc, genfunc_needed_n(r, ell, delta, trunc)));
    std::vector<std::uint32_t> c(static_cast<std::size_t>(trunc - start + 1), 0);
    for (std::int64_t N = start; N <= trunc; ++N)
        if (auto n = genfunc_index(r, ell, delta, N))
            c[static_cast<std::size_t>(N - start)] = table.at(*n);
    return GenFunc{r, ell, delta, Q24Series(ell, start, std::move(c)), genfunc_meta(r, ell, delta)};
}

GenFunc build_f(int r, std::uint32_t ell, int delta, std::int64_t trunc)
{
    check_genfunc_args(r, ell, delta, trunc);
    return build_f(pr_mod(r, ell, genfunc_needed_n(r, ell, delta, trunc)), delta, trunc);
}

Q24Series build_f0_via_lemma(int r, std::uint32_t ell, std::int64_t trunc)
{
    check_genfunc_args(r, ell, 0, trunc);
    const std::int64_t l = ell;
    const std::int64_t e24 = r * (l * l - 1); // 24 * exponent of Delta
    const std::int64_t rl = r * l;
    // U_ell costs a factor ell of precision; eta^(-r ell) shifts by r ell
    const Q24Series du = u_op(eta_pow(e24, ell, l * (trunc + rl)), l);
    const Q24Series inv_eta = eta_pow(-rl, ell, trunc - du.start());
    Q24Series out = mul(du, inv_eta);
    const std::int64_t start = genfunc_start(r, ell, 0);
    if (out.start() > start)
        out = out.restarted(start);
    return out.truncated(trunc);
}

// ---------------------------------------------------------------------------
// PRTABLE files

namespace {

std::string checksum_line(const std::string &body)
{
    const auto crc = crc32(0L, reinterpret_cast<const Bytef *>(body.data()), static_cast<uInt>(body.size()));
    return fmt::format("CHECKSUM crc32={:08x}\n", crc);
}

template <class Values>
std::string format_body(int r, std::uint32_t ell, const Values &values)
{
    std::string body = fmt::format("PRTABLE 1 r={} ell={} nmax={}\n", r, ell, values.size() - 1);
    for (const auto &v : values) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, mpz_class>)
            body += v.get_str();
        else
            body += std::to_string(v);
        body += '\n';
    }
    return body + checksum_line(body);
}

[[noreturn]] void malformed(const std::string &why) { throw Error(ErrorKind::io, "malformed PRTABLE: " + why); }

} // namespace

std::string format_prtable(const PartitionTable &table) { return format_body(table.r, table.ell, table.values); }

std::string format_prtable(const ExactPartitionTable &table) { return format_body(table.r, 0, table.values); }

PrTableFile parse_prtable(const std::string &text)
{
    const auto last = text.rfind("CHECKSUM ");
    if (last == std::string::npos || (last != 0 && text[last - 1] != '\n'))
        malformed("missing checksum line");
    const std::string body = text.substr(0, last);
    if (text.substr(last) != checksum_line(body))
        malformed("checksum mismatch");

    std::istringstream in(body);
    std::string header;
    std::getline(in, header);
    PrTableFile f;
    long long r = 0, ell = 0, n_max = 0;
    if (std::sscanf(header.c_str(), "PRTABLE 1 r=%lld ell=%lld nmax=%lld", &r, &ell, &n_max) != 3 || r < 1 || ell < 0 ||
        n_max < 0)
        malformed("bad header '" + header + "'");
    f.r = static_cast<int>(r);
    f.ell = static_cast<std::uint32_t>(ell);
    f.n_max = n_max;
    std::string line;
    while (std::getline(in, line))
        f.values.push_back(line);
    if (static_cast<std::int64_t>(f.values.size()) != n_max + 1)
        malformed(fmt::format("expected {} values, found {}", n_max + 1, f.values.size()));
    return f;
}

PartitionTable to_mod_table(const PrTableFile &file)
{
    if (file.ell == 0)
        malformed("exact table where a reduced one was expected");
    PartitionTable t{file.r, file.ell, {}};
    t.values.reserve(file.values.size());
    for (const auto &s : file.values) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception &) {
            malformed("non-numeric residue '" + s + "'");
        }
        if (pos != s.size() || v >= file.ell)
            malformed("residue '" + s + "' out of range");
        t.values.push_back(static_cast<std::uint32_t>(v));
    }
    return t;
}

ExactPartitionTable to_exact_table(const PrTableFile &file)
{
    if (file.ell != 0)
        malformed("reduced table where an exact one was expected");
    ExactPartitionTable t{file.r, {}};
    for (const auto &s : file.values) {
        mpz_class v;
        if (s.empty() || v.set_str(s, 10) != 0)
            malformed("bad integer '" + s + "'");
        t.values.push_back(v);
    }
    return t;
}

fs::path prtable_path(const fs::path &dir, int r, std::uint32_t ell)
{
    return dir / fmt::format("pr_r{}_ell{}.prtable", r, ell);
}

namespace {

std::optional<std::string> read_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

WriteOutcome write_prtable(const fs::path &path, const std::string &content, bool force)
{
    if (auto existing = read_file(path)) {
        if (*existing == content)
            return WriteOutcome::unchanged;
        bool valid = true;
        try {
            parse_prtable(*existing);
        } catch (const Error &) {
            valid = false;
        }
        if (!force)
            return valid ? WriteOutcome::unchanged : WriteOutcome::refused;
    }
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::io, "cannot write " + tmp.string());
        out << content;
        if (!out.flush())
            throw Error(ErrorKind::io, "short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec)
        throw Error(ErrorKind::io, "cannot move " + tmp.string() + " into place: " + ec.message());
    return WriteOutcome::written;
}

PartitionCache::PartitionCache(std::optional<fs::path> dir, bool build) : dir_(std::move(dir)), build_(build) {}

std::shared_ptr<const PartitionTable> PartitionCache::get(int r, std::uint32_t ell, std::int64_t n_max)
{
    const auto key = std::make_pair(r, ell);
    {
        std::lock_guard lock(mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end() && it->second->n_max() >= n_max)
            return it->second;
    }
    std::shared_ptr<const PartitionTable> table;
    if (dir_) {
        if (auto text = read_file(prtable_path(*dir_, r, ell))) {
            try {
                auto file = parse_prtable(*text);
                if (file.r == r && file.ell == ell && file.n_max >= n_max)
                    table = std::make_shared<const PartitionTable>(to_mod_table(file));
            } catch (const Error &) {
                // unusable file: fall through to building, never overwrite here
            }
        }
    }
    if (!table) {
        if (!build_)
            throw Error(ErrorKind::io, fmt::format("no cached table for r={} ell={} through n={}", r, ell, n_max));
        table = std::make_shared<const PartitionTable>(pr_mod(r, ell, n_max));
    }
    std::lock_guard lock(mutex_);
    auto &slot = memo_[key];
    if (!slot || slot->n_max() < table->n_max())
        slot = table;
    return slot;
}

} // namespace thetacong
