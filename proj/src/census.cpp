#include "dcls/census.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <thread>

namespace dcls {

std::vector<int> power_indices(const Prime & p, PowerPolicy policy)
{
    if (policy == PowerPolicy::quadratic_only)
        return {2};
    return proper_power_divisors(p);
}

namespace {

    void collect(const TradeEngine & engine, const std::vector<int> & ms, Residue j_begin, Residue j_end, std::vector<ExceptionRecord> & out)
    {
        const auto & f = engine.tables();
        const Residue n = f.prime().value();
        for (Residue j = j_begin; j < j_end; ++j)
            for (Residue c = 2; c < n; ++c) {
                const Residue jc = f.mul(j, c);
                const Residue diagonal = f.sub(f.add(c, j), 1);
                for (Residue e = 1; e < n; ++e) {
                    if (e == j || e == c || e == diagonal || e == jc)
                        continue;
                    const NormalTriple t {j, c, e};
                    bool traded = false;
                    for (int m : ms)
                        if (engine.find_x(t, m)) {
                            traded = true;
                            break;
                        }
                    if (! traded)
                        out.push_back({n, t, ms});
                }
            }
    }

}

std::vector<ExceptionRecord> enumerate_exceptions(const Prime & p, PowerPolicy policy, unsigned jobs)
{
    const TradeEngine engine(p);
    const auto ms = power_indices(p, policy);
    const Residue n = p.value();

    std::vector<ExceptionRecord> out;
    if (jobs <= 1) {
        collect(engine, ms, 2, n, out);
        return out;
    }

    // Slices are contiguous j ranges, so concatenating them in order keeps
    // the (j, c, e) sort.
    const auto workers = static_cast<Residue>(std::min<std::int64_t>(jobs, n - 2));
    std::vector<std::vector<ExceptionRecord>> parts(static_cast<std::size_t>(workers));
    {
        std::vector<std::jthread> threads;
        for (Residue w = 0; w < workers; ++w) {
            const Residue begin = 2 + (n - 2) * w / workers;
            const Residue end = 2 + (n - 2) * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] { collect(engine, ms, begin, end, parts[w]); });
        }
    }
    for (auto & part : parts)
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    return out;
}

std::vector<CensusRow> exception_table(std::span<const std::int64_t> primes, PowerPolicy policy, unsigned jobs)
{
    std::vector<CensusRow> rows;
    for (auto value : primes) {
        const Prime p(value);
        rows.push_back({value, enumerate_exceptions(p, policy, jobs).size()});
    }
    return rows;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi)
{
    std::vector<std::int64_t> out;
    for (auto n = std::max<std::int64_t>(lo, 3); n <= hi; ++n)
        if (n % 2 == 1 && is_prime(n))
            out.push_back(n);
    return out;
}

std::string render_table(std::span<const CensusRow> rows)
{
    std::ostringstream head, body;
    head << "prime  ";
    body << "#excep ";
    std::size_t total = 0;
    for (const auto & r : rows) {
        auto a = std::to_string(r.p);
        auto b = std::to_string(r.exceptions);
        const auto w = std::max(a.size(), b.size());
        head << " | " << std::string(w - a.size(), ' ') << a;
        body << " | " << std::string(w - b.size(), ' ') << b;
        total += r.exceptions;
    }
    return head.str() + "\n" + body.str() + "\ntotal  " + std::to_string(total) + "\n";
}

std::uint64_t record_seed(std::uint64_t base, std::int64_t p, NormalTriple t) noexcept
{
    // splitmix64 finalizer over the packed record
    std::uint64_t z = base ^ (static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ULL);
    for (auto v : {t.j, t.c, t.e}) {
        z += 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(v);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
    }
    return z;
}

std::vector<Resolution> resolve_exceptions(const Prime & p, const SearchPolicy & policy, PowerPolicy power)
{
    std::vector<Resolution> out;
    for (auto & record : enumerate_exceptions(p, power)) {
        SearchPolicy local = policy;
        local.seed = record_seed(policy.seed, p.value(), record.triple);
        auto result = solve(SearchProblem::from_triple(p, record.triple), local);
        out.push_back({std::move(record), local.seed, std::move(result.row), result.stats});
    }
    return out;
}

namespace {

    std::vector<std::string_view> split_ws(std::string_view line)
    {
        std::vector<std::string_view> out;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            std::size_t start = i;
            while (i < line.size() && ! std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            if (i > start)
                out.push_back(line.substr(start, i - start));
        }
        return out;
    }

    Residue parse_int(std::string_view token, const char * what)
    {
        Residue value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw PreconditionError(std::string("bad ") + what + " '" + std::string(token) + "'");
        return value;
    }

    // Parses one non-blank line; throws PreconditionError without line info.
    CorpusEntry parse_line(std::string_view line, std::size_t number)
    {
        auto tokens = split_ws(line);
        if (tokens.size() != 4)
            throw PreconditionError("expected 4 fields 'c e j row', got " + std::to_string(tokens.size()));
        CorpusEntry entry;
        entry.line_number = number;
        entry.triple.c = parse_int(tokens[0], "c");
        entry.triple.e = parse_int(tokens[1], "e");
        entry.triple.j = parse_int(tokens[2], "j");
        entry.row = decode_row(tokens[3]);
        return entry;
    }

    template <typename F>
    void for_each_line(std::string_view text, F && f)
    {
        std::size_t number = 0, start = 0;
        while (start < text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string_view::npos)
                end = text.size();
            ++number;
            auto line = text.substr(start, end - start);
            if (! split_ws(line).empty())
                f(line, number);
            start = end + 1;
        }
    }

}

std::vector<CorpusEntry> parse_corpus(std::string_view text)
{
    std::vector<CorpusEntry> out;
    for_each_line(text, [&](std::string_view line, std::size_t number) {
        try {
            out.push_back(parse_line(line, number));
        }
        catch (const PreconditionError & e) {
            throw PreconditionError("line " + std::to_string(number) + ": " + e.what());
        }
    });
    return out;
}

CorpusReport verify_corpus(std::string_view text, const Prime & p)
{
    const auto exceptions = enumerate_exceptions(p);
    std::set<NormalTriple> expected;
    for (const auto & r : exceptions)
        expected.insert(r.triple);

    CorpusReport report;
    report.expected = expected.size();
    std::set<NormalTriple> seen;

    for_each_line(text, [&](std::string_view line, std::size_t number) {
        ++report.lines;
        CorpusEntry entry;
        try {
            entry = parse_line(line, number);
        }
        catch (const PreconditionError & e) {
            report.issues.push_back({number, std::string("parse error: ") + e.what()});
            return;
        }
        const auto & t = entry.triple;
        const auto n = p.value();
        if (static_cast<std::int64_t>(entry.row.size()) != n) {
            report.issues.push_back({number, "row length " + std::to_string(entry.row.size()) + " != " + std::to_string(n)});
            return;
        }
        if (auto verdict = verify_first_row(entry.row); ! verdict) {
            report.issues.push_back({number, verdict.reason});
            return;
        }
        if (t.c < 0 || t.c >= n) {
            report.issues.push_back({number, "column c out of range"});
            return;
        }
        if (entry.row[0] != 0 || entry.row[1] != t.j || entry.row[static_cast<std::size_t>(t.c)] != t.e) {
            report.issues.push_back({number, "row does not hold 0, j, e at columns 0, 1, c"});
            return;
        }
        if (! seen.insert(t).second) {
            report.issues.push_back({number, "duplicate triple"});
            return;
        }
        if (! expected.contains(t)) {
            report.unexpected.push_back(t);
            report.issues.push_back({number, "triple is not an exception"});
            return;
        }
        ++report.valid;
    });

    for (const auto & t : expected)
        if (! seen.contains(t))
            report.missing.push_back(t);
    return report;
}

} // namespace dcls
