// dcls: complete, verify and census diagonally cyclic latin squares.
//
// Exit codes: 0 success or verified, 1 verification failure, 2 usage error.

#include "dcls/census.hpp"
#include "dcls/charsum.hpp"
#include "dcls/completer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace dcls;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;
constexpr int output_version = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CliConfig {
    std::string command;
    std::int64_t p = 0;
    std::string jce;
    std::string transversals;
    std::string row;
    std::string range;
    std::string corpus_path;
    std::uint64_t seed = SearchPolicy {}.seed;
    std::string format = "text";
    bool grid = false;
    bool list = false;
    bool m2_only = false;
    unsigned jobs = 1;
};

bool structured(const CliConfig & cfg)
{
    return cfg.format == "json";
}

void emit(const ordered_json & record)
{
    std::cout << record.dump() << '\n';
}

ordered_json record(const char * type)
{
    ordered_json j;
    j["version"] = output_version;
    j["type"] = type;
    return j;
}

void echo_config(const CliConfig & cfg)
{
    if (structured(cfg)) {
        auto j = record("config");
        j["command"] = cfg.command;
        if (cfg.p)
            j["p"] = cfg.p;
        if (! cfg.jce.empty())
            j["jce"] = cfg.jce;
        if (! cfg.transversals.empty())
            j["transversals"] = cfg.transversals;
        if (! cfg.row.empty())
            j["row"] = cfg.row;
        if (! cfg.range.empty())
            j["range"] = cfg.range;
        if (! cfg.corpus_path.empty())
            j["corpus"] = cfg.corpus_path;
        if (cfg.command == "complete")
            j["seed"] = cfg.seed;
        if (cfg.command == "exceptions") {
            j["m_policy"] = cfg.m2_only ? "m2_only" : "all_divisors";
            j["jobs"] = cfg.jobs;
        }
        emit(j);
        return;
    }
    std::cout << "# config: command=" << cfg.command;
    if (cfg.p)
        std::cout << " p=" << cfg.p;
    if (! cfg.jce.empty())
        std::cout << " jce=" << cfg.jce;
    if (! cfg.transversals.empty())
        std::cout << " transversals=" << cfg.transversals;
    if (! cfg.row.empty())
        std::cout << " row=" << cfg.row;
    if (! cfg.range.empty())
        std::cout << " range=" << cfg.range;
    if (! cfg.corpus_path.empty())
        std::cout << " corpus=" << cfg.corpus_path;
    if (cfg.command == "complete")
        std::cout << " seed=" << cfg.seed;
    if (cfg.command == "exceptions")
        std::cout << " m_policy=" << (cfg.m2_only ? "m2_only" : "all_divisors") << " jobs=" << cfg.jobs;
    std::cout << " format=" << cfg.format << '\n';
}

Prime parse_prime(std::int64_t value)
{
    try {
        return Prime(value);
    }
    catch (const PreconditionError & e) {
        throw UsageError(e.what());
    }
}

NormalTriple parse_jce(const std::string & text, const Prime & p)
{
    static const std::regex pattern(R"(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*)");
    std::smatch m;
    if (! std::regex_match(text, m, pattern))
        throw UsageError("--jce expects j,c,e");
    return {p.reduce(std::stoll(m[1])), p.reduce(std::stoll(m[2])), p.reduce(std::stoll(m[3]))};
}

TransversalTriple parse_transversals(const std::string & text, const Prime & p)
{
    static const std::regex pair(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
    static const std::regex whole(R"(\s*\(\s*-?\d+\s*,\s*-?\d+\s*\)\s*;\s*\(\s*-?\d+\s*,\s*-?\d+\s*\)\s*;\s*\(\s*-?\d+\s*,\s*-?\d+\s*\)\s*)");
    if (! std::regex_match(text, whole))
        throw UsageError("--transversals expects \"(c,s);(c',s');(c'',s'')\"");
    TransversalTriple t {p, {}};
    std::size_t k = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), pair); it != std::sregex_iterator(); ++it, ++k)
        t.offsets[k] = {p.reduce(std::stoll((*it)[1])), p.reduce(std::stoll((*it)[2]))};
    return t;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string & text)
{
    static const std::regex pattern(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch m;
    if (! std::regex_match(text, m, pattern))
        throw UsageError("--range expects lo..hi");
    return {std::stoll(m[1]), std::stoll(m[2])};
}

ordered_json triple_json(const NormalTriple & t)
{
    return {{"j", t.j}, {"c", t.c}, {"e", t.e}};
}

int run_complete(const CliConfig & cfg)
{
    const Prime p = parse_prime(cfg.p);
    if (cfg.jce.empty() == cfg.transversals.empty())
        throw UsageError("complete needs exactly one of --jce or --transversals");

    TransversalTriple t {p, {}};
    if (! cfg.jce.empty()) {
        auto nt = parse_jce(cfg.jce, p);
        t.offsets = {CyclicTransversalOffset {0, 0}, CyclicTransversalOffset {1, nt.j}, CyclicTransversalOffset {nt.c, nt.e}};
    }
    else {
        t = parse_transversals(cfg.transversals, p);
    }
    if (auto why = validate_triple(t))
        throw UsageError("invalid triple: " + *why);
    if (p.value() <= 7)
        throw UsageError("unsupported order: p must exceed 7");

    SearchPolicy policy;
    policy.seed = cfg.seed;

    std::optional<CompletionCertificate> result;
    try {
        result = complete(t, policy);
    }
    catch (const CompletionFailure & e) {
        if (structured(cfg)) {
            auto j = record("failure");
            j["reason"] = e.what();
            emit(j);
        }
        else {
            std::cout << "no completion found: " << e.what() << '\n';
        }
        return exit_failed;
    }

    const auto & cert = *result;
    const bool verified = verify_certificate(cert, t);
    const auto row = completed_row(cert);
    if (structured(cfg)) {
        std::cout << certificate_to_json(cert) << '\n';
        auto j = record("verdict");
        j["verified"] = verified;
        emit(j);
        if (cfg.grid) {
            auto g = record("square");
            auto square = expand(row);
            std::vector<std::vector<Residue>> rows;
            for (Residue i = 0; i < square.order(); ++i)
                rows.push_back(square.row(i));
            g["rows"] = rows;
            emit(g);
        }
    }
    else {
        const auto & nf = cert.normal_form;
        std::cout << "method: " << to_string(cert.method) << '\n'
                  << "ordering: " << cert.ordering[0] + 1 << ',' << cert.ordering[1] + 1 << ',' << cert.ordering[2] + 1 << '\n'
                  << "normal form: j=" << nf.triple.j << " c=" << nf.triple.c << " e=" << nf.triple.e
                  << " (column shift " << nf.map.column_shift << ", symbol shift " << nf.map.symbol_shift
                  << ", multiplier " << nf.map.multiplier << ")\n";
        if (cert.trade)
            std::cout << "params: m=" << cert.trade->m << " x=" << cert.trade->x << " alpha=" << cert.trade->alpha
                      << " gamma=" << cert.trade->gamma << '\n';
        if (cert.search)
            std::cout << "params: seed=" << cert.search->seed << " cutoff=" << cert.search->initial_cutoff(p.value())
                      << " growth=" << cert.search->restart_growth << " max_restarts=" << cert.search->max_restarts << '\n';
        std::cout << "normalized row: " << encode_row(cert.first_row) << '\n'
                  << "row: " << encode_row(row) << '\n'
                  << "verified: " << (verified ? "yes" : "no") << '\n';
        if (cfg.grid)
            std::cout << expand(row).render();
    }
    return verified ? exit_ok : exit_failed;
}

int run_verify(const CliConfig & cfg)
{
    std::vector<Residue> row;
    try {
        row = decode_row(cfg.row);
    }
    catch (const PreconditionError & e) {
        throw UsageError(e.what());
    }

    std::string reason;
    if (cfg.p && static_cast<std::int64_t>(row.size()) != cfg.p)
        reason = "row length " + std::to_string(row.size()) + " != p";
    else if (auto verdict = verify_first_row(row); ! verdict)
        reason = verdict.reason;
    else if (! cfg.jce.empty()) {
        const Prime p = parse_prime(static_cast<std::int64_t>(row.size()));
        auto t = parse_jce(cfg.jce, p);
        if (row[0] != 0 || row[1] != t.j || row[static_cast<std::size_t>(t.c)] != t.e)
            reason = "fixed cells 0, j, e not at columns 0, 1, c";
    }

    if (structured(cfg)) {
        auto j = record("verdict");
        j["pass"] = reason.empty();
        if (! reason.empty())
            j["reason"] = reason;
        emit(j);
    }
    else {
        std::cout << (reason.empty() ? "pass" : "fail: " + reason) << '\n';
    }
    return reason.empty() ? exit_ok : exit_failed;
}

int run_exceptions(const CliConfig & cfg)
{
    std::vector<std::int64_t> primes;
    if (cfg.p && ! cfg.range.empty())
        throw UsageError("exceptions takes --p or --range, not both");
    if (cfg.p)
        primes.push_back(parse_prime(cfg.p).value());
    else if (! cfg.range.empty()) {
        auto [lo, hi] = parse_range(cfg.range);
        primes = primes_in_range(lo, hi);
    }
    else
        throw UsageError("exceptions needs --p or --range");

    const auto policy = cfg.m2_only ? PowerPolicy::quadratic_only : PowerPolicy::all_divisors;
    std::vector<CensusRow> rows;
    for (auto value : primes) {
        const Prime p(value);
        auto records = enumerate_exceptions(p, policy, cfg.jobs);
        rows.push_back({value, records.size()});
        if (cfg.list)
            for (const auto & r : records) {
                if (structured(cfg)) {
                    auto j = record("exception");
                    j["p"] = value;
                    j["triple"] = triple_json(r.triple);
                    j["tried_ms"] = r.tried_ms;
                    emit(j);
                }
                else {
                    // corpus column order: c e j
                    std::cout << r.triple.c << ' ' << r.triple.e << ' ' << r.triple.j << '\n';
                }
            }
    }

    if (structured(cfg)) {
        std::size_t total = 0;
        for (const auto & r : rows) {
            auto j = record("count");
            j["p"] = r.p;
            j["exceptions"] = r.exceptions;
            emit(j);
            total += r.exceptions;
        }
        auto j = record("total");
        j["exceptions"] = total;
        emit(j);
    }
    else {
        std::cout << render_table(rows);
    }
    return exit_ok;
}

int run_charsum(const CliConfig & cfg)
{
    const Prime p = parse_prime(cfg.p);
    if (cfg.jce.empty())
        throw UsageError("charsum needs --jce");
    auto t = parse_jce(cfg.jce, p);
    if (auto why = admissibility_violation(p, t, false))
        throw UsageError("inadmissible triple: " + *why);
    auto report = compute_S(p, t);
    if (structured(cfg)) {
        auto j = record("charsum");
        j["p"] = report.p;
        j["triple"] = triple_json(report.triple);
        j["S"] = report.S;
        j["size_A"] = report.size_a;
        j["bound"] = report.bound;
        j["S_gt_32"] = report.exceeds_32;
        j["S_ge_bound"] = report.meets_weil_bound;
        j["S_le_16A_plus_32"] = report.within_a_bound;
        emit(j);
    }
    else {
        std::cout << render(report);
    }
    return exit_ok;
}

int run_trade(const CliConfig & cfg)
{
    const Prime p = parse_prime(cfg.p);
    if (cfg.jce.empty())
        throw UsageError("trade needs --jce");
    auto t = parse_jce(cfg.jce, p);
    if (auto why = admissibility_violation(p, t, false))
        throw UsageError("inadmissible triple: " + *why);

    const TradeEngine engine(p);
    ordered_json attempts = ordered_json::array();
    for (int m : proper_power_divisors(p)) {
        auto x = engine.find_x(t, m);
        if (structured(cfg))
            attempts.push_back({{"m", m}, {"x", x ? ordered_json(*x) : ordered_json(nullptr)}});
        else
            std::cout << "m=" << m << ": " << (x ? "x=" + std::to_string(*x) : std::string("no x")) << '\n';
    }
    auto done = engine.complete(t);
    if (structured(cfg)) {
        auto j = record("trade");
        j["p"] = p.value();
        j["triple"] = triple_json(t);
        j["attempts"] = attempts;
        if (done) {
            j["params"] = {{"m", done->params.m}, {"x", done->params.x}, {"alpha", done->params.alpha}, {"gamma", done->params.gamma}};
            j["row"] = encode_row(done->row);
        }
        else {
            j["params"] = nullptr;
        }
        emit(j);
    }
    else if (done) {
        std::cout << "params: m=" << done->params.m << " x=" << done->params.x << " alpha=" << done->params.alpha
                  << " gamma=" << done->params.gamma << '\n'
                  << "row: " << encode_row(done->row) << '\n';
    }
    else {
        std::cout << "no trade: (j, c, e) is an exception\n";
    }
    return done ? exit_ok : exit_failed;
}

int run_corpus(const CliConfig & cfg)
{
    std::ifstream in(cfg.corpus_path);
    if (! in)
        throw UsageError("cannot read corpus file " + cfg.corpus_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Prime p = parse_prime(cfg.p ? cfg.p : 11);
    auto report = verify_corpus(buffer.str(), p);

    if (structured(cfg)) {
        for (const auto & issue : report.issues) {
            auto j = record("issue");
            j["line"] = issue.line_number;
            j["reason"] = issue.reason;
            emit(j);
        }
        auto j = record("corpus");
        j["lines"] = report.lines;
        j["valid"] = report.valid;
        j["expected"] = report.expected;
        j["count_ok"] = report.count_ok();
        j["missing"] = report.missing.size();
        j["unexpected"] = report.unexpected.size();
        j["pass"] = report.ok();
        emit(j);
    }
    else {
        for (const auto & issue : report.issues)
            std::cout << "line " << issue.line_number << ": " << issue.reason << '\n';
        std::cout << report.valid << '/' << report.expected << " valid";
        if (! report.count_ok())
            std::cout << " (count mismatch: " << report.lines << " lines, expected " << report.expected << ')';
        std::cout << '\n';
        for (const auto & t : report.missing)
            std::cout << "missing exception: c=" << t.c << " e=" << t.e << " j=" << t.j << '\n';
        std::cout << (report.ok() ? "pass" : "fail") << '\n';
    }
    return report.ok() ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app {"Complete three cyclic transversals of prime order to a diagonally cyclic latin square"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_format = [&](CLI::App * sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto * complete_cmd = app.add_subcommand("complete", "Complete a triple and print its certificate");
    complete_cmd->add_option("--p", cfg.p, "Prime order (> 7)")->required();
    complete_cmd->add_option("--jce", cfg.jce, "Normalized triple j,c,e");
    complete_cmd->add_option("--transversals", cfg.transversals, "Raw offsets \"(c,s);(c',s');(c'',s'')\"");
    complete_cmd->add_option("--seed", cfg.seed, "Search seed");
    complete_cmd->add_flag("--grid", cfg.grid, "Also print the full square");
    add_format(complete_cmd);

    auto * verify_cmd = app.add_subcommand("verify", "Check a first row");
    verify_cmd->add_option("--p", cfg.p, "Expected order");
    verify_cmd->add_option("--row", cfg.row, "Row string (base-36, or comma-separated)")->required();
    verify_cmd->add_option("--jce", cfg.jce, "Expected 0, j, e at columns 0, 1, c");
    add_format(verify_cmd);

    auto * exceptions_cmd = app.add_subcommand("exceptions", "Count triples with no trade");
    exceptions_cmd->add_option("--p", cfg.p, "Single prime");
    exceptions_cmd->add_option("--range", cfg.range, "Prime range lo..hi");
    exceptions_cmd->add_flag("--list", cfg.list, "List the exception triples (c e j)");
    exceptions_cmd->add_flag("--m2-only", cfg.m2_only, "Only try m = 2");
    exceptions_cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(exceptions_cmd);

    auto * charsum_cmd = app.add_subcommand("charsum", "Character-sum diagnostics S and |A|");
    charsum_cmd->add_option("--p", cfg.p, "Prime")->required();
    charsum_cmd->add_option("--jce", cfg.jce, "Normalized triple j,c,e")->required();
    add_format(charsum_cmd);

    auto * trade_cmd = app.add_subcommand("trade", "Search trade parameters for a normalized triple");
    trade_cmd->add_option("--p", cfg.p, "Prime")->required();
    trade_cmd->add_option("--jce", cfg.jce, "Normalized triple j,c,e")->required();
    add_format(trade_cmd);

    auto * corpus_cmd = app.add_subcommand("corpus", "Verify a corpus file of 'c e j row' lines");
    corpus_cmd->add_option("path", cfg.corpus_path, "Corpus file")->required();
    corpus_cmd->add_option("--p", cfg.p, "Order of the corpus rows (default 11)");
    add_format(corpus_cmd);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        echo_config(cfg);
        if (cfg.command == "complete")
            return run_complete(cfg);
        if (cfg.command == "verify")
            return run_verify(cfg);
        if (cfg.command == "exceptions")
            return run_exceptions(cfg);
        if (cfg.command == "charsum")
            return run_charsum(cfg);
        if (cfg.command == "trade")
            return run_trade(cfg);
        return run_corpus(cfg);
    }
    catch (const UsageError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const PreconditionError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
