#include "doctest.h"

#include "dcls/census.hpp"
#include "dcls/completer.hpp"

#include <fstream>
#include <set>
#include <sstream>

using namespace dcls;

namespace {

std::string read_corpus()
{
    std::ifstream in(DCLS_DATA_DIR "/corpus_p11.txt");
    REQUIRE(in);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}

TEST_CASE("enumerate_exceptions")
{
    auto p11 = enumerate_exceptions(Prime(11));
    CHECK(p11.size() == 180);
    CHECK(enumerate_exceptions(Prime(41)).size() == 12);
    CHECK(enumerate_exceptions(Prime(61)).empty());

    CHECK(std::is_sorted(p11.begin(), p11.end(), [](const auto & a, const auto & b) { return a.triple < b.triple; }));
    for (const auto & r : p11) {
        CHECK(r.p == 11);
        CHECK(r.tried_ms == std::vector<int> {2, 5, 10});
        CHECK(is_admissible(Prime(11), r.triple));
    }

    // Parallel slicing changes nothing.
    auto threaded = enumerate_exceptions(Prime(23), PowerPolicy::all_divisors, 4);
    auto serial = enumerate_exceptions(Prime(23));
    REQUIRE(threaded.size() == serial.size());
    for (std::size_t k = 0; k < serial.size(); ++k)
        CHECK(threaded[k].triple == serial[k].triple);

    // Exception iff no trade, for every admissible triple.
    for (std::int64_t n : {11, 13}) {
        const Prime p(n);
        std::set<NormalTriple> exceptions;
        for (const auto & r : enumerate_exceptions(p))
            exceptions.insert(r.triple);
        for (Residue j = 0; j < n; ++j)
            for (Residue c = 0; c < n; ++c)
                for (Residue e = 0; e < n; ++e)
                    if (is_admissible(p, {j, c, e}))
                        CHECK(exceptions.contains({j, c, e}) == ! complete_via_trade(p, {j, c, e}));
    }
}

TEST_CASE("exception_table")
{
    const std::vector<std::int64_t> primes {11, 13, 17, 19, 23, 29, 31, 41, 47, 59};
    auto rows = exception_table(primes);
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    for (const auto & r : rows) {
        counts.push_back(r.exceptions);
        total += r.exceptions;
    }
    CHECK(counts == std::vector<std::size_t> {180, 54, 306, 84, 672, 252, 66, 12, 300, 150});
    CHECK(total == 2076);

    // m = 2 alone leaves more exceptions wherever p - 1 has other divisors.
    auto m2 = exception_table(primes, PowerPolicy::quadratic_only);
    std::vector<std::size_t> m2_counts;
    for (const auto & r : m2)
        m2_counts.push_back(r.exceptions);
    CHECK(m2_counts == std::vector<std::size_t> {180, 258, 438, 552, 672, 636, 678, 414, 300, 150});

    for (const auto & r : exception_table(primes_in_range(61, 101)))
        CHECK(r.exceptions == 0);

    auto text = render_table(rows);
    CHECK(text.find("prime") == 0);
    CHECK(text.find("total  2076") != std::string::npos);
    CHECK(primes_in_range(11, 31) == std::vector<std::int64_t> {11, 13, 17, 19, 23, 29, 31});
}

TEST_CASE("resolve_exceptions")
{
    for (std::int64_t n : {11, 13, 17}) {
        const Prime p(n);
        auto resolved = resolve_exceptions(p, {});
        CHECK(resolved.size() == enumerate_exceptions(p).size());
        for (const auto & r : resolved) {
            REQUIRE(r.row);
            const auto & t = r.record.triple;
            CHECK((*r.row)[0] == 0);
            CHECK((*r.row)[1] == t.j);
            CHECK((*r.row)[t.c] == t.e);
            CHECK(record_seed(SearchPolicy {}.seed, n, t) == r.seed);
        }
    }
}

TEST_CASE("corpus parsing")
{
    auto entries = parse_corpus("2 1 4 04175a29368\n\n10 9 5 0536a184279\n");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].triple == NormalTriple {4, 2, 1});
    CHECK(entries[0].row == std::vector<Residue> {0, 4, 1, 7, 5, 10, 2, 9, 3, 6, 8});
    CHECK(entries[1].line_number == 3);
    CHECK(entries[1].row[10] == 9);
    CHECK(entries[1].row[1] == 5);
    CHECK_THROWS_WITH_AS((void) parse_corpus("2 1 4 04175a29368\n2 1 x 0\n"), doctest::Contains("line 2"), PreconditionError);
    CHECK_THROWS_AS((void) parse_corpus("2 1 4\n"), PreconditionError);
}

TEST_CASE("verify_corpus")
{
    const auto text = read_corpus();
    const Prime p(11);
    auto report = verify_corpus(text, p);
    CHECK(report.ok());
    CHECK(report.lines == 180);
    CHECK(report.valid == 180);
    CHECK(report.missing.empty());

    // Truncated file.
    auto cut = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
    auto truncated = verify_corpus(cut, p);
    CHECK_FALSE(truncated.count_ok());
    CHECK(truncated.lines == 179);
    CHECK(truncated.missing.size() == 1);
    CHECK_FALSE(truncated.ok());

    // One flipped digit in the first row: "04175a29368" -> "04175a29369".
    auto flipped = text;
    flipped.replace(flipped.find("04175a29368"), 11, "04175a29369");
    auto bad = verify_corpus(flipped, p);
    CHECK(bad.valid == 179);
    REQUIRE(bad.issues.size() == 1);
    CHECK(bad.issues[0].line_number == 1);
    CHECK_FALSE(bad.ok());

    // Corrupted digit reported with its reason.
    auto corrupt = text;
    corrupt.replace(corrupt.find("04175a29368"), 11, "04175A29368");
    auto parse_fail = verify_corpus(corrupt, p);
    REQUIRE(parse_fail.issues.size() == 1);
    CHECK(parse_fail.issues[0].reason.find("parse error") == 0);

    // Right row, wrong fixed cells.
    auto moved = verify_corpus("2 1 8 04175a29368\n", p);
    REQUIRE(moved.issues.size() == 1);
    CHECK(moved.issues[0].reason.find("columns 0, 1, c") != std::string::npos);
}
