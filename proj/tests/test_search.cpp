#include <cmath>
#include <random>
#include <set>

#include <doctest.h>

#include "hyp/certify.hpp"
#include "hyp/search.hpp"

using namespace hyp;

namespace {

const double kDesk = 2.0 * std::acosh(11.0) + 0.1;

const SearchResult& desk() {
    static const SearchResult r = [] {
        SearchConfig c;
        c.Lmax = kDesk;
        return enumerate(c);
    }();
    return r;
}

std::set<std::string> words(const SearchResult& r) {
    std::set<std::string> s;
    for (const auto& x : r.records) s.insert(x.word.str());
    return s;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("trace budget") {
    CHECK(trace_budget(2 * std::acosh(3.0)) == doctest::Approx(6.0));
    SearchConfig c;
    c.Lmax = 1.0;
    CHECK_THROWS_AS(enumerate(c), DomainError);
}

TEST_CASE("the shortest classes are the three figure-eights") {
    SearchConfig c;
    c.Lmax = 2 * std::acosh(3.0) + 1e-6;
    SearchResult r = enumerate(c);
    CHECK(words(r) == std::set<std::string>{"ab", "aaB", "aBB"});
    for (const auto& x : r.records) {
        CHECK(std::llabs(*x.trace) == 6);
        CHECK(x.k == 1);
    }
    MinLengthTable t = min_length_table(r, 1);
    CHECK(t.rows[0].word == "ab");
}

TEST_CASE("desk-scale corpus contains the corkscrews and nothing below the floor") {
    const SearchResult& r = desk();
    REQUIRE(r.complete);
    std::set<std::string> w = words(r);
    for (long k = 1; k <= 5; ++k) CHECK(w.count(CyclicWord::parse("ab^" + std::to_string(k)).str()) == 1);
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const GeodesicRecord& x = r.records[i];
        REQUIRE(x.trace);
        CHECK(std::llabs(*x.trace) >= 3);
        CHECK(std::llabs(*x.trace) <= r.trace_budget);
        CHECK(x.length == doctest::Approx(2 * std::acosh(std::llabs(*x.trace) / 2.0)).epsilon(1e-14));
        CHECK(x.length >= hempel_floor() - 1e-12);
        if (i > 0) CHECK(std::llabs(*r.records[i - 1].trace) <= std::llabs(*x.trace));
    }
}

TEST_CASE("pruned and naive enumerations agree") {
    SearchConfig c;
    c.Lmax = 2 * std::acosh(11.0);
    SearchResult r = enumerate(c);
    std::vector<std::string> naive = naive_classes(22.0, 13);
    CHECK(std::set<std::string>(naive.begin(), naive.end()) == words(r));
    CHECK(naive.size() == r.records.size());
}

TEST_CASE("dedup is exact") {
    const SearchResult& r = desk();
    std::set<std::string> seen;
    for (const auto& x : r.records) {
        CHECK(seen.insert(x.word.str()).second);
        Word l = x.word.letters();
        for (std::size_t i = 0; i < l.size(); ++i) {
            std::rotate(l.begin(), l.begin() + 1, l.end());
            CHECK(CyclicWord::from_letters(l) == x.word);
            CHECK(CyclicWord::from_letters(inverse(l)) == x.word);
        }
    }
}

TEST_CASE("soundness over the desk-scale corpus") {
    const SearchResult& r = desk();
    REQUIRE(r.checks.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        const GeodesicRecord& x = r.records[i];
        INFO(x.word.str());
        CHECK(r.checks[i].ok());
        CHECK(double(x.k) <= envelope_bound(x.length));
        REQUIRE(x.decomposition);
        const ArcDecomposition& d = *x.decomposition;
        CHECK(double(x.k) <= thick_bound(d.L1, d.m) + thin_bound(d) + 1e-9);
        if (d.m == 0) CHECK(double(x.k) <= thick_bound(x.length, 1));
        CHECK(double(x.k) <= composed_bound(x.length).value);
    }
}

TEST_CASE("min-length table") {
    MinLengthTable t = min_length_table(desk(), 5);
    REQUIRE(t.rows.size() == 5);
    CHECK(*t.rows[0].min_length == doctest::Approx(2 * std::acosh(3.0)).epsilon(1e-15));
    CHECK(t.rows[0].trace == 6);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const TableRow& row = t.rows[i];
        INFO(row.k);
        REQUIRE(row.min_length);
        CHECK(row.conclusive);
        CHECK(*row.min_length >= hempel_floor() - 1e-12);
        CHECK(*row.min_length >= row.envelope);
        CHECK(row.word_k >= row.k);
        CHECK(row.conjectured == doctest::Approx(2 * std::acosh(1.0 + 2.0 * double(row.k))));
        if (i > 0) CHECK(*row.min_length >= *t.rows[i - 1].min_length);
    }
    std::string csv = table_csv(t);
    CHECK(csv.rfind("k,min_length,conjectured,ratio,word,conclusive\n", 0) == 0);
}

TEST_CASE("conjecture report") {
    SearchConfig c;
    c.Lmax = kDesk;
    auto rep = conjecture_report(min_length_table(desk(), 5), c);
    REQUIRE(rep.size() == 5);
    for (const ConjectureRow& row : rep) CHECK(row.verdict == RowVerdict::matches);

    // a budget below the conjectured lengths leaves the rows open
    SearchConfig small;
    small.Lmax = 2 * std::acosh(5.0) + 0.01;
    SearchResult r = enumerate(small);
    MinLengthTable t = min_length_table(r, 5);
    auto open = conjecture_report(t, small);
    CHECK(open[0].verdict == RowVerdict::matches);
    CHECK(open[1].verdict == RowVerdict::matches);
    for (std::size_t i = 2; i < 5; ++i) {
        CHECK(open[i].verdict == RowVerdict::inconclusive);
        CHECK_FALSE(t.rows[i].conclusive);
    }
}

TEST_CASE("congruence words reproduce their matrices") {
    const SurfaceSpec tps = build_tps();
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> letter(0, 3), len(1, 12);
    for (int i = 0; i < 2000; ++i) {
        Word w;
        for (int n = len(rng); n > 0; --n) w.push_back(Letter(letter(rng)));
        IntMat m = tps.int_holonomy(w);
        Word back = congruence_word(m.a, m.b, m.c, m.d);
        IntMat m2 = tps.int_holonomy(back);
        bool same = m2 == m || m2 == IntMat{-m.a, -m.b, -m.c, -m.d};
        CHECK(same);
        CHECK(back == free_reduce(back));
    }
    CHECK(congruence_word(1, 0, 0, 1).empty());
    CHECK(to_string(congruence_word(1, 2, 0, 1)) == "a");
    CHECK(to_string(congruence_word(1, 0, -2, 1)) == "B");
}

TEST_CASE("worker count does not change the output") {
    SearchConfig c;
    c.Lmax = kDesk;
    c.workers = 4;
    SearchResult r = enumerate(c);
    REQUIRE(r.records.size() == desk().records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) {
        CHECK(r.records[i].word == desk().records[i].word);
        CHECK(r.records[i].k == desk().records[i].k);
    }
}

TEST_CASE("frontier dump and resume cover the full class set") {
    SearchConfig c;
    c.Lmax = 8.0;
    SearchResult full = enumerate(c);
    c.max_nodes = 600;
    SearchResult part = enumerate(c);
    REQUIRE_FALSE(part.complete);
    REQUIRE_FALSE(part.frontier.empty());
    std::vector<FrontierEntry> f = parse_frontier(frontier_text(part.frontier));
    REQUIRE(f.size() == part.frontier.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i].prefix == part.frontier[i].prefix);
        CHECK(f[i].a == part.frontier[i].a);
        CHECK(f[i].d == part.frontier[i].d);
    }
    c.max_nodes = SearchConfig{}.max_nodes;
    SearchResult rest = enumerate(c, f);
    CHECK(rest.complete);
    std::set<std::string> merged = words(part);
    for (const auto& w : words(rest)) merged.insert(w);
    CHECK(merged == words(full));

    CHECK_THROWS_AS(parse_frontier("LR 1 1 1 3\n"), ParseError);
    CHECK_THROWS_AS(parse_frontier("LX 1 0 1 1\n"), ParseError);
}

}  // TEST_SUITE
