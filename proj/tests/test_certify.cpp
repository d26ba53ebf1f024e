#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <doctest.h>

#include "hyp/certify.hpp"
#include "hyp/intersect.hpp"

#ifndef HYPGEO_SOURCE_DIR
#define HYPGEO_SOURCE_DIR "."
#endif

using namespace hyp;

namespace {

const std::string kDir = HYPGEO_SOURCE_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<Claim>& ledger() {
    static const std::vector<Claim> c = load_claims(kDir + "/data/claims.txt");
    return c;
}

const std::vector<Claim>& mutants() {
    static const std::vector<Claim> c = load_claims(kDir + "/data/mutants.txt");
    return c;
}

// 100-digit value of an exact decimal, not the nearest double
std::vector<HPFloat> at(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_SUITE("certify") {

TEST_CASE("simple claims") {
    CertResult sq = certify(make_claim("square", "x^2", ">=", "0", "x in [-1, 1]"));
    CHECK(sq.verdict == Verdict::verified);
    CHECK(sq.leaves >= 1);
    CertResult lin = certify(make_claim("line", "x", "<", "1", "x in [0, 2]"));
    REQUIRE(lin.verdict == Verdict::refuted);
    CHECK_FALSE(holds_hp(make_claim("line", "x", "<", "1", "x in [0, 2]"), at({lin.witness[0]})));
    // strict relations need strict enclosures; touching is fine for non-strict ones
    CHECK(certify(make_claim("touch", "x", "<=", "1", "x in [0, 1]")).verdict == Verdict::verified);
    CHECK(certify(make_claim("touch-strict", "x", "<", "1", "x in [0, 1]")).verdict == Verdict::refuted);
}

TEST_CASE("the 18.12 gap holds on the half-line and its mutant fails near 17.2") {
    CertResult r = certify(make_claim("gap", "exp(L/2)", ">", "18.12*L^2 + 2", "L in [17.2, inf)"));
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.tail);
    Claim m = make_claim("gap-mutant", "exp(L/2)", ">", "19.5*L^2 + 2", "L in [17.2, inf)");
    CertResult rm = certify(m);
    REQUIRE(rm.verdict == Verdict::refuted);
    REQUIRE(rm.witness.size() == 1);
    CHECK(rm.witness[0] >= 17.2);
    CHECK(rm.witness[0] < 18.0);
    CHECK_FALSE(holds_hp(m, at({rm.witness[0]})));
    CHECK_FALSE(rm.witness_lhs.empty());
}

TEST_CASE("claims file parsing") {
    CHECK_THROWS_AS(parse_claims("id: x\nlhs: L\nrel: ~\nrhs: 1\ndomain: L in [0, 1]\ncite: c\nanchor: a\n"), ParseError);
    CHECK_THROWS_AS(parse_claims("id: x\nlhs: M\nrel: <\nrhs: 1\ndomain: L in [0, 1]\ncite: c\nanchor: a\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_claims("id: x\nlhs: L\nrel: <\nrhs: 2\ndomain: L in [0, 1]\nbogus: 1\n"), ParseError);
    auto two = parse_claims(
        "# comment\nid: x\nlhs: L\nrel: <\nrhs: 2\ndomain: L in [0, 1]\ncite: c\nanchor: a\n\n"
        "id: y\nlhs: 1\nrel: >=\nrhs: 1\ndomain:\ncite: c\nanchor: b\n");
    REQUIRE(two.size() == 2);
    CHECK(two[0].rel == Rel::lt);
    CHECK(two[1].domain.empty());
    CHECK(certify(two[1]).verdict == Verdict::verified);
}

TEST_CASE("ledger is large, well-formed and anchored in the source") {
    const auto& c = ledger();
    CHECK(c.size() >= 25);
    const std::string source_text = slurp(kDir + "/paper.md");
    REQUIRE_FALSE(source_text.empty());
    std::set<std::string> ids;
    std::map<std::string, int> per_anchor;
    for (const Claim& x : c) {
        INFO(x.id);
        CHECK(ids.insert(x.id).second);
        CHECK_FALSE(x.cite.empty());
        CHECK_FALSE(x.anchor.empty());
        ++per_anchor[x.anchor];
        for (const Interval& d : x.domain) CHECK(d.lo <= d.hi);
    }
    // each anchor names exactly one display
    for (const auto& [a, n] : per_anchor) {
        INFO(a);
        std::size_t first = source_text.find(a);
        CHECK(first != std::string::npos);
        CHECK(source_text.find(a, first + 1) == std::string::npos);
    }
    CHECK(per_anchor.count("e^{\\frac{L}2}>18.12L^2+2") == 1);
}

TEST_CASE("every ledger claim is verified") {
    for (const Claim& x : ledger()) {
        INFO(x.id);
        CertResult r = certify(x);
        CHECK(r.verdict == Verdict::verified);
    }
}

TEST_CASE("verified claims hold at random points at 100 digits") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Claim& x : ledger()) {
        INFO(x.id);
        REQUIRE(certify(x).verdict == Verdict::verified);
        for (int i = 0; i < 1000; ++i) {
            std::vector<HPFloat> pt;
            for (const Interval& d : x.domain) {
                double hi = std::isinf(d.hi) ? d.lo + 80.0 : d.hi;
                double t = u(rng);
                pt.emplace_back(i == 0 ? d.lo : i == 1 ? hi : d.lo + t * (hi - d.lo));
            }
            if (!holds_hp(x, pt)) {
                FAIL_CHECK("fails at a sampled point");
                break;
            }
        }
    }
}

TEST_CASE("every mutant is refuted with a checked witness") {
    const auto& m = mutants();
    CHECK(m.size() >= 5);
    for (const Claim& x : m) {
        INFO(x.id);
        CertResult r = certify(x);
        REQUIRE(r.verdict == Verdict::refuted);
        REQUIRE(r.witness.size() == x.vars.size());
        for (std::size_t i = 0; i < r.witness.size(); ++i) CHECK(x.domain[i].contains(r.witness[i]));
        CHECK_FALSE(holds_hp(x, std::vector<HPFloat>(r.witness.begin(), r.witness.end())));
    }
}

TEST_CASE("the printed collar comparison is refuted") {
    auto f = load_claims(kDir + "/data/findings.txt");
    REQUIRE(f.size() == 1);
    CHECK(certify(f[0]).verdict == Verdict::refuted);
    // with exp(-t) it holds
    CHECK(certify(make_claim("fixed", "(1 + exp(-t))/(1 - exp(-t))", ">", "2/t", "t in [0.01, 10]")).verdict ==
          Verdict::verified);
}

TEST_CASE("a small budget gives an inconclusive verdict with a residual box") {
    Budget tiny;
    tiny.max_leaves = 1;
    tiny.max_depth = 1;
    CertResult r = certify(make_claim("tight", "exp(L/2)", ">", "18.12*L^2 + 2", "L in [17.2, 40]"), tiny);
    CHECK(r.verdict == Verdict::inconclusive);
    REQUIRE(r.residual.size() == 1);
    CHECK(r.residual[0].lo >= 17.2);
    CHECK(r.residual[0].hi <= 40.0);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("verdicts are deterministic") {
    for (const Claim& x : ledger()) {
        CertResult a = certify(x), b = certify(x);
        CHECK(a.verdict == b.verdict);
        CHECK(a.leaves == b.leaves);
        CHECK(a.boxes == b.boxes);
    }
}

TEST_CASE("maximizer structure on the ordered simplex grid") {
    MaximizerReport one = maximizer_check(1, 0, 3.0);
    REQUIRE(one.best.size() == 1);
    CHECK(one.best[0] == doctest::Approx(3.0));
    CHECK(one.matches);

    MaximizerReport two = maximizer_check(2, 0, 4.0);
    CHECK(two.matches);
    CHECK((two.m1 == 1 || two.m1 == 2));
    if (two.m1 == 1) CHECK(two.best[1] == doctest::Approx(4.0));
    else CHECK(two.best[0] == doctest::Approx(2.0));

    CHECK(maximizer_check(3, 1, 6.0).matches);
    for (int m0 = 1; m0 <= 5; ++m0)
        for (int m2 = 0; m2 <= 2; ++m2)
            for (double L2p : {1.0, 4.0, 10.0}) {
                MaximizerReport r = maximizer_check(m0, m2, L2p, 200);
                INFO(m0 << " " << m2 << " " << L2p);
                CHECK(r.matches);
                // the pattern point is the continuous maximizer; grid points cannot beat it
                CHECK(r.best_value <= r.pattern_value + 1e-9 * std::max(1.0, r.pattern_value));
            }
    CHECK_THROWS_AS(maximizer_check(0, 0, 1.0), DomainError);
}

TEST_CASE("composed bound") {
    CHECK(composed_bound(hempel_floor()).value >= 1.0);
    CHECK_THROWS_AS(composed_bound(1.0), DomainError);
    // the bound on cells is tighter than the closing display at L = 14
    ComposedBound b14 = composed_bound(14.0);
    CHECK(b14.value == doctest::Approx(957.515).epsilon(1e-5));
    CHECK(closing_display(14.0) == doctest::Approx(1 + 2 * std::sinh(7.0) + 0.5 * std::pow(25.0 / 12 * 14 + 1, 2)));
    CHECK(b14.value < closing_display(14.0));
    CHECK(b14.m <= 14.0 / (2 * std::log(2.0)));
    // corkscrews sit under the bound
    for (long k = 1; k <= 40; ++k) CHECK(double(k) <= composed_bound(corkscrew_length(k)).value);
}

TEST_CASE("composed bound is nondecreasing") {
    double prev = 0.0;
    for (int i = 35; i <= 250; ++i) {
        double v = composed_bound(i / 10.0).value;
        CHECK(v >= prev);
        prev = v;
    }
}

}  // TEST_SUITE
