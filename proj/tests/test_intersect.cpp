#include <cmath>
#include <numbers>
#include <thread>

#include <doctest.h>

#include "hyp/checks.hpp"
#include "hyp/intersect.hpp"

using namespace hyp;

namespace {

CyclicWord W(const char* s) { return CyclicWord::parse(s); }

long both(const CyclicWord& w, const SurfaceSpec& s, NumericMode mode = NumericMode::fast) {
    long kc = self_intersection_combinatorial(w);
    NumericCount nc = self_intersection_numeric(w, s, 0, mode);
    INFO(w.str());
    CHECK(nc.stabilized);
    CHECK(nc.unresolved == 0);
    CHECK(nc.k == kc);
    CHECK(nc.crossings == 2 * nc.k);
    return kc;
}

int workers() { return int(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))); }

}  // namespace

TEST_SUITE("intersect") {

TEST_CASE("figure-eight has one double point") {
    CHECK(both(W("ab"), build_tps()) == 1);
    CHECK(both(W("aaB"), build_tps()) == 1);
    CHECK(both(W("aBB"), build_tps()) == 1);
}

TEST_CASE("corkscrew words a b^k have k double points") {
    for (long k = 1; k <= 8; ++k) CHECK(both(W(("ab^" + std::to_string(k)).c_str()), build_tps()) == k);
}

TEST_CASE("dual methods agree on small samples") {
    const SurfaceSpec tps = build_tps();
    long commutator = both(W("abAB"), tps);
    CHECK(commutator >= 1);
    both(W("abb"), tps);
    both(W("abbaB"), tps);
    both(W("aabbAB"), tps);
}

TEST_CASE("peripheral and non-primitive words are rejected") {
    const SurfaceSpec tps = build_tps();
    for (const char* p : {"a", "b", "aB", "A", "bA"}) {
        CHECK(is_peripheral(W(p)));
        CHECK_THROWS_AS(self_intersection_combinatorial(W(p)), PeripheralError);
        CHECK_THROWS_AS(self_intersection_numeric(W(p), tps), PeripheralError);
    }
    CHECK_THROWS_AS(self_intersection_combinatorial(W("abab")), MultiplicityError);
    CHECK_THROWS_AS(self_intersection_numeric(W("(abb)^3"), tps), MultiplicityError);
}

TEST_CASE("counts are conjugacy invariant") {
    const SurfaceSpec tps = build_tps();
    for (const char* s : {"abAB", "aabAb", "abbbaB"}) {
        Word l = parse_word(s);
        long k = self_intersection_combinatorial(CyclicWord::from_letters(l));
        for (std::size_t r = 0; r < l.size(); ++r) {
            std::rotate(l.begin(), l.begin() + 1, l.end());
            CHECK(self_intersection_combinatorial(CyclicWord::from_letters(l)) == k);
            CHECK(self_intersection_combinatorial(CyclicWord::from_letters(inverse(l))) == k);
        }
        // conjugating by a letter changes the lift, not the class
        Word c{Letter(1)};
        c.insert(c.end(), l.begin(), l.end());
        c.push_back(Letter(3));
        CHECK(self_intersection_numeric(CyclicWord::from_letters(c), tps).k == k);
    }
}

TEST_CASE("dual methods agree on every word up to length 9") {
    SuiteResult r = dual_method_sweep(9, workers());
    CHECK(r.samples == long(canonical_words(9).size()));
    CHECK(r.samples > 1000);
    CHECK_MESSAGE(r.violations == 0, r.first_violation);
}

TEST_CASE("exact numeric mode agrees with the fast mode") {
    const SurfaceSpec tps = build_tps();
    for (const CyclicWord& w : canonical_words(6)) {
        NumericCount f = self_intersection_numeric(w, tps, 0, NumericMode::fast);
        NumericCount e = self_intersection_numeric(w, tps, 0, NumericMode::exact);
        CHECK(f.k == e.k);
        CHECK(e.stabilized);
    }
    CHECK(parse_numeric_mode("double") == NumericMode::fast);
    CHECK(parse_numeric_mode("exact") == NumericMode::exact);
    CHECK_THROWS_AS(parse_numeric_mode("quad"), ParseError);
}

TEST_CASE("dual methods agree on pants") {
    for (auto l : {std::array<double, 3>{0.5, 0.3, 0.8}, {2, 2, 2}, {0.1, 1.5, 0}}) {
        SurfaceSpec s = build_pants(l[0], l[1], l[2]);
        for (const CyclicWord& w : canonical_words(6)) both(w, s);
    }
    SurfaceSpec s = build_pants(0.5, 0.3, 0.8);
    for (const char* w : {"abAB", "abbb", "aabAB"}) both(W(w), s, NumericMode::exact);
}

TEST_CASE("a tiny cutoff is reported as not stabilized") {
    // representatives reach length 7, the cutoff needs two letters of slack
    NumericCount nc = self_intersection_numeric(W("abababbb"), build_tps(), 8);
    CHECK(nc.max_rep_len == 7);
    CHECK_FALSE(nc.stabilized);
    CHECK(self_intersection_numeric(W("abababbb"), build_tps(), 9).stabilized);
    CHECK_THROWS_AS(self_intersection_numeric(W("aabbAAB"), build_tps(), 1), DomainError);
}

TEST_CASE("corkscrew records") {
    GeodesicRecord r1 = corkscrew(1);
    CHECK(*r1.trace == 6);
    CHECK(std::abs(r1.length - 4 * std::log(1 + std::numbers::sqrt2)) < 1e-14);
    CHECK(r1.k == 1);
    CHECK(r1.method == Method::both);
    CHECK(r1.stabilized);
    CHECK(*corkscrew(10, false).trace == 42);
    CHECK(corkscrew(10, false).k == 10);
    GeodesicRecord big = corkscrew(1750, false);
    CHECK(*big.trace == 7002);
    CHECK(big.length == doctest::Approx(2 * std::acosh(3501.0)).epsilon(1e-15));
    CHECK(big.method == Method::formula);
    CHECK(corkscrew_trace(10000) == 40002);
    CHECK_THROWS_AS(corkscrew(0), PeripheralError);
    // the closed form of the conjectured length
    for (long k : {1L, 5L, 1750L}) {
        double kk = double(k);
        CHECK(corkscrew_length(k) ==
              doctest::Approx(2 * std::log(1 + 2 * kk + 2 * std::sqrt(kk * kk + kk))).epsilon(1e-14));
    }
}

TEST_CASE("thick and thin bounds") {
    CHECK(thick_bound(0, 1) == 0.5);
    CHECK(thick_bound(12, 1) == 338.0);
    CHECK(thick_bound(12, 0) == 338.0);
    CHECK_THROWS_AS(thick_bound(-1, 1), DomainError);

    ArcDecomposition empty;
    CHECK(thin_bound(empty) == 0.0);
    ArcDecomposition one;
    one.m = one.m0 = 1;
    one.thin.push_back(ThinArc{0, 0.0, 1.0, 3.0, ArcCase::general});
    CHECK(thin_bound(one) == 3.0);

    GeodesicRecord r5 = corkscrew(5);
    REQUIRE(r5.decomposition);
    CHECK(thin_bound(*r5.decomposition) + thick_bound(r5.decomposition->L1, r5.decomposition->m) >= 5.0);
    CHECK(envelope_bound(1.0) == doctest::Approx(9 * std::exp(0.5)));
    CHECK(hempel_floor() == doctest::Approx(std::acosh(3.0)));
}

TEST_CASE("pairwise arc bounds") {
    ThinArc special{0, 0.0, 1.0, 0.0, ArcCase::special};
    ThinArc general{0, 0.0, 1.0, 2.3, ArcCase::general};
    CHECK(pairwise_arc_bound(special, special, true, 0.5) == 0);
    CHECK(pairwise_arc_bound(general, general, true, 0.5) == 2);
    ThinArc s3{0, 0.0, 1.2, 0.0, ArcCase::special}, s4{0, 0.0, 1.8, 0.0, ArcCase::special};
    CHECK(pairwise_arc_bound(s3, s4, false, 0.5) == 6);
    CHECK(pairwise_arc_bound(general, special, false, 0.5) == 3);
    ThinArc g2{0, 0.0, 1.0, 1.5, ArcCase::general};
    CHECK(pairwise_arc_bound(general, g2, false, 0.5) == 4);
    ThinArc elsewhere{1, 0.0, 1.0, 5.0, ArcCase::general};
    CHECK(pairwise_arc_bound(general, elsewhere, false, 0.5) == 0);
}

}  // TEST_SUITE
