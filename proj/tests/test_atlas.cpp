#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hyp/atlas.hpp"
#include "hyp/checks.hpp"
#include "hyp/intersect.hpp"
#include "hyp/words.hpp"

using namespace hyp;

namespace {

std::string canon(const char* s) { return CyclicWord::parse(s).str(); }

double peripheral_trace(const SurfaceSpec& s, int i) {
    return std::abs(s.holonomy(parse_word(s.peripherals[std::size_t(i)].word)).trace());
}

void check_aggregates(const ArcDecomposition& d, const SurfaceSpec& spec, const std::string& what) {
    INFO(what);
    const auto comps = thin_components(spec);
    CHECK(std::abs(d.L - d.L1 - d.L2) <= 1e-8);
    CHECK(std::abs(d.L2 - d.L2p - d.L2pp) <= 1e-8);
    CHECK(d.m == d.m0 + d.m2);
    CHECK(d.m == int(d.thin.size()));
    CHECK(d.m <= d.L / (2 * std::log(2.0)) + 1e-12);
    double sum = 0, sum_special = 0;
    int special = 0;
    for (const ThinArc& a : d.thin) {
        sum += a.length;
        const ThinComponent& c = comps.at(std::size_t(a.component));
        CHECK(a.winding <= 2 * std::sinh(a.length / 2) + 1e-9);
        if (c.core == CoreKind::geodesic) CHECK(a.winding <= a.length / c.core_len + 1e-9);
        if (a.kind == ArcCase::special) {
            ++special;
            sum_special += a.length;
            CHECK(c.core == CoreKind::geodesic);
        }
    }
    CHECK(special == d.m2);
    CHECK(std::abs(sum - d.L2) <= 1e-8);
    CHECK(std::abs(sum_special - d.L2pp) <= 1e-8);
    double thick = 0;
    for (double t : d.thick) thick += t;
    if (d.m > 0) CHECK(std::abs(thick - d.L1) <= 1e-8);
}

}  // namespace

TEST_SUITE("words") {

TEST_CASE("reduction and canonical form") {
    CHECK(CyclicWord::from_letters(parse_word("aAb")).str() == "b");
    CHECK(canon("baBb") == canon("ab"));
    CHECK(canon("abA") == "b");
    CHECK(canon("ba") == "ab");
    CHECK(canon("BA") == "ab");  // inverse of ab
    CHECK(canon("ab^3") == canon("bbba"));
    CHECK(canon("(ab)^2a") == canon("aabab"));
    CHECK_THROWS_AS(CyclicWord::parse("aA"), TrivialClassError);
    CHECK_THROWS_AS(CyclicWord::parse("ac"), ParseError);
    CHECK_THROWS_AS(CyclicWord::parse("a^"), ParseError);
}

TEST_CASE("canonical form is invariant under rotation and inversion") {
    for (const CyclicWord& w : canonical_words(7)) {
        Word l = w.letters();
        for (std::size_t r = 0; r < l.size(); ++r) {
            std::rotate(l.begin(), l.begin() + 1, l.end());
            CHECK(CyclicWord::from_letters(l) == w);
            CHECK(CyclicWord::from_letters(inverse(l)) == w);
        }
    }
}

TEST_CASE("primitive roots") {
    auto [root, n] = CyclicWord::parse("abab").primitive_root();
    CHECK(n == 2);
    CHECK(to_string(root) == "ab");
    CHECK(CyclicWord::parse("aab").is_primitive());
    try {
        CyclicWord::parse("(aB)^3").require_primitive();
        FAIL("expected a multiplicity error");
    } catch (const MultiplicityError& e) {
        CHECK(e.exponent == 3);
        CHECK(e.root == "aB");
    }
}

}  // TEST_SUITE

TEST_SUITE("atlas") {

TEST_CASE("integer thrice-punctured sphere") {
    SurfaceSpec s = build_tps();
    REQUIRE(s.integral());
    CHECK(*s.int_a == IntMat{1, 2, 0, 1});
    CHECK(*s.int_b == IntMat{1, 0, 2, 1});
    CHECK(s.int_a->trace() == 2);
    CHECK(s.a.kind() == Kind::parabolic);
    CHECK(s.b.kind() == Kind::parabolic);
    CHECK(s.int_holonomy(parse_word("ab")).trace() == 6);
    CHECK(s.holonomy(parse_word("ab")).kind() == Kind::hyperbolic);
    for (long k = 1; k <= 50; ++k) CHECK(s.int_holonomy(parse_word("ab^" + std::to_string(k))).trace() == 2 + 4 * k);
    for (int i = 0; i < 3; ++i) CHECK(peripheral_trace(s, i) == 2.0);
}

TEST_CASE("pants peripheral traces") {
    for (auto l : {std::array<double, 3>{0, 0, 0}, {1, 1, 1}, {0.5, 0, 0.8}, {0.01, 3, 0.2}, {2, 2, 2}}) {
        SurfaceSpec s = build_pants(l[0], l[1], l[2]);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(peripheral_trace(s, i) - 2 * std::cosh(l[i] / 2)) <= 1e-10);
            CHECK(s.peripherals[std::size_t(i)].length == l[i]);
        }
    }
    CHECK_THROWS_AS(build_pants(-1, 0, 0), DomainError);
    CHECK_THROWS_AS(build_pants(std::nan(""), 0, 0), DomainError);
    CHECK(parse_surface("pants:0.5,0,0.8").peripherals[2].length == 0.8);
    CHECK_THROWS_AS(parse_surface("torus"), ParseError);
}

TEST_CASE("thin components") {
    auto tps = thin_components(build_tps());
    CHECK(tps.size() == 3);
    for (const ThinComponent& c : tps) {
        CHECK(c.core == CoreKind::cusp);
        CHECK(c.n0_height == 2.0);
        CHECK(c.n3_height == 1.0);
        CHECK(c.n0_horocycle_len == 1.0);
        CHECK(c.n3_horocycle_len == 2.0);
    }
    auto one = thin_components(build_pants(0.5, 2, 2));
    REQUIRE(one.size() == 1);
    CHECK(one[0].core == CoreKind::geodesic);
    CHECK(one[0].n0_radius == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(one[0].n3_radius == doctest::Approx(std::log(8.0)).epsilon(1e-15));
    CHECK(thin_components(build_pants(1, 1, 1)).empty());
    CHECK(thin_components(build_pants(0.999999, 1, 1)).size() == 1);
    for (double l : {0.9, 0.5, 0.1, 1e-3}) {
        auto c = thin_components(build_pants(l, 2, 2));
        REQUIRE(c.size() == 1);
        CHECK(0 < c[0].n0_radius);
        CHECK(c[0].n0_radius < c[0].n3_radius);
        CHECK(c[0].n3_radius <= collar_width(l));
        CHECK(c[0].n3_radius - c[0].n0_radius == doctest::Approx(std::log(2.0)));
    }
}

TEST_CASE("figure-eight stays out of the thin part") {
    // its lifts have cusp-frame radius sqrt 2 < 2
    ArcDecomposition d = decompose(CyclicWord::parse("ab"), build_tps());
    CHECK(d.L == doctest::Approx(2 * std::acosh(3.0)).epsilon(1e-14));
    CHECK(d.m == 0);
    CHECK(d.L2 == 0.0);
    CHECK(d.L1 == doctest::Approx(d.L));
}

TEST_CASE("corkscrew windings follow sqrt(k^2 + k - 4)") {
    for (long k = 2; k <= 12; ++k) {
        ArcDecomposition d = decompose(CyclicWord::parse("ab^" + std::to_string(k)), build_tps());
        REQUIRE(d.m == 1);
        const ThinArc& a = d.thin[0];
        CHECK(a.kind == ArcCase::general);
        CHECK(a.winding == doctest::Approx(std::sqrt(double(k * k + k - 4))).epsilon(1e-9));
        CHECK(a.R == doctest::Approx(std::sqrt(double(k * k + k))).epsilon(1e-9));
        CHECK(long(std::ceil(a.winding)) >= k - 1);
    }
    ArcDecomposition d4 = decompose(CyclicWord::parse("ab^4"), build_tps());
    CHECK(d4.thin[0].winding >= 4.0 - 1e-12);
    CHECK(d4.thin[0].winding < 5.0);
    CHECK(d4.thin[0].winding == doctest::Approx(cusp_arc_geometry(d4.thin[0].R).winding));
}

TEST_CASE("no thin part on pants with long boundaries") {
    SurfaceSpec s = build_pants(2, 2, 2);
    for (const char* w : {"ab", "abAB", "aab", "abbAB"}) {
        ArcDecomposition d = decompose(CyclicWord::parse(w), s);
        CHECK(d.m == 0);
        CHECK(d.L2 == 0.0);
    }
}

TEST_CASE("decomposition aggregates on the thrice-punctured sphere") {
    SurfaceSpec s = build_tps();
    for (const CyclicWord& w : canonical_words(8)) check_aggregates(decompose(w, s), s, w.str());
}

TEST_CASE("decomposition aggregates on pants with short boundaries") {
    SurfaceSpec s = build_pants(0.3, 0.6, 0.1);
    for (const CyclicWord& w : canonical_words(5)) check_aggregates(decompose(w, s), s, w.str());
    // powers of a boundary curve times a short transversal produce special arcs
    ArcDecomposition d = decompose(CyclicWord::parse("ab^6"), s);
    CHECK(d.m >= 1);
}

TEST_CASE("peripheral words cannot be decomposed") {
    CHECK_THROWS_AS(decompose(CyclicWord::parse("a"), build_tps()), PeripheralError);
    CHECK_THROWS_AS(decompose(CyclicWord::parse("aB"), build_tps()), PeripheralError);
}

TEST_CASE("collar disjointness on random pants") {
    SuiteResult r = collar_disjointness(12, 40, 17);
    CHECK(r.samples == 12 * 3 * 40);
    CHECK_MESSAGE(r.violations == 0, r.first_violation);
    CHECK(r.worst >= 0.0);
    // inflated radii must collide, so the sampler can see an overlap
    SuiteResult control = collar_disjointness(3, 40, 17, 3.0);
    CHECK(control.violations > 0);
}

TEST_CASE("thick part injectivity radius") {
    const double floor = std::log(std::numbers::phi);
    // on the N0 horocycle of the cusp at infinity the floor is attained by a
    CHECK(std::abs(tps_injectivity_radius(0.0, 2.0) - floor) < 1e-12);
    CHECK(tps_injectivity_radius(0.0, 1.0) > floor);
    SuiteResult r = thick_injectivity(2000, 19);
    CHECK(r.samples == 2000);
    CHECK_MESSAGE(r.violations == 0, r.first_violation);
    CHECK(r.worst >= floor - 1e-9);
    CHECK(r.worst < floor + 0.01);
}

TEST_CASE("annulus growth on collar equidistant curves") {
    // the curve at distance d from a core of length l has length l cosh d; measure it as a polyline
    for (double l : {0.05, 0.3, 0.9, 2.0}) {
        for (double d : {0.1, 0.7, 2.0, 4.0}) {
            const int n = 40000;
            double len = 0;
            auto pt = [&](double s) { return HPoint{std::exp(s) * std::tanh(d), std::exp(s) / std::cosh(d)}; };
            for (int i = 0; i < n; ++i) len += dist(pt(l * i / n), pt(l * (i + 1) / n));
            CHECK(len == doctest::Approx(l * std::cosh(d)).epsilon(1e-6));
            CHECK(std::sinh(len / 2) > 0.25 * std::exp(d) * l);
            if (l < std::exp(-d)) CHECK(len > 12.0 / 25.0 * std::exp(d) * l);
        }
    }
}

}  // TEST_SUITE
