#include "hyp/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "hyp/atlas.hpp"
#include "hyp/expr.hpp"
#include "hyp/intersect.hpp"
#include "hyp/kernel.hpp"

namespace hyp {

namespace {

HPoint random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(-50.0, 50.0), ly(-6.0, 6.0);
    return {x(rng), std::exp(ly(rng))};
}

void note(SuiteResult& r, const std::string& what) {
    if (r.violations++ == 0) r.first_violation = what;
}

}  // namespace

SuiteResult metric_axioms(long triples, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    SuiteResult r;
    for (long i = 0; i < triples; ++i) {
        HPoint p = random_point(rng), q = random_point(rng), s = random_point(rng);
        if (i % 4 == 0) {
            // q between p and s on a vertical geodesic: the triangle inequality is tight
            q.x = s.x = p.x;
            q.y = std::sqrt(p.y * s.y);
        }
        double pq = dist(p, q), qp = dist(q, p), qs = dist(q, s), ps = dist(p, s);
        double sym = std::abs(pq - qp);
        double tri = ps - (pq + qs);
        double defect = std::max(sym, tri);
        r.worst = std::max(r.worst, defect);
        if (dist(p, p) != 0.0 || pq < 0.0 || defect > tol) {
            std::ostringstream os;
            os.precision(17);
            os << "p=(" << p.x << "," << p.y << ") q=(" << q.x << "," << q.y << ") s=(" << s.x << "," << s.y
               << ") defect " << defect;
            note(r, os.str());
        }
        ++r.samples;
    }
    return r;
}

namespace {

Expr random_expr(std::mt19937_64& rng, int depth) {
    static const char* consts[] = {"0.5", "2", "3.25", "18.12", "0.001", "7", "1.44", "25"};
    std::uniform_int_distribution<int> pick(0, 99);
    int c = pick(rng);
    if (depth == 0 || c < 20) {
        if (c % 3 == 0) return make_const(consts[std::size_t(c / 3) % 8]);
        return c % 2 ? make_var(0, "x") : make_var(1, "y");
    }
    c = pick(rng) % 13;
    switch (c) {
        case 0: return make_binary(Op::add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 1: return make_binary(Op::sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 2: return make_binary(Op::mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return make_binary(Op::div, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: return make_unary(Op::neg, random_expr(rng, depth - 1));
        case 5: return make_pow(random_expr(rng, depth - 1), 2 + pick(rng) % 3);
        case 6: return make_unary(Op::exp, random_expr(rng, depth - 1));
        case 7: return make_unary(Op::log, random_expr(rng, depth - 1));
        case 8: return make_unary(Op::sinh, random_expr(rng, depth - 1));
        case 9: return make_unary(Op::cosh, random_expr(rng, depth - 1));
        case 10: return make_unary(Op::sqrt, random_expr(rng, depth - 1));
        case 11: return make_unary(Op::acosh, random_expr(rng, depth - 1));
        default: return make_unary(Op::asinh, random_expr(rng, depth - 1));
    }
}

}  // namespace

SuiteResult containment_fuzz(long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0), centre(-4.0, 4.0), lw(-12.0, 1.0);
    SuiteResult r;
    while (r.samples < samples) {
        Expr e = random_expr(rng, 4);
        Box box(2);
        std::vector<HPFloat> pt(2);
        for (int i = 0; i < 2; ++i) {
            double c = centre(rng), w = std::exp(lw(rng));
            box[std::size_t(i)] = Interval(c - w, c + w);
            // endpoints are legal points too
            double t = u(rng);
            double v = t < 0.05 ? c - w : t > 0.95 ? c + w : c - w + 2.0 * w * u(rng);
            pt[std::size_t(i)] = HPFloat(std::clamp(v, c - w, c + w));
        }
        Interval enc;
        try {
            enc = eval_interval(e, box);
        } catch (const PartialDomainError&) {
            ++r.skipped;
            continue;
        }
        HPFloat v;
        try {
            v = eval_hp(e, pt);
        } catch (const PartialDomainError&) {
            // the point itself is outside the natural domain
            ++r.skipped;
            continue;
        }
        const bool unbounded = std::isinf(enc.lo) || std::isinf(enc.hi);
        if (boost::multiprecision::isnan(v) || boost::multiprecision::isinf(v)) {
            // 100 digits overflowed (exp towers); an unbounded enclosure says nothing either way
            if (unbounded) {
                ++r.skipped;
                continue;
            }
            note(r, "overflow at a point of a box with a finite enclosure: " + to_string(e));
        } else if (!(HPFloat(enc.lo) <= v && v <= HPFloat(enc.hi))) {
            std::ostringstream os;
            os.precision(17);
            os << to_string(e) << " at (" << pt[0] << ", " << pt[1] << ") = " << v << " outside [" << enc.lo << ", "
               << enc.hi << "]";
            note(r, os.str());
        }
        ++r.samples;
    }
    return r;
}

SuiteResult monotone_refinement(long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0), centre(-4.0, 4.0), lw(-8.0, 1.0);
    SuiteResult r;
    while (r.samples < samples) {
        Expr e = random_expr(rng, 4);
        Box box(2);
        for (auto& x : box) {
            double c = centre(rng), w = std::exp(lw(rng));
            x = Interval(c - w, c + w);
        }
        const std::size_t dim = u(rng) < 0.5 ? 0 : 1;
        Box left = box, right = box;
        const double mid = box[dim].mid();
        left[dim].hi = mid;
        right[dim].lo = mid;
        Interval parent;
        try {
            parent = eval_interval(e, box);
        } catch (const PartialDomainError&) {
            ++r.skipped;
            continue;
        }
        for (const Box* half : {&left, &right}) {
            Interval child;
            try {
                child = eval_interval(e, *half);
            } catch (const PartialDomainError&) {
                continue;  // the half left the domain entirely
            }
            if (!parent.contains(child)) {
                std::ostringstream os;
                os.precision(17);
                os << to_string(e) << ": child [" << child.lo << ", " << child.hi << "] not inside [" << parent.lo << ", "
                   << parent.hi << "]";
                note(r, os.str());
            }
        }
        ++r.samples;
    }
    return r;
}

namespace {

std::vector<Word> word_ball(int radius) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (int len = 1; len <= radius; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (int x = 0; x < 4; ++x) {
                Letter l = Letter(x);
                if (!out[i].empty() && out[i].back() == inv(l)) continue;
                Word w = out[i];
                w.push_back(l);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

}  // namespace

SuiteResult collar_disjointness(int pants, int samples_per_core, std::uint64_t seed, double radius_pad) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> len(1e-3, 1.0), u(0.0, 1.0);
    const std::vector<Word> ball = word_ball(4);
    constexpr int kPowers = 8;
    SuiteResult r;
    r.worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n < pants; ++n) {
        const double l[3] = {len(rng), len(rng), len(rng)};
        const SurfaceSpec spec = build_pants(l[0], l[1], l[2]);
        std::vector<MobiusMap> P(3);
        std::vector<GeodesicLine> ax(3);
        std::vector<double> rad(3);
        for (int i = 0; i < 3; ++i) {
            P[std::size_t(i)] = spec.holonomy(parse_word(spec.peripherals[std::size_t(i)].word));
            ax[std::size_t(i)] = axis(P[std::size_t(i)]);
            rad[std::size_t(i)] = std::log(4.0 / l[i]) + radius_pad;
        }
        for (int i = 0; i < 3; ++i) {
            // foreign core lifts near the base lift of core i: P_i^k w axis(P_j)
            std::vector<std::pair<int, GeodesicLine>> lines;
            for (int k = -kPowers; k <= kPowers; ++k) {
                MobiusMap Q;
                for (int t = 0; t < std::abs(k); ++t) Q = Q * (k > 0 ? P[std::size_t(i)] : P[std::size_t(i)].inverse());
                for (const Word& w : ball) {
                    MobiusMap G = Q * spec.holonomy(w);
                    for (int j = 0; j < 3; ++j)
                        if (j != i) lines.emplace_back(j, ax[std::size_t(j)].apply(G));
                }
            }
            const LineFrame f = line_frame(ax[std::size_t(i)]);
            for (int s = 0; s < samples_per_core; ++s) {
                double along = u(rng) * l[i];
                double off = u(rng) * rad[std::size_t(i)];
                double side = u(rng) < 0.5 ? -1.0 : 1.0;
                HPoint z{side * std::exp(along) * std::tanh(off), std::exp(along) / std::cosh(off)};
                HPoint p = f.from_std.apply(z);
                for (const auto& [j, g] : lines) {
                    double gap = dist_to_line(p, g) - rad[std::size_t(j)];
                    r.worst = std::min(r.worst, gap);
                    if (gap < 0.0) {
                        std::ostringstream os;
                        os.precision(17);
                        os << "pants(" << l[0] << "," << l[1] << "," << l[2] << ") core " << i << " meets core " << j
                           << " collar at (" << p.x << "," << p.y << ")";
                        note(r, os.str());
                        break;
                    }
                }
                ++r.samples;
            }
        }
    }
    return r;
}

double tps_injectivity_radius(double x, double y) {
    // 2 cosh d(z, gz) is the squared Frobenius norm of A^-1 g A, A i = z
    const double D = 2.0 * std::log(std::numbers::phi) + 1.0;
    const double N = 2.0 * std::cosh(D), s = std::sqrt(N);
    const HPoint z{x, y};
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        MobiusMap g{double(a), double(b), double(c), double(d)};
        best = std::min(best, dist(z, g.apply(z)));
    };
    const auto cmax = std::int64_t(std::floor(s / y));
    for (std::int64_t c = -cmax; c <= cmax; c += 1) {
        if (c % 2) continue;
        if (c == 0) {
            const auto bmax = std::int64_t(std::floor(s * y + 2.0 * std::abs(x) + 1.0));
            for (std::int64_t b = 2; b <= bmax; b += 2) consider(1, b, 0, 1);
            continue;
        }
        const auto alo = std::int64_t(std::floor(x * double(c) - s)), ahi = std::int64_t(std::ceil(x * double(c) + s));
        const auto dlo = std::int64_t(std::floor(-x * double(c) - s)), dhi = std::int64_t(std::ceil(-x * double(c) + s));
        for (std::int64_t a = alo; a <= ahi; ++a) {
            if (a % 2 == 0) continue;
            for (std::int64_t d = dlo; d <= dhi; ++d) {
                if (d % 2 == 0) continue;
                std::int64_t num = a * d - 1;
                if (num % c) continue;
                std::int64_t b = num / c;
                if (b % 2) continue;
                consider(a, b, c, d);
            }
        }
    }
    return 0.5 * best;
}

SuiteResult thick_injectivity(long samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(0.0, 2.0);
    const double floor = std::log(std::numbers::phi);
    SuiteResult r;
    r.worst = std::numeric_limits<double>::infinity();
    while (r.samples < samples) {
        HPoint z{ux(rng), uy(rng)};
        // standard fundamental domain minus the horoballs bounded by the N0 horocycles
        bool in_domain = z.y > 0.0 && std::hypot(z.x - 0.5, z.y) >= 0.5 && std::hypot(z.x + 0.5, z.y) >= 0.5;
        if (!in_domain || tps_cusp_region(z, 2.0) >= 0) {
            ++r.skipped;
            continue;
        }
        double rad = tps_injectivity_radius(z.x, z.y);
        r.worst = std::min(r.worst, rad);
        if (rad < floor - 1e-9) {
            std::ostringstream os;
            os.precision(17);
            os << "injectivity radius " << rad << " at (" << z.x << "," << z.y << ")";
            note(r, os.str());
        }
        ++r.samples;
    }
    return r;
}

std::vector<CyclicWord> canonical_words(int max_len) {
    std::vector<CyclicWord> out;
    Word w;
    auto rec = [&](auto&& self) -> void {
        if (!w.empty() && w.front() != inv(w.back()) && canonical_rotation(w) == w) {
            CyclicWord cw = CyclicWord::from_letters(w);
            if (cw.is_primitive() && !is_peripheral(cw)) out.push_back(cw);
        }
        if (int(w.size()) == max_len) return;
        for (int x = 0; x < 4; ++x) {
            Letter l = Letter(x);
            if (!w.empty() && w.back() == inv(l)) continue;
            w.push_back(l);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end(), [](const CyclicWord& p, const CyclicWord& q) {
        if (p.size() != q.size()) return p.size() < q.size();
        return p.letters() < q.letters();
    });
    return out;
}

SuiteResult dual_method_sweep(int max_len, int workers) {
    const std::vector<CyclicWord> words = canonical_words(max_len);
    const SurfaceSpec tps = build_tps();
    std::vector<char> bad(words.size(), 0);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < words.size();) {
            long kc = self_intersection_combinatorial(words[i]);
            NumericCount nc = self_intersection_numeric(words[i], tps);
            bad[i] = !(nc.stabilized && nc.k == kc);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, workers); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    SuiteResult r;
    r.samples = long(words.size());
    for (std::size_t i = 0; i < words.size(); ++i)
        if (bad[i]) note(r, words[i].str());
    return r;
}

}  // namespace hyp
