#include "hyp/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyp {

namespace {

constexpr IntMat kA{1, 2, 0, 1};
constexpr IntMat kB{1, 0, 2, 1};

// Frames sending inf to the cusps inf, 0, 1, -1 of the fundamental domain, each
// conjugating the cusp stabilizer to z -> z +- 2.
constexpr IntMat kCuspFrame[4] = {{1, 0, 0, 1}, {0, -1, 1, 0}, {1, -1, 1, 0}, {-1, -1, 1, 0}};
constexpr int kCuspComponent[4] = {0, 1, 2, 2};

double half_len_above(double R, double h) { return std::log((R + std::sqrt(R * R - h * h)) / h); }

double wrap(double s, double L) {
    double r = std::fmod(s, L);
    if (r < 0) r += L;
    if (r >= L) r -= L;
    return r;
}

struct Lift {
    int component;
    MobiusMap frame;  // cusp: frame of the horoball; geodesic: g with core g*axis(P)
};

// Arc of the axis (given by its frame) inside the N0 horoball of a cusp lift.
std::optional<ThinArc> cusp_arc(const LineFrame& ax, const GeodesicLine& axis_line, const Lift& lift,
                                double L) {
    MobiusMap inv = lift.frame.inverse();
    BoundaryPoint e1 = inv.apply(axis_line.from), e2 = inv.apply(axis_line.to);
    if (e1.infinite || e2.infinite) throw DecompositionError("axis ends at a cusp");
    double R = std::abs(e1.x - e2.x) / 2.0;
    if (!(R > 2.0)) return std::nullopt;
    double c = (e1.x + e2.x) / 2.0, w = std::sqrt(R * R - 4.0);
    double s1 = ax.param(lift.frame.apply(HPoint{c - w, 2.0}));
    double s2 = ax.param(lift.frame.apply(HPoint{c + w, 2.0}));
    ThinArc arc;
    arc.component = lift.component;
    arc.length = 2.0 * half_len_above(R, 2.0);
    arc.start = wrap((s1 + s2) / 2.0 - arc.length / 2.0, L);
    arc.winding = w;
    arc.kind = ArcCase::general;
    arc.n3_length = 2.0 * half_len_above(R, 1.0);
    arc.R = R;
    return arc;
}

// First s beyond s0 (in direction dir) where f changes sign; f(s0) < 0.
template <class F>
double bisect_exit(F f, double s0, double dir) {
    double step = 0.5, inside = s0, outside = s0 + dir * step;
    while (f(outside) < 0.0) {
        inside = outside;
        step *= 2.0;
        outside = s0 + dir * step;
        if (step > 1e6) throw DecompositionError("arc does not leave the collar");
    }
    while (std::abs(outside - inside) > kArcTol) {
        double mid = 0.5 * (inside + outside);
        (f(mid) < 0.0 ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
}

std::optional<ThinArc> collar_arc(const LineFrame& ax, const GeodesicLine& core, const ThinComponent& comp,
                                  int comp_index, double L) {
    BoundaryPoint q1 = ax.to_std.apply(core.from), q2 = ax.to_std.apply(core.to);
    if (q1.infinite || q2.infinite) throw DecompositionError("axis shares an endpoint with a core");
    bool crosses = q1.x * q2.x < 0.0;
    double s_star = 0.5 * std::log(std::abs(q1.x * q2.x));
    auto depth = [&](double s, double r) { return dist_to_line(ax.at(s), core) - r; };
    auto f0 = [&](double s) { return depth(s, comp.n0_radius); };
    if (!(f0(s_star) < 0.0)) return std::nullopt;
    double lo = bisect_exit(f0, s_star, -1.0), hi = bisect_exit(f0, s_star, 1.0);
    auto f3 = [&](double s) { return depth(s, comp.n3_radius); };
    double lo3 = bisect_exit(f3, s_star, -1.0), hi3 = bisect_exit(f3, s_star, 1.0);
    LineFrame cf = line_frame(core);
    double p1 = cf.param(ax.at(lo)), p2 = cf.param(ax.at(hi));
    ThinArc arc;
    arc.component = comp_index;
    arc.start = wrap(lo, L);
    arc.length = hi - lo;
    arc.winding = std::abs(p2 - p1) / comp.core_len;
    arc.kind = crosses ? ArcCase::special : ArcCase::general;
    arc.n3_length = hi3 - lo3;
    return arc;
}

void dedup_arcs(std::vector<ThinArc>& arcs, double L) {
    std::sort(arcs.begin(), arcs.end(), [](const ThinArc& x, const ThinArc& y) { return x.start < y.start; });
    std::vector<ThinArc> out;
    for (const ThinArc& a : arcs) {
        bool dup = false;
        for (const ThinArc& b : out) {
            double d = std::abs(a.start - b.start);
            d = std::min(d, L - d);
            if (a.component == b.component && d < 1e-7) dup = true;
        }
        if (!dup) out.push_back(a);
    }
    arcs = std::move(out);
}

Word infinite_prefix(const Word& w, std::size_t n) {
    Word p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = w[i % w.size()];
    return p;
}

// Group elements near the axis in the Cayley tree: prefixes of w^{+-inf}
// followed by at most two further letters.
std::vector<Word> tube(const Word& w) {
    std::vector<Word> out;
    for (const Word& dir : {w, inverse(w)}) {
        for (std::size_t n = 0; n <= w.size() + 2; ++n) {
            Word p = infinite_prefix(dir, n);
            out.push_back(p);
            for (Letter x = 0; x < 4; ++x) {
                if (!p.empty() && x == inv(p.back())) continue;
                Word q = p;
                q.push_back(x);
                out.push_back(q);
                for (Letter y = 0; y < 4; ++y) {
                    if (y == inv(x)) continue;
                    Word r = q;
                    r.push_back(y);
                    out.push_back(r);
                }
            }
        }
    }
    return out;
}

}  // namespace

const char* case_name(ArcCase c) { return c == ArcCase::general ? "general" : "special"; }

MobiusMap SurfaceSpec::generator(Letter x) const {
    switch (x) {
        case 0: return a;
        case 1: return b;
        case 2: return a.inverse();
        default: return b.inverse();
    }
}

MobiusMap SurfaceSpec::holonomy(const Word& w) const {
    if (integral()) return MobiusMap(int_holonomy(w));
    MobiusMap m;
    for (Letter x : w) m = m * generator(x);
    return m;
}

IntMat SurfaceSpec::int_holonomy(const Word& w) const {
    if (!integral()) throw DomainError("surface has no integer holonomy");
    IntMat gens[4] = {*int_a, *int_b, int_a->inverse(), int_b->inverse()};
    IntMat m;
    for (Letter x : w) m = m * gens[x];
    return m;
}

std::string SurfaceSpec::name() const {
    if (kind == SurfaceKind::thrice_punctured_sphere) return "tps";
    std::ostringstream os;
    os.precision(17);
    os << "pants:" << boundary[0] << "," << boundary[1] << "," << boundary[2];
    return os.str();
}

SurfaceSpec build_tps() {
    SurfaceSpec s;
    s.kind = SurfaceKind::thrice_punctured_sphere;
    s.int_a = kA;
    s.int_b = kB;
    s.a = MobiusMap(kA);
    s.b = MobiusMap(kB);
    s.peripherals = {{"a", 0.0}, {"b", 0.0}, {"aB", 0.0}};
    return s;
}

SurfaceSpec build_pants(double l1, double l2, double l3) {
    for (double l : {l1, l2, l3})
        if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError("pants boundary lengths must be finite and >= 0");
    double x = 2.0 * std::cosh(l1 / 2.0), y = 2.0 * std::cosh(l2 / 2.0), z = -2.0 * std::cosh(l3 / 2.0);
    // A = [[x,-1],[1,0]], P = [[0,s],[-1/s,y]], AP = [[1/s, xs-y],[0,s]] with s + 1/s = z
    double s = (z - std::sqrt(std::max(0.0, z * z - 4.0))) / 2.0;
    SurfaceSpec sp;
    sp.kind = SurfaceKind::pants;
    sp.boundary = {l1, l2, l3};
    sp.a = MobiusMap(x, -1.0, 1.0, 0.0);
    sp.b = MobiusMap(0.0, s, -1.0 / s, y).inverse();
    sp.peripherals = {{"a", l1}, {"b", l2}, {"aB", l3}};
    return sp;
}

SurfaceSpec parse_surface(const std::string& text) {
    if (text == "tps") return build_tps();
    if (text.rfind("pants:", 0) == 0) {
        std::istringstream is(text.substr(6));
        double l[3];
        char sep;
        if (!(is >> l[0] >> sep >> l[1] >> sep >> l[2])) throw ParseError("expected pants:l1,l2,l3");
        return build_pants(l[0], l[1], l[2]);
    }
    throw ParseError("unknown surface '" + text + "'");
}

std::vector<ThinComponent> thin_components(const SurfaceSpec& spec) {
    std::vector<ThinComponent> out;
    for (std::size_t i = 0; i < spec.peripherals.size(); ++i) {
        double l = spec.peripherals[i].length;
        ThinComponent c;
        c.peripheral = int(i);
        if (l == 0.0) {
            c.core = CoreKind::cusp;
        } else if (l < kShortThreshold) {
            c.core = CoreKind::geodesic;
            c.core_len = l;
            c.n3_radius = std::log(4.0 / l);
            c.n0_radius = std::log(2.0 / l);
        } else {
            continue;
        }
        out.push_back(c);
    }
    return out;
}

MobiusMap cusp_frame(const MobiusMap& P) {
    if (P.kind(1e-9) != Kind::parabolic) throw ClassificationError("cusp frame needs a parabolic", P.trace());
    MobiusMap T;
    if (std::abs(P.c()) > 1e-300) {
        double p = (P.a() - P.d()) / (2.0 * P.c());  // double root of the fixed-point quadratic
        T = MobiusMap(0.0, -1.0, 1.0, -p);
    }
    MobiusMap Q = T * P * T.inverse();  // translation z -> z + t
    double t = Q.b() / Q.d();
    double k = std::sqrt(std::abs(t) / 2.0);
    return T.inverse() * MobiusMap(k, 0.0, 0.0, 1.0 / k);
}

Reduced tps_reduce(HPoint z) {
    IntMat g;
    for (int iter = 0; iter < 100000; ++iter) {
        if (z.x > 1.0) {
            auto n = std::int64_t(std::ceil((z.x - 1.0) / 2.0));
            z.x -= 2.0 * double(n);
            g = g * IntMat{1, 2 * n, 0, 1};
        } else if (z.x < -1.0) {
            auto n = std::int64_t(std::ceil((-1.0 - z.x) / 2.0));
            z.x += 2.0 * double(n);
            g = g * IntMat{1, -2 * n, 0, 1};
        } else if (std::hypot(z.x - 0.5, z.y) < 0.5) {
            z = MobiusMap(kB.inverse()).apply(z);
            g = g * kB;
        } else if (std::hypot(z.x + 0.5, z.y) < 0.5) {
            z = MobiusMap(kB).apply(z);
            g = g * kB.inverse();
        } else {
            return {z, g};
        }
    }
    throw DecompositionError("fundamental domain reduction did not terminate");
}

int tps_cusp_region(const HPoint& z, double h) {
    double r = 1.0 / (2.0 * h);
    if (z.y > h) return 0;
    if (std::hypot(z.x, z.y - r) < r) return 1;
    if (std::hypot(z.x - 1.0, z.y - r) < r) return 2;
    if (std::hypot(z.x + 1.0, z.y - r) < r) return 3;
    return -1;
}

double winding_number(const ThinArc& arc) { return arc.winding; }

ArcCase classify_arc(const ThinArc& arc) { return arc.kind; }

std::vector<double> ArcDecomposition::general_windings() const {
    std::vector<double> w;
    for (const ThinArc& a : thin)
        if (a.kind == ArcCase::general) w.push_back(a.winding);
    std::sort(w.begin(), w.end());
    return w;
}

ArcDecomposition decompose(const CyclicWord& word, const SurfaceSpec& spec) {
    MobiusMap W = spec.holonomy(word.letters());
    if (W.kind() != Kind::hyperbolic) throw PeripheralError("word " + word.str() + " is not hyperbolic");
    ArcDecomposition d;
    d.L = translation_length(W);
    GeodesicLine ax_line = axis(W);
    LineFrame ax = line_frame(ax_line);
    auto comps = thin_components(spec);
    std::vector<ThinArc> arcs;

    if (spec.integral()) {
        // Every N0 arc sits inside an N3 arc of length >= 2 log(2 + sqrt 3) > 2.6,
        // so sampling every 0.5 meets each horoball lift at least once.
        for (double s = -0.5; s < d.L + 0.5; s += 0.5) {
            Reduced r = tps_reduce(ax.at(s));
            int c = tps_cusp_region(r.z, 1.0);
            if (c < 0) continue;
            Lift lift{kCuspComponent[c], MobiusMap(r.g * kCuspFrame[c])};
            if (auto arc = cusp_arc(ax, ax_line, lift, d.L)) arcs.push_back(*arc);
        }
    } else {
        d.complete = false;
        for (const Word& g : tube(word.letters())) {
            MobiusMap G = spec.holonomy(g);
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                const ThinComponent& comp = comps[ci];
                MobiusMap P = spec.holonomy(parse_word(spec.peripherals[std::size_t(comp.peripheral)].word));
                if (comp.core == CoreKind::cusp) {
                    Lift lift{int(ci), G * cusp_frame(P)};
                    if (auto arc = cusp_arc(ax, ax_line, lift, d.L)) arcs.push_back(*arc);
                } else {
                    GeodesicLine core = axis(P).apply(G);
                    if (auto arc = collar_arc(ax, core, comp, int(ci), d.L)) arcs.push_back(*arc);
                }
            }
        }
    }
    dedup_arcs(arcs, d.L);

    d.thin = arcs;
    d.m = int(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const ThinArc& a = arcs[i];
        d.L2 += a.length;
        if (a.kind == ArcCase::general) {
            ++d.m0;
            d.L2p += a.length;
        } else {
            ++d.m2;
            d.L2pp += a.length;
        }
        double next = (i + 1 < arcs.size()) ? arcs[i + 1].start : arcs[0].start + d.L;
        double gap = next - (a.start + a.length);
        if (gap < -1e-8) throw DecompositionError("thin arcs overlap");
        d.thick.push_back(std::max(gap, 0.0));
    }
    d.L1 = d.L - d.L2;
    return d;
}

}  // namespace hyp
