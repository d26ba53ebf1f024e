#include "hyp/intersect.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <map>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>

namespace hyp {

namespace {

// Cyclic order of the four edges at a vertex of the Cayley tree, read off the
// boundary intervals [-inf,-1], [-1,0], [0,1], [1,inf] of A, B, b, a.
constexpr int kRibbon[4] = {3, 2, 0, 1};  // a, b, A, B -> position

// +1 if r lies strictly counterclockwise between in and out.
int side(Letter in, Letter out, Letter r) {
    int pi = kRibbon[in], po = kRibbon[out], pr = kRibbon[r];
    int dr = (pr - pi + 4) % 4, dout = (po - pi + 4) % 4;
    return dr < dout ? 1 : -1;
}

using BigInt = boost::multiprecision::cpp_int;

// (P + S sqrt D) / Q with Q > 0
struct QuadIrr {
    BigInt P, S, Q;
};

int sign_of(const BigInt& alpha, const BigInt& beta, const BigInt& D) {
    // sign of alpha + beta sqrt(D), D > 0 not a square
    int sa = alpha.sign(), sb = beta.sign();
    if (sa >= 0 && sb >= 0) return (sa || sb) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    BigInt lhs = alpha * alpha, rhs = beta * beta * D;
    if (sa > 0) return lhs > rhs ? 1 : -1;
    return rhs > lhs ? 1 : -1;
}

int compare(const QuadIrr& x, const QuadIrr& y, const BigInt& D) {
    return sign_of(x.P * y.Q - y.P * x.Q, x.S * y.Q - y.S * x.Q, D);
}

struct BigMat {
    BigInt a, b, c, d;
    BigMat(const IntMat& m) : a(m.a), b(m.b), c(m.c), d(m.d) {}
    BigMat(BigInt a_, BigInt b_, BigInt c_, BigInt d_) : a(a_), b(b_), c(c_), d(d_) {}
    BigMat operator*(const BigMat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    BigMat inverse() const { return {d, -b, -c, a}; }
    bool operator==(const BigMat&) const = default;
};

std::pair<QuadIrr, QuadIrr> exact_endpoints(const BigMat& m) {
    BigInt P = m.a - m.d, Q = BigInt(2) * m.c;
    int s = 1;
    if (Q < 0) {
        P = -P;
        Q = -Q;
        s = -1;
    }
    return {{P, BigInt(s), Q}, {P, BigInt(-s), Q}};
}

// Exact linked test for two hyperbolic integer matrices with equal |trace|.
bool exact_cross(const BigMat& M, const BigMat& W) {
    BigInt t = W.a + W.d;
    BigInt D = t * t - 4;
    auto [m1, m2] = exact_endpoints(M);
    auto [w1, w2] = exact_endpoints(W);
    if (compare(w1, w2, D) > 0) std::swap(w1, w2);
    auto between = [&](const QuadIrr& x) { return compare(w1, x, D) < 0 && compare(x, w2, D) < 0; };
    return between(m1) != between(m2);
}

template <class Mat>
struct Ops;

using HP = boost::multiprecision::mpfr_float_100;

struct HPMat {
    HP a, b, c, d;
    HPMat operator*(const HPMat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    HPMat inverse() const { return {d, -b, -c, a}; }
};

// Generators rebuilt from the boundary lengths at 100 digits.
std::array<HPMat, 4> hp_generators(const SurfaceSpec& spec) {
    HPMat A, P;
    if (spec.integral()) {
        A = {HP(spec.int_a->a), HP(spec.int_a->b), HP(spec.int_a->c), HP(spec.int_a->d)};
        HPMat b{HP(spec.int_b->a), HP(spec.int_b->b), HP(spec.int_b->c), HP(spec.int_b->d)};
        P = b.inverse();
    } else {
        HP x = 2 * cosh(HP(spec.boundary[0]) / 2), y = 2 * cosh(HP(spec.boundary[1]) / 2);
        HP z = -2 * cosh(HP(spec.boundary[2]) / 2);
        HP s = (z - sqrt(z * z - 4)) / 2;
        A = {x, HP(-1), HP(1), HP(0)};
        P = {HP(0), s, -1 / s, y};
    }
    return {A, P.inverse(), A.inverse(), P};
}

std::array<HP, 2> hp_angles(const HPMat& m) {
    // fixed points of m as atan(x), infinity at pi/2
    HP disc = (m.a - m.d) * (m.a - m.d) + 4 * m.b * m.c;
    HP r = sqrt(disc);
    const HP half_pi = boost::math::constants::half_pi<HP>();
    if (m.c == 0) return {half_pi, atan(m.b / (m.d - m.a))};
    return {atan((m.a - m.d + r) / (2 * m.c)), atan((m.a - m.d - r) / (2 * m.c))};
}

// Linked test at 100 digits for g W g^-1 against W. Empty when still tangent.
std::optional<bool> hp_cross(const std::array<HPMat, 4>& gens, const Word& w, const Word& g) {
    HPMat W{HP(1), HP(0), HP(0), HP(1)}, G = W;
    for (Letter x : w) W = W * gens[x];
    for (Letter x : g) G = G * gens[x];
    HPMat M = G * W * G.inverse();
    auto [w1, w2] = hp_angles(W);
    auto [m1, m2] = hp_angles(M);
    const HP eps("1e-80");
    for (const HP& u : {m1, m2})
        for (const HP& v : {w1, w2})
            if (abs(u - v) < eps) return std::nullopt;
    if (w1 > w2) std::swap(w1, w2);
    auto between = [&](const HP& t) { return w1 < t && t < w2; };
    return between(m1) != between(m2);
}

template <>
struct Ops<IntMat> {
    using Key = BigMat;
    IntMat gens[4];
    explicit Ops(const SurfaceSpec& s, const Word&)
        : gens{*s.int_a, *s.int_b, s.int_a->inverse(), s.int_b->inverse()} {}
    static IntMat mul(const IntMat& x, const IntMat& y) { return x * y; }
    static IntMat inverse(const IntMat& x) { return x.inverse(); }
    static MobiusMap mob(const IntMat& x) { return MobiusMap(x); }
    static bool match(const Key& x, const Key& y) { return x == y; }
    static GeodesicLine line(const IntMat& G, const IntMat&, const IntMat&, const GeodesicLine& ax) {
        return ax.apply(MobiusMap(G));
    }
    // exact conjugate, sign-normalized so that M and -M agree
    static Key key(const IntMat& H, const IntMat& W, const LineFrame&) {
        BigMat h(H);
        BigMat M = h * BigMat(W) * h.inverse();
        if (M.c < 0 || (M.c == 0 && M.a < 0)) return {-M.a, -M.b, -M.c, -M.d};
        return M;
    }
    std::optional<bool> exact(const IntMat& G, const IntMat& Ginv, const IntMat& W, const Word&) const {
        return exact_cross(BigMat(G) * BigMat(W) * BigMat(Ginv), BigMat(W));
    }
};

template <>
struct Ops<MobiusMap> {
    using Key = std::pair<double, double>;
    MobiusMap gens[4];
    std::array<HPMat, 4> hp;
    Word w;
    Ops(const SurfaceSpec& s, const Word& word)
        : gens{s.a, s.b, s.a.inverse(), s.b.inverse()}, hp(hp_generators(s)), w(word) {}
    static MobiusMap mul(const MobiusMap& x, const MobiusMap& y) { return x * y; }
    static MobiusMap inverse(const MobiusMap& x) { return x.inverse(); }
    static MobiusMap mob(const MobiusMap& x) { return x; }
    // the conjugate axis is the image of W's axis; better conditioned than solving for M's fixed points
    static GeodesicLine line(const MobiusMap& G, const MobiusMap&, const MobiusMap&, const GeodesicLine& ax) {
        return ax.apply(G);
    }
    // crossing position and shape in the axis frame. Endpoints in a fixed chart
    // bunch up exponentially for crossings far along the axis.
    static Key key(const MobiusMap& H, const MobiusMap&, const LineFrame& frame) {
        MobiusMap M = frame.to_std * H * frame.from_std;
        double q1 = M.b() / M.d(), q2 = M.a() / M.c();
        return {0.5 * std::log(std::abs(q1 * q2)), std::copysign(0.5 * std::log(std::abs(q2 / q1)), q2)};
    }
    static bool match(const Key& x, const Key& y) {
        return std::abs(x.first - y.first) < 1e-7 && std::abs(x.second - y.second) < 1e-7;
    }
    std::optional<bool> exact(const MobiusMap&, const MobiusMap&, const MobiusMap&, const Word& g) const { return hp_cross(hp, w, g); }
};

template <class Mat>
NumericCount count_numeric(const CyclicWord& cw, const SurfaceSpec& spec, int cutoff, NumericMode mode) {
    const Word& w = cw.letters();
    Ops<Mat> ops(spec, w);
    const std::size_t n = w.size();
    Mat W = ops.gens[w[0]];
    for (std::size_t i = 1; i < n; ++i) W = ops.mul(W, ops.gens[w[i]]);
    MobiusMap Wm = ops.mob(W);
    const double L = translation_length(Wm);
    const GeodesicLine ax = axis(Wm);
    const LineFrame frame = line_frame(ax);
    const Mat Winv = ops.inverse(W);

    if (cutoff <= 0) cutoff = int(2 * n + 2);
    const int depth = cutoff + 2;
    const int half = int(n / 2);
    const Word fwd = w, bwd = inverse(w);

    // key -> shortest representative length
    std::vector<std::pair<typename Ops<Mat>::Key, int>> found;
    auto lookup = [&](const typename Ops<Mat>::Key& k) -> int* {
        for (auto& [kk, len] : found)
            if (Ops<Mat>::match(kk, k)) return &len;
        return nullptr;
    };
    NumericCount res;
    res.cutoff = cutoff;

    Word g;
    const Mat I = ops.mul(W, Winv);
    std::vector<Mat> G{I}, Ginv{I};
    // follow[+/-]: the letters g[0..len-half) trace a prefix of w^{+inf} / w^{-inf}
    std::vector<std::pair<bool, bool>> follow{{true, true}};

    auto holonomy = [&](const Word& h) {
        Mat m = ops.mul(W, Winv);
        for (Letter x : h) m = ops.mul(m, ops.gens[x]);
        return m;
    };
    // reduced word of w^e g
    auto shifted = [&](int e, const Word& h) {
        Word out;
        const Word& base = e >= 0 ? fwd : bwd;
        for (int i = 0; i < std::abs(e); ++i) out.insert(out.end(), base.begin(), base.end());
        out.insert(out.end(), h.begin(), h.end());
        return free_reduce(out);
    };
    auto is_power = [&](const Word& h) {
        if (h.size() % n) return false;
        bool p = true, q = true;
        for (std::size_t i = 0; i < h.size(); ++i) {
            p = p && h[i] == fwd[i % n];
            q = q && h[i] == bwd[i % n];
        }
        return p || q;
    };

    // drop whole periods of w^{+-1} from the front: same coset up to W-conjugation
    auto strip = [&](const Word& h) -> std::pair<Word, bool> {
        for (const Word* base : {&fwd, &bwd}) {
            std::size_t f = 0;
            while (f < h.size() && h[f] == (*base)[f % n]) ++f;
            if (f >= n) return {Word(h.begin() + std::ptrdiff_t(f - f % n), h.end()), true};
        }
        return {h, false};
    };
    auto param = [&](const GeodesicLine& line) {
        BoundaryPoint q1 = frame.to_std.apply(line.from), q2 = frame.to_std.apply(line.to);
        return 0.5 * std::log(std::abs(q1.x * q2.x));
    };

    auto visit = [&](int len) {
        if (is_power(g)) return;  // g W g^-1 = W
        auto [h, stripped] = strip(g);
        Mat Hm = stripped ? holonomy(h) : G.back();
        Mat Hinv = stripped ? ops.inverse(Hm) : Ginv.back();
        GeodesicLine line;
        bool cross;
        try {
            line = ops.line(Hm, Hinv, W, ax);
            if (mode == NumericMode::exact) {
                if (auto ex = ops.exact(Hm, Hinv, W, h)) {
                    ++res.exact_rechecks;
                    cross = *ex;
                } else {
                    cross = geodesics_cross(ax, line);
                }
            } else {
                cross = geodesics_cross(ax, line);
            }
        } catch (const TangencyError&) {
            auto ex = ops.exact(Hm, Hinv, W, h);
            if (!ex) {
                ++res.unresolved;
                return;
            }
            ++res.exact_rechecks;
            cross = *ex;
        }
        if (!cross) return;
        // move the crossing into [0, L) along the axis
        for (int iter = 0, last = 0;; ++iter) {
            int shift = int(std::floor(param(line) / L));
            // shift == -last: the crossing sits on the period boundary, either side will do
            if (shift == 0 || (iter > 0 && shift == -last)) break;
            last = shift;
            if (iter == 8) {
                ++res.unresolved;
                return;
            }
            h = shifted(-shift, h);
            Hm = holonomy(h);
            line = ops.line(Hm, ops.inverse(Hm), W, ax);
        }
        auto key = ops.key(Hm, W, frame);
        int* slot = lookup(key);
        // a crossing on the period boundary may land one translate off
        for (int e : {-1, 1})
            if (!slot) slot = lookup(ops.key(holonomy(shifted(e, h)), W, frame));
        if (!slot)
            found.emplace_back(key, len);
        else
            *slot = std::min(*slot, len);
    };

    auto rec = [&](auto&& self, int len) -> void {
        visit(len);
        if (len == depth) return;
        for (Letter x = 0; x < 4; ++x) {
            if (!g.empty() && x == inv(g.back())) continue;
            auto [fp, fm] = follow.back();
            int h = len + 1 - half;  // prefix length that must follow the axis
            if (h >= 1) {
                Letter y = h - 1 < int(g.size()) ? g[std::size_t(h - 1)] : x;
                fp = fp && y == fwd[std::size_t(h - 1) % n];
                fm = fm && y == bwd[std::size_t(h - 1) % n];
                if (!fp && !fm) continue;
            }
            g.push_back(x);
            G.push_back(ops.mul(G.back(), ops.gens[x]));
            Ginv.push_back(ops.mul(ops.gens[inv(x)], Ginv.back()));
            follow.emplace_back(fp, fm);
            self(self, len + 1);
            g.pop_back();
            G.pop_back();
            Ginv.pop_back();
            follow.pop_back();
        }
    };
    rec(rec, 0);

    long at_cutoff = 0, total = long(found.size());
    for (auto& [key, len] : found) {
        if (len <= cutoff) ++at_cutoff;
        res.max_rep_len = std::max(res.max_rep_len, len);
    }
    res.crossings = at_cutoff;
    res.k = at_cutoff / 2;
    res.stabilized = at_cutoff == total && res.max_rep_len <= cutoff - 2 && at_cutoff % 2 == 0 &&
                     res.unresolved == 0;
    return res;
}

}  // namespace

bool is_peripheral(const CyclicWord& w) {
    const std::string s = w.str();
    return s == "a" || s == "b" || s == "aB";
}

long self_intersection_combinatorial(const CyclicWord& cw) {
    cw.require_primitive();
    if (is_peripheral(cw)) throw PeripheralError("word " + cw.str() + " is peripheral");
    const Word& w = cw.letters();
    const long n = long(w.size());
    auto at = [&](long i) { return w[std::size_t(((i % n) + n) % n)]; };
    long linked = 0;
    for (long i = 0; i < n; ++i) {
        Letter in1 = inv(at(i - 1)), out1 = at(i);
        for (long j = 0; j < n; ++j) {
            if (i == j) continue;
            Letter in2 = inv(at(j - 1)), out2 = at(j);
            // the shared segment must start at this vertex along line 1
            if (in1 == in2 || in1 == out2) continue;
            int s_start, s_end;
            if (out1 != in2 && out1 != out2) {
                s_start = side(in1, out1, in2);
                s_end = side(in1, out1, out2);
            } else if (out1 == out2) {
                long t = 1;
                while (at(i + t) == at(j + t)) {
                    if (++t > 2 * n) throw std::logic_error("rotations agree: word not primitive");
                }
                s_start = side(in1, out1, in2);
                s_end = side(inv(at(i + t - 1)), at(i + t), at(j + t));
            } else {
                // line 2 runs backwards along line 1
                long t = 1;
                while (at(i + t) == inv(at(j - 1 - t))) {
                    if (++t > 2 * n) throw std::logic_error("word conjugate to its inverse");
                }
                s_start = side(in1, out1, out2);
                s_end = side(inv(at(i + t - 1)), at(i + t), inv(at(j - 1 - t)));
            }
            if (s_start != s_end) ++linked;
        }
    }
    return linked / 2;
}

const char* numeric_mode_name(NumericMode m) { return m == NumericMode::exact ? "exact" : "double"; }

NumericMode parse_numeric_mode(const std::string& s) {
    if (s == "double" || s == "fast") return NumericMode::fast;
    if (s == "exact" || s == "hp" || s == "arbitrary") return NumericMode::exact;
    throw ParseError("unknown numeric mode '" + s + "' (double or exact)");
}

NumericCount self_intersection_numeric(const CyclicWord& w, const SurfaceSpec& spec, int cutoff, NumericMode mode) {
    w.require_primitive();
    MobiusMap W = spec.holonomy(w.letters());
    if (W.kind() != Kind::hyperbolic) throw PeripheralError("word " + w.str() + " is not hyperbolic");
    if (cutoff > 0 && cutoff < int(w.size())) throw DomainError("cutoff shorter than the word");
    if (spec.integral()) return count_numeric<IntMat>(w, spec, cutoff, mode);
    return count_numeric<MobiusMap>(w, spec, cutoff, mode);
}

const char* method_name(Method m) {
    switch (m) {
        case Method::combinatorial: return "combinatorial";
        case Method::numeric: return "numeric";
        case Method::both: return "both";
        case Method::formula: return "formula";
    }
    return "?";
}

nlohmann::json to_json(const ArcDecomposition& d) {
    nlohmann::json windings = nlohmann::json::array();
    nlohmann::json arcs = nlohmann::json::array();
    for (const ThinArc& a : d.thin) {
        windings.push_back(a.winding);
        arcs.push_back({{"component", a.component},
                        {"start", a.start},
                        {"length", a.length},
                        {"winding", a.winding},
                        {"case", case_name(a.kind)}});
    }
    return {{"L1", d.L1}, {"L2", d.L2}, {"L2p", d.L2p}, {"L2pp", d.L2pp}, {"m", d.m},
            {"m0", d.m0}, {"m2", d.m2}, {"windings", windings}, {"arcs", arcs}, {"thick", d.thick},
            {"complete", d.complete}};
}

nlohmann::json to_json(const GeodesicRecord& r) {
    nlohmann::json j{{"word", r.word.str()},
                     {"length", r.length},
                     {"k", r.k},
                     {"method", method_name(r.method)},
                     {"stabilized", r.stabilized}};
    if (r.trace)
        j["trace"] = *r.trace;
    else
        j["trace"] = r.trace_value;
    if (r.decomposition) j["decomposition"] = to_json(*r.decomposition);
    return j;
}

std::int64_t corkscrew_trace(long k) {
    if (k < 1) throw PeripheralError("corkscrew needs k >= 1");
    // b^k by squaring, then a * b^k
    IntMat base{1, 0, 2, 1}, acc;
    for (long e = k; e > 0; e >>= 1) {
        if (e & 1) acc = acc * base;
        if (e > 1) base = base * base;
    }
    return (IntMat{1, 2, 0, 1} * acc).trace();
}

double corkscrew_length(long k) {
    if (k < 1) throw PeripheralError("corkscrew needs k >= 1");
    return 2.0 * std::acosh(1.0 + 2.0 * double(k));
}

GeodesicRecord corkscrew(long k, bool with_decomposition) {
    if (k < 1) throw PeripheralError("corkscrew needs k >= 1");
    GeodesicRecord r;
    Word letters{0};
    letters.insert(letters.end(), std::size_t(k), Letter{1});
    r.word = CyclicWord::from_letters(letters);
    r.trace = corkscrew_trace(k);
    r.trace_value = double(*r.trace);
    r.length = translation_length_from_trace(r.trace_value);
    if (k <= 8) {
        long kc = self_intersection_combinatorial(r.word);
        NumericCount nc = self_intersection_numeric(r.word, build_tps());
        r.k = kc;
        r.method = Method::both;
        r.stabilized = nc.stabilized && nc.k == kc;
    } else if (k <= 400) {
        r.k = self_intersection_combinatorial(r.word);
        r.method = Method::combinatorial;
    } else {
        r.k = k;
        r.method = Method::formula;
    }
    if (with_decomposition && k <= 100000) r.decomposition = decompose(r.word, build_tps());
    return r;
}

double thin_bound(const ArcDecomposition& d) {
    std::vector<double> w = d.general_windings();
    double sum = 0.0;
    for (std::size_t j = 1; j <= w.size(); ++j) sum += double(2 * d.m + 1 - 2 * long(j)) * w[j - 1];
    return sum + d.L2pp * std::exp(d.L2pp / 4.0) + double(d.m) * double(d.m) - double(d.m);
}

double thick_bound(double L1, long m) {
    if (L1 < 0 || m < 0) throw DomainError("thick bound needs L1 >= 0 and m >= 0");
    double t = 25.0 / 12.0 * L1 + double(std::max(m, 1L));
    return 0.5 * t * t;
}

long pairwise_arc_bound(const ThinArc& p, const ThinArc& q, bool same_arc, double core_len) {
    if (p.component != q.component) return 0;
    if (same_arc) {
        if (p.kind == ArcCase::special) return 0;
        return std::max(0L, long(std::ceil(p.winding)) - 1);
    }
    if (p.kind == ArcCase::general && q.kind == ArcCase::general)
        return 2 * long(std::ceil(std::min(p.winding, q.winding)));
    if (p.kind == ArcCase::general) return long(std::ceil(p.winding));
    if (q.kind == ArcCase::general) return long(std::ceil(q.winding));
    if (!(core_len > 0)) throw DomainError("special arcs need a positive core length");
    return long(std::ceil((p.length + q.length) / core_len));
}

double envelope_bound(double L) { return 9.0 * L * L * std::exp(L / 2.0); }

double hempel_floor() { return 2.0 * std::log(1.0 + std::numbers::sqrt2); }

}  // namespace hyp
