#include "hyp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hyp {

namespace {

std::int64_t mul_checked(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer matrix entry overflow");
    return r;
}

std::int64_t add_checked(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer matrix entry overflow");
    return r;
}

void check_point(const HPoint& p) {
    if (!(p.y > 0.0) || !std::isfinite(p.x) || !std::isfinite(p.y))
        throw DomainError("point not in the open upper half-plane");
}

}  // namespace

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::elliptic: return "elliptic";
        case Kind::parabolic: return "parabolic";
        case Kind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

IntMat IntMat::operator*(const IntMat& o) const {
    return {add_checked(mul_checked(a, o.a), mul_checked(b, o.c)),
            add_checked(mul_checked(a, o.b), mul_checked(b, o.d)),
            add_checked(mul_checked(c, o.a), mul_checked(d, o.c)),
            add_checked(mul_checked(c, o.b), mul_checked(d, o.d))};
}

std::int64_t IntMat::trace() const { return add_checked(a, d); }

std::int64_t IntMat::det() const { return mul_checked(a, d) - mul_checked(b, c); }

MobiusMap::MobiusMap(double a, double b, double c, double d) {
    double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det))
        throw DomainError("Mobius map needs positive determinant");
    double s = 1.0 / std::sqrt(det);
    if (a + d < 0.0) s = -s;
    m_ = {a * s, b * s, c * s, d * s};
}

MobiusMap::MobiusMap(const IntMat& m) {
    // det is exact here; doubles would cancel badly for large entries
    __int128 det = __int128(m.a) * m.d - __int128(m.b) * m.c;
    if (det <= 0) throw DomainError("Mobius map needs positive determinant");
    double s = 1.0 / std::sqrt(double(det));
    if (m.trace() < 0) s = -s;
    m_ = {double(m.a) * s, double(m.b) * s, double(m.c) * s, double(m.d) * s};
}

Kind MobiusMap::kind(double tol) const {
    double t = std::abs(trace());
    if (t > 2.0 + tol) return Kind::hyperbolic;
    if (t < 2.0 - tol) return Kind::elliptic;
    return Kind::parabolic;
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
    // both factors have det 1, so only the sign needs fixing
    MobiusMap r;
    r.m_ = {a() * o.a() + b() * o.c(), a() * o.b() + b() * o.d(), c() * o.a() + d() * o.c(),
            c() * o.b() + d() * o.d()};
    if (r.trace() < 0.0)
        for (double& v : r.m_) v = -v;
    return r;
}

MobiusMap MobiusMap::inverse() const {
    MobiusMap r;
    r.m_ = {d(), -b(), -c(), a()};
    return r;
}

HPoint MobiusMap::apply(const HPoint& p) const {
    // (az+b)/(cz+d) with Im = y / |cz+d|^2 when det = 1
    double re = c() * p.x + d();
    double im = c() * p.y;
    double den = re * re + im * im;
    double nx = (a() * p.x + b()) * re + a() * p.y * im;
    return {nx / den, p.y / den};
}

BoundaryPoint MobiusMap::apply(const BoundaryPoint& p) const {
    if (p.infinite) {
        if (c() == 0.0) return BoundaryPoint::inf();
        return BoundaryPoint::at(a() / c());
    }
    double den = c() * p.x + d();
    if (den == 0.0) return BoundaryPoint::inf();
    return BoundaryPoint::at((a() * p.x + b()) / den);
}

GeodesicLine::GeodesicLine(BoundaryPoint f, BoundaryPoint t) : from(f), to(t) {
    if (f == t) throw DomainError("geodesic endpoints coincide");
}

double dist(const HPoint& p, const HPoint& q) {
    check_point(p);
    check_point(q);
    // cosh d - 1 = 2 sinh^2(d/2) keeps nearby points accurate
    double e = std::hypot(p.x - q.x, p.y - q.y);
    return 2.0 * std::asinh(e / (2.0 * std::sqrt(p.y * q.y)));
}

double translation_length_from_trace(double trace) {
    double t = std::abs(trace);
    if (!(t > 2.0)) throw ClassificationError("translation length needs a hyperbolic element", trace);
    return 2.0 * std::acosh(t / 2.0);
}

double translation_length(const MobiusMap& m) {
    if (m.kind() != Kind::hyperbolic)
        throw ClassificationError(std::string("element is ") + kind_name(m.kind()), m.trace());
    return translation_length_from_trace(m.trace());
}

GeodesicLine axis(const MobiusMap& m) {
    if (m.kind() != Kind::hyperbolic)
        throw ClassificationError(std::string("axis of a ") + kind_name(m.kind()) + " element", m.trace());
    double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    BoundaryPoint r1, r2;
    if (c == 0.0) {
        r1 = BoundaryPoint::inf();
        r2 = BoundaryPoint::at(b / (d - a));
        // z -> (a/d) z + b/d expands away from the finite point when |a| > |d|
        if (std::abs(a) > std::abs(d)) return {r2, r1};
        return {r1, r2};
    }
    // c x^2 + (d - a) x - b = 0, discriminant (a + d)^2 - 4 after det = 1
    double B = d - a;
    double disc = std::sqrt((a + d) * (a + d) - 4.0);
    double q = -0.5 * (B + std::copysign(disc, B));
    double x1 = q / c;
    double x2 = (q != 0.0) ? -b / q : -B / c - x1;
    // attracting iff |c x + d| > 1
    if (std::abs(c * x1 + d) > 1.0) return {BoundaryPoint::at(x2), BoundaryPoint::at(x1)};
    return {BoundaryPoint::at(x1), BoundaryPoint::at(x2)};
}

double cayley_chart(const BoundaryPoint& p) {
    if (p.infinite) return 1.0;
    return std::atan(p.x) * (2.0 / std::numbers::pi);
}

bool geodesics_cross(const GeodesicLine& g1, const GeodesicLine& g2, double tol) {
    std::array<double, 4> t{cayley_chart(g1.from), cayley_chart(g1.to), cayley_chart(g2.from),
                            cayley_chart(g2.to)};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            double gap = std::abs(t[i] - t[j]);
            gap = std::min(gap, 2.0 - gap);
            if (gap < tol) throw TangencyError("geodesic endpoints within tangency tolerance");
        }
    double lo = std::min(t[0], t[1]), hi = std::max(t[0], t[1]);
    bool in1 = t[2] > lo && t[2] < hi;
    bool in2 = t[3] > lo && t[3] < hi;
    return in1 != in2;
}

LineFrame line_frame(const GeodesicLine& g) {
    MobiusMap T;
    if (g.from.infinite) {
        T = MobiusMap(0.0, 1.0, -1.0, g.to.x);
    } else if (g.to.infinite) {
        T = MobiusMap(1.0, -g.from.x, 0.0, 1.0);
    } else if (g.from.x > g.to.x) {
        T = MobiusMap(1.0, -g.from.x, 1.0, -g.to.x);
    } else {
        T = MobiusMap(-1.0, g.from.x, 1.0, -g.to.x);
    }
    return {T, T.inverse()};
}

HPoint LineFrame::at(double s) const { return from_std.apply(HPoint{0.0, std::exp(s)}); }

double LineFrame::param(const HPoint& p) const {
    HPoint q = to_std.apply(p);
    return std::log(std::hypot(q.x, q.y));
}

double dist_to_line(const HPoint& p, const GeodesicLine& g) {
    check_point(p);
    HPoint q = line_frame(g).to_std.apply(p);
    // sinh d = |x| / y for the imaginary axis
    return std::asinh(std::abs(q.x) / q.y);
}

double collar_width(double core_len) {
    if (!(core_len > 0.0)) throw DomainError("collar width needs positive core length");
    return std::asinh(1.0 / std::sinh(core_len / 2.0));
}

double lambert_arc_identity(double core_len, double winding, double depth) {
    if (!(core_len > 0.0) || !(winding >= 0.0) || !(depth >= 0.0))
        throw DomainError("lambert identity arguments out of range");
    return std::asinh(std::sinh(core_len * winding / 2.0) * std::cosh(depth));
}

CuspArc cusp_arc_geometry(double R) {
    if (!(R >= 2.0)) throw DomainError("arc does not enter N0 (R < 2)");
    double w = std::sqrt(R * R - 4.0);
    return {2.0 * std::log((w + R) / 2.0), w};
}

double cusp_injectivity_formula(double depth) {
    if (!(depth >= 0.0)) throw DomainError("depth must be non-negative");
    return std::asinh(std::exp(-depth));
}

}  // namespace hyp
