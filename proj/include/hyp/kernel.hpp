#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hyp {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when an operation needs a hyperbolic element and gets something else.
struct ClassificationError : std::runtime_error {
    double trace;
    ClassificationError(const std::string& what, double tr) : std::runtime_error(what), trace(tr) {}
};

struct TangencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HPoint {
    double x = 0.0;
    double y = 1.0;
};

// A point of R u {inf}.
struct BoundaryPoint {
    bool infinite = false;
    double x = 0.0;

    static BoundaryPoint at(double v) { return {false, v}; }
    static BoundaryPoint inf() { return {true, 0.0}; }
    bool operator==(const BoundaryPoint&) const = default;
};

enum class Kind { elliptic, parabolic, hyperbolic };

const char* kind_name(Kind k);

// Exact 2x2 integer matrix. Every product is overflow checked.
struct IntMat {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    IntMat operator*(const IntMat& o) const;
    IntMat inverse() const { return {d, -b, -c, a}; }
    std::int64_t trace() const;
    std::int64_t det() const;
    bool operator==(const IntMat&) const = default;
    auto operator<=>(const IntMat&) const = default;
};

class MobiusMap {
public:
    MobiusMap() = default;
    // Scales to det 1 and flips sign so the trace is non-negative.
    MobiusMap(double a, double b, double c, double d);
    explicit MobiusMap(const IntMat& m);

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    double trace() const { return m_[0] + m_[3]; }

    Kind kind(double tol = 1e-12) const;

    MobiusMap operator*(const MobiusMap& o) const;
    MobiusMap inverse() const;

    HPoint apply(const HPoint& p) const;
    BoundaryPoint apply(const BoundaryPoint& p) const;

private:
    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

// Oriented line; `from` is the repelling end for an axis.
struct GeodesicLine {
    BoundaryPoint from;
    BoundaryPoint to;

    GeodesicLine() = default;
    GeodesicLine(BoundaryPoint f, BoundaryPoint t);
    GeodesicLine apply(const MobiusMap& m) const { return {m.apply(from), m.apply(to)}; }
};

double dist(const HPoint& p, const HPoint& q);
double translation_length(const MobiusMap& m);
double translation_length_from_trace(double trace);
GeodesicLine axis(const MobiusMap& m);

// Image of a boundary point in (-1, 1] under x -> (2/pi) atan x, with inf -> 1.
double cayley_chart(const BoundaryPoint& p);

constexpr double kTangencyTol = 1e-9;

// Linked-endpoint test. Throws TangencyError when two of the four endpoints are
// within tol of each other in the chart.
bool geodesics_cross(const GeodesicLine& g1, const GeodesicLine& g2, double tol = kTangencyTol);

// Point of g at signed arclength s from the foot of the perpendicular dropped from i
// after normalizing g to the imaginary axis. Used for walking along axes.
struct LineFrame {
    MobiusMap to_std;    // sends g to (0, inf), from -> 0
    MobiusMap from_std;  // inverse
    HPoint at(double s) const;
    double param(const HPoint& p) const;  // arclength coordinate of the projection onto g
};
LineFrame line_frame(const GeodesicLine& g);

// Distance from a point to a complete geodesic.
double dist_to_line(const HPoint& p, const GeodesicLine& g);

double collar_width(double core_len);
double lambert_arc_identity(double core_len, double winding, double depth);

struct CuspArc {
    double arc_len;
    double winding;
};
CuspArc cusp_arc_geometry(double R);

// Cusp injectivity radius at depth d into the cusp region: asinh(e^{-d}).
double cusp_injectivity_formula(double depth);

}  // namespace hyp
