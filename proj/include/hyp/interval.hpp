#pragma once

#include <limits>
#include <string>

namespace hyp {

// Closed interval with outward rounding. Arithmetic rounds to nearest and then
// steps one ulp outward; transcendental bounds come from MPFR with directed rounding.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit on purpose
    Interval(double l, double h);

    static Interval entire() {
        return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    }
    // Tightest enclosure of a decimal literal such as "18.12".
    static Interval from_decimal(const std::string& text);

    double width() const { return hi - lo; }
    double mid() const;
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_point() const { return lo == hi; }
};

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);

Interval hull(const Interval& x, const Interval& y);
Interval ipow(const Interval& x, int n);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sqrt(const Interval& x);
Interval sinh(const Interval& x);
Interval cosh(const Interval& x);
Interval asinh(const Interval& x);
Interval acosh(const Interval& x);

// Directed-rounding scalar helpers.
double down(double v);
double up(double v);

}  // namespace hyp
