#include "hyp/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "hyp/kernel.hpp"

namespace hyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Scratch {
    mpfr_t x, r;
    Scratch() {
        mpfr_init2(x, 53);
        mpfr_init2(r, 53);
    }
    ~Scratch() {
        mpfr_clear(x);
        mpfr_clear(r);
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

double rounded(UnaryFn f, double v, mpfr_rnd_t rnd) {
    auto& s = scratch();
    mpfr_set_d(s.x, v, MPFR_RNDN);  // exact, 53 bits
    f(s.r, s.x, rnd);
    return mpfr_get_d(s.r, rnd);
}

double pow_rounded(double v, long n, mpfr_rnd_t rnd) {
    auto& s = scratch();
    mpfr_set_d(s.x, v, MPFR_RNDN);
    mpfr_pow_si(s.r, s.x, n, rnd);
    return mpfr_get_d(s.r, rnd);
}

double zero_if_nan(double v) { return std::isnan(v) ? 0.0 : v; }

// Argument may dip below a domain edge by rounding slop only.
bool slop_below(double lo, double edge, double hi) {
    double scale = std::max({1.0, std::abs(edge), std::abs(hi)});
    return lo >= edge - 1e-12 * scale;
}

}  // namespace

double down(double v) { return v == -kInf ? v : std::nextafter(v, -kInf); }
double up(double v) { return v == kInf ? v : std::nextafter(v, kInf); }

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h) throw DomainError("invalid interval bounds");
}

Interval Interval::from_decimal(const std::string& text) {
    auto& s = scratch();
    if (mpfr_set_str(s.x, text.c_str(), 10, MPFR_RNDD) != 0)
        throw DomainError("bad decimal literal: " + text);
    double l = mpfr_get_d(s.x, MPFR_RNDD);
    mpfr_set_str(s.x, text.c_str(), 10, MPFR_RNDU);
    return {l, mpfr_get_d(s.x, MPFR_RNDU)};
}

double Interval::mid() const {
    if (lo == -kInf && hi == kInf) return 0.0;
    if (lo == -kInf) return hi > 0 ? -hi : 2.0 * hi - 1.0;
    if (hi == kInf) return lo < 0 ? -lo : 2.0 * lo + 1.0;
    return lo / 2.0 + hi / 2.0;
}

Interval operator+(const Interval& x, const Interval& y) {
    return {down(x.lo + y.lo), up(x.hi + y.hi)};
}

Interval operator-(const Interval& x, const Interval& y) {
    return {down(x.lo - y.hi), up(x.hi - y.lo)};
}

Interval operator-(const Interval& x) { return {-x.hi, -x.lo}; }

Interval operator*(const Interval& x, const Interval& y) {
    double p[4] = {zero_if_nan(x.lo * y.lo), zero_if_nan(x.lo * y.hi), zero_if_nan(x.hi * y.lo),
                   zero_if_nan(x.hi * y.hi)};
    auto [mn, mx] = std::minmax_element(p, p + 4);
    return {down(*mn), up(*mx)};
}

Interval operator/(const Interval& x, const Interval& y) {
    if (y.lo <= 0.0 && y.hi >= 0.0) throw DomainError("division by an interval containing zero");
    double p[4] = {x.lo / y.lo, x.lo / y.hi, x.hi / y.lo, x.hi / y.hi};
    for (double& v : p) v = zero_if_nan(v);
    auto [mn, mx] = std::minmax_element(p, p + 4);
    return {down(*mn), up(*mx)};
}

Interval hull(const Interval& x, const Interval& y) {
    return {std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
}

Interval ipow(const Interval& x, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / ipow(x, -n);
    if (n == 1) return x;
    if (n % 2 == 1) return {pow_rounded(x.lo, n, MPFR_RNDD), pow_rounded(x.hi, n, MPFR_RNDU)};
    double a = std::abs(x.lo), b = std::abs(x.hi);
    double small = (x.lo <= 0.0 && x.hi >= 0.0) ? 0.0 : std::min(a, b);
    return {pow_rounded(small, n, MPFR_RNDD), pow_rounded(std::max(a, b), n, MPFR_RNDU)};
}

Interval exp(const Interval& x) {
    return {rounded(mpfr_exp, x.lo, MPFR_RNDD), rounded(mpfr_exp, x.hi, MPFR_RNDU)};
}

Interval log(const Interval& x) {
    if (!(x.hi > 0.0) || !slop_below(x.lo, 0.0, x.hi)) throw DomainError("log argument not positive");
    double l = x.lo > 0.0 ? rounded(mpfr_log, x.lo, MPFR_RNDD) : -kInf;
    return {l, rounded(mpfr_log, x.hi, MPFR_RNDU)};
}

Interval sqrt(const Interval& x) {
    if (!(x.hi >= 0.0) || !slop_below(x.lo, 0.0, x.hi)) throw DomainError("sqrt argument negative");
    return {rounded(mpfr_sqrt, std::max(x.lo, 0.0), MPFR_RNDD), rounded(mpfr_sqrt, x.hi, MPFR_RNDU)};
}

Interval sinh(const Interval& x) {
    return {rounded(mpfr_sinh, x.lo, MPFR_RNDD), rounded(mpfr_sinh, x.hi, MPFR_RNDU)};
}

Interval cosh(const Interval& x) {
    if (x.lo >= 0.0) return {rounded(mpfr_cosh, x.lo, MPFR_RNDD), rounded(mpfr_cosh, x.hi, MPFR_RNDU)};
    if (x.hi <= 0.0) return {rounded(mpfr_cosh, x.hi, MPFR_RNDD), rounded(mpfr_cosh, x.lo, MPFR_RNDU)};
    double m = std::max(-x.lo, x.hi);
    return {1.0, rounded(mpfr_cosh, m, MPFR_RNDU)};
}

Interval asinh(const Interval& x) {
    return {rounded(mpfr_asinh, x.lo, MPFR_RNDD), rounded(mpfr_asinh, x.hi, MPFR_RNDU)};
}

Interval acosh(const Interval& x) {
    if (!(x.hi >= 1.0) || !slop_below(x.lo, 1.0, x.hi)) throw DomainError("acosh argument below 1");
    return {rounded(mpfr_acosh, std::max(x.lo, 1.0), MPFR_RNDD), rounded(mpfr_acosh, x.hi, MPFR_RNDU)};
}

}  // namespace hyp
