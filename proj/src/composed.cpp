#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "hyp/certify.hpp"
#include "hyp/kernel.hpp"

namespace hyp {

MaximizerReport maximizer_check(int m0, int m2, double L2p, int steps) {
    if (m0 < 1 || m0 > 8 || m2 < 0 || !(L2p > 0) || steps < 1)
        throw DomainError("maximizer_check needs 1 <= m0 <= 8, m2 >= 0, L2p > 0");
    const int m = m0 + m2;
    const double h = L2p / steps;
    std::vector<double> coef(static_cast<std::size_t>(m0)), sh(static_cast<std::size_t>(steps) + 1);
    for (int j = 1; j <= m0; ++j) coef[std::size_t(j - 1)] = double(2 * m + 1 - 2 * j);
    for (int k = 0; k <= steps; ++k) sh[std::size_t(k)] = std::sinh(k * h);

    MaximizerReport rep;
    rep.m0 = m0;
    rep.m2 = m2;
    rep.L2p = L2p;
    rep.steps = steps;
    rep.best_value = -1.0;
    std::vector<int> k(static_cast<std::size_t>(m0)), best_k;
    // nondecreasing k_1 <= ... <= k_m0 summing to steps
    auto rec = [&](auto&& self, int j, int lo, int left) -> void {
        if (j == m0 - 1) {
            if (left < lo) return;
            k[std::size_t(j)] = left;
            double v = 0.0;
            for (int i = 0; i < m0; ++i) v += coef[std::size_t(i)] * sh[std::size_t(k[std::size_t(i)])];
            if (v > rep.best_value) {
                rep.best_value = v;
                best_k = k;
            }
            return;
        }
        int slots = m0 - j;
        for (int x = lo; x * slots <= left; ++x) {
            k[std::size_t(j)] = x;
            self(self, j + 1, x, left - x);
        }
    };
    rec(rec, 0, 0, steps);
    for (int x : best_k) rep.best.push_back(x * h);

    // nearest pattern (0,..,0, L2p/m1 repeated m1 times)
    rep.pattern_distance = std::numeric_limits<double>::infinity();
    for (int m1 = 1; m1 <= m0; ++m1) {
        double v = L2p / m1, d = 0.0, val = 0.0;
        for (int i = 0; i < m0; ++i) {
            double p = i >= m0 - m1 ? v : 0.0;
            d = std::max(d, std::abs(rep.best[std::size_t(i)] - p));
            val += coef[std::size_t(i)] * std::sinh(p);
        }
        if (d < rep.pattern_distance) {
            rep.pattern_distance = d;
            rep.m1 = m1;
            rep.pattern_value = val;
        }
    }
    rep.matches = rep.pattern_distance <= h * (1.0 + 1e-9);
    return rep;
}

double closing_display(double L) {
    double t = 25.0 / 12.0 * L + 1.0;
    return 1.0 + 2.0 * std::sinh(L / 2.0) + 0.5 * t * t;
}

namespace {

constexpr double kCell = 0.1;
constexpr int kCellsPerUnit = 10;

struct Cache {
    std::mutex mu;
    std::vector<ComposedBound> raw;  // raw[n]: configurations with total length n * kCell
};

Cache& cache() {
    static Cache c;
    return c;
}

double upper(const Interval& x) { return x.hi; }

// Max over cells of the composed right-hand side for total length Lt = n * kCell.
ComposedBound raw_bound(int n) {
    const Interval log2 = log(Interval(2.0));
    const Interval Lt = Interval(double(n)) * Interval::from_decimal("0.1");
    const int mmax = int(std::floor((Lt / (Interval(2.0) * log2)).hi));
    ComposedBound best;
    best.grid_L = n * kCell;
    auto thick = [&](const Interval& L1, int m) {
        Interval t = Interval::from_decimal("25") / Interval(12.0) * L1 + Interval(double(std::max(m, 1)));
        return Interval(0.5) * t * t;
    };
    auto consider = [&](double v, int m, int m0, int m1, int m2, double a, double b) {
        if (v > best.value) {
            best.value = v;
            best.m = m;
            best.m0 = m0;
            best.m1 = m1;
            best.m2 = m2;
            best.L2p = a;
            best.L2pp = b;
        }
    };
    // empty thin part
    consider(upper(thick(Lt, 0)), 0, 0, 0, 0, 0.0, 0.0);
    const Interval cell = Interval::from_decimal("0.1");
    std::vector<Interval> S(std::size_t(n) + 1);  // L2pp e^{L2pp/4} at the cell top
    for (int j = 0; j <= n; ++j) {
        Interval top = Interval(double(j + 1)) * cell;
        S[std::size_t(j)] = top * exp(top / Interval(4.0));
    }
    std::vector<std::vector<Interval>> E(std::size_t(n) + 1, std::vector<Interval>(std::size_t(mmax) + 1));
    for (int i = 0; i <= n; ++i)
        for (int m1 = 1; m1 <= mmax; ++m1)
            E[std::size_t(i)][std::size_t(m1)] = exp(Interval(double(i + 1)) * cell / Interval(2.0 * m1));
    for (int i = 0; i <= n; ++i) {
        const Interval p_lo = Interval(double(i)) * cell;
        for (int j = 0; i + j <= n; ++j) {
            const Interval q_lo = Interval(double(j)) * cell, q_hi = Interval(double(j + 1)) * cell;
            const Interval L1 = Lt - p_lo - q_lo;  // largest L1 in the cell
            // special arcs: each at least 2 log 2 long
            const int m2cap = int(std::floor((q_hi / (Interval(2.0) * log2)).hi));
            for (int m = 1; m <= mmax; ++m) {
                // every thin arc is flanked by thick arcs of total length >= 2 log 2 each
                if (L1.hi < (Interval(2.0 * m) * log2).lo) continue;
                const Interval T = thick(L1, m);
                const double mm = double(m) * m - m;
                // m0 = 0: only special arcs, L2p = 0
                if (i == 0 && m <= m2cap) consider(upper(T + S[std::size_t(j)] + Interval(mm)), m, 0, 0, m, 0.0, j * kCell);
                for (int m1 = 1; m1 <= m; ++m1) {
                    int m2 = std::min(m - m1, m2cap);
                    if (m2 == 0 && j > 0) {
                        // no special arc, so L2pp must vanish: only the j == 0 cell
                        continue;
                    }
                    Interval v = T + Interval(double(m1) * m1 + 2.0 * m1 * m2) * E[std::size_t(i)][std::size_t(m1)] +
                                 Interval(mm);
                    if (m2 > 0) v = v + S[std::size_t(j)];
                    consider(upper(v), m, m - m2, m1, m2, i * kCell, j * kCell);
                }
            }
        }
    }
    return best;
}

}  // namespace

ComposedBound composed_bound(double L) {
    if (!(L >= 2.0 * std::log(1.0 + std::numbers::sqrt2) - 1e-12) || !std::isfinite(L))
        throw DomainError("composed_bound needs L >= 2 log(1 + sqrt 2)");
    // round up to the grid; totals below the grid point are covered since every term grows with length
    int n = int(std::ceil(L * kCellsPerUnit - 1e-9));
    if (n * kCell < L) ++n;
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    while (int(c.raw.size()) <= n) {
        ComposedBound b = raw_bound(int(c.raw.size()));
        if (!c.raw.empty() && c.raw.back().value > b.value) {
            // running max keeps B nondecreasing
            double v = c.raw.back().value;
            b = c.raw.back();
            b.value = v;
            b.grid_L = int(c.raw.size()) * kCell;
        }
        c.raw.push_back(b);
    }
    ComposedBound out = c.raw[std::size_t(n)];
    out.L = L;
    return out;
}

}  // namespace hyp
