#include "hyp/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "hyp/kernel.hpp"
#include "hyp/words.hpp"

namespace hyp {

const char* rel_name(Rel r) {
    switch (r) {
        case Rel::lt: return "<";
        case Rel::le: return "<=";
        case Rel::gt: return ">";
        case Rel::ge: return ">=";
    }
    return "?";
}

Rel parse_rel(const std::string& s) {
    if (s == "<") return Rel::lt;
    if (s == "<=") return Rel::le;
    if (s == ">") return Rel::gt;
    if (s == ">=") return Rel::ge;
    throw ParseError("unknown relation '" + s + "'");
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::refuted: return "refuted";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Interval bound_value(const std::string& text) {
    std::string t = trim(text);
    if (t == "inf" || t == "+inf") return Interval(kInf);
    if (t == "-inf") return Interval(-kInf);
    return eval_interval(parse_expr(t, {}), {});
}

// "L in [17.2, inf); m in [1, 5]"
void parse_domain(const std::string& text, std::vector<std::string>& vars, Box& box) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        auto in = part.find(" in ");
        if (in == std::string::npos) throw ParseError("domain entry needs 'x in [a, b]': " + part);
        std::string name = trim(part.substr(0, in));
        std::string range = trim(part.substr(in + 4));
        if (range.size() < 5 || (range.front() != '[' && range.front() != '(') ||
            (range.back() != ']' && range.back() != ')'))
            throw ParseError("bad range: " + range);
        auto comma = range.find(',');
        if (comma == std::string::npos) throw ParseError("bad range: " + range);
        Interval lo = bound_value(range.substr(1, comma - 1));
        Interval hi = bound_value(range.substr(comma + 1, range.size() - comma - 2));
        // the closure, widened outward by the rounding of the endpoints
        if (!(lo.lo <= hi.hi)) throw ParseError("empty range: " + range);
        if (std::find(vars.begin(), vars.end(), name) != vars.end()) throw ParseError("variable repeated: " + name);
        vars.push_back(name);
        box.emplace_back(lo.lo, hi.hi);
    }
}

bool strict(Rel r) { return r == Rel::lt || r == Rel::gt; }

enum class Decision { yes, no, unknown };

// Interval verdict for lhs REL rhs over a box.
Decision decide(const Interval& l, const Interval& r, Rel rel) {
    const Interval& small = (rel == Rel::lt || rel == Rel::le) ? l : r;
    const Interval& big = (rel == Rel::lt || rel == Rel::le) ? r : l;
    if (strict(rel)) {
        if (small.hi < big.lo) return Decision::yes;
        if (small.lo >= big.hi) return Decision::no;
    } else {
        if (small.hi <= big.lo) return Decision::yes;
        if (small.lo > big.hi) return Decision::no;
    }
    return Decision::unknown;
}

// Decision on the margin f = big - small.
Decision decide_margin(const Interval& f, Rel rel) {
    if (strict(rel)) {
        if (f.lo > 0) return Decision::yes;
        if (f.hi <= 0) return Decision::no;
    } else {
        if (f.lo >= 0) return Decision::yes;
        if (f.hi < 0) return Decision::no;
    }
    return Decision::unknown;
}

std::string hp_str(const HPFloat& v) { return v.str(30, std::ios_base::scientific); }

// ---------------------------------------------------------------- tail form
// Terms coef * L^p * exp(rate * L) with L-free coefficients.

std::optional<Rational> exact_rational(const Expr& e);

// e = sum k_i log(q_i) with rational k_i, q_i > 0; keyed by q_i.
using LogLinear = std::map<Rational, Rational>;

std::optional<LogLinear> log_linear(const Expr& e) {
    switch (e->op) {
        case Op::log: {
            auto q = exact_rational(e->lhs);
            if (!q || *q <= 0) return std::nullopt;
            if (*q == 1) return LogLinear{};
            return LogLinear{{*q, Rational(1)}};
        }
        case Op::add:
        case Op::sub: {
            auto a = log_linear(e->lhs), b = log_linear(e->rhs);
            if (!a || !b) return std::nullopt;
            for (auto& [q, k] : *b) (*a)[q] += e->op == Op::add ? k : -k;
            return a;
        }
        case Op::neg: {
            auto a = log_linear(e->lhs);
            if (!a) return std::nullopt;
            for (auto& kv : *a) kv.second = -kv.second;
            return a;
        }
        case Op::mul:
        case Op::div: {
            auto r = exact_rational(e->rhs);
            auto a = log_linear(e->lhs);
            if (e->op == Op::mul && !(r && a)) {
                r = exact_rational(e->lhs);
                a = log_linear(e->rhs);
            }
            if (!r || !a || (e->op == Op::div && *r == 0)) return std::nullopt;
            for (auto& kv : *a) {
                if (e->op == Op::mul)
                    kv.second *= *r;
                else
                    kv.second /= *r;
            }
            return a;
        }
        default: {
            auto r = exact_rational(e);
            if (r && *r == 0) return LogLinear{};
            return std::nullopt;
        }
    }
}

std::optional<Rational> exact_rational(const Expr& e) {
    switch (e->op) {
        case Op::constant: return e->exact;
        case Op::exp: {
            // exp(sum k log q) with integer k
            auto ll = log_linear(e->lhs);
            if (!ll) return std::nullopt;
            Rational out = 1;
            for (const auto& [q, k] : *ll) {
                if (k == 0) continue;
                if (denominator(k) != 1 || abs(numerator(k)) > 64) return std::nullopt;
                int n = static_cast<int>(numerator(k));
                for (int i = 0; i < std::abs(n); ++i) {
                    if (n > 0)
                        out *= q;
                    else
                        out /= q;
                }
            }
            return out;
        }
        case Op::add:
        case Op::sub:
        case Op::mul:
        case Op::div: {
            auto a = exact_rational(e->lhs), b = exact_rational(e->rhs);
            if (!a || !b) return std::nullopt;
            if (e->op == Op::add) return *a + *b;
            if (e->op == Op::sub) return *a - *b;
            if (e->op == Op::mul) return *a * *b;
            if (*b == 0) return std::nullopt;
            return *a / *b;
        }
        case Op::neg: {
            auto a = exact_rational(e->lhs);
            if (!a) return std::nullopt;
            return -*a;
        }
        case Op::pow: {
            auto a = exact_rational(e->lhs);
            if (!a || (*a == 0 && e->exponent < 0)) return std::nullopt;
            Rational r = 1;
            for (int k = 0; k < std::abs(e->exponent); ++k) r *= *a;
            return e->exponent < 0 ? 1 / r : r;
        }
        default: return std::nullopt;
    }
}

Expr rational_expr(const Rational& r) {
    auto n = make_const(numerator(r) < 0 ? (-numerator(r)).str() : numerator(r).str());
    Expr e = make_binary(Op::div, n, make_const(denominator(r).str()));
    return numerator(r) < 0 ? make_unary(Op::neg, e) : e;
}

struct Rate {
    std::optional<Rational> exact;
    Expr sym;  // set when not rational
    Interval value;

    static Rate zero() { return {Rational(0), nullptr, Interval(0.0)}; }
    static Rate of(const Expr& e) {
        if (auto r = exact_rational(e)) return {r, nullptr, eval_interval(e, {})};
        return {std::nullopt, e, eval_interval(e, {})};
    }
    Expr as_expr() const { return exact ? rational_expr(*exact) : sym; }
    Rate operator+(const Rate& o) const {
        if (exact && o.exact) return {*exact + *o.exact, nullptr, value + o.value};
        if (exact && *exact == 0) return o;
        if (o.exact && *o.exact == 0) return *this;
        return {std::nullopt, make_binary(Op::add, as_expr(), o.as_expr()), value + o.value};
    }
    Rate scaled(int n) const {
        if (exact) return {*exact * n, nullptr, value * Interval(double(n))};
        return {std::nullopt, make_binary(Op::mul, rational_expr(Rational(n)), sym), value * Interval(double(n))};
    }
    Rate operator-() const {
        if (exact) return {-*exact, nullptr, -value};
        return {std::nullopt, make_unary(Op::neg, sym), -value};
    }
};

struct TailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -1, 0, 1; throws when two rates cannot be told apart
int compare(const Rate& a, const Rate& b) {
    if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*a.exact > *b.exact ? 1 : 0);
    if (!a.exact && !b.exact && to_string(a.sym) == to_string(b.sym)) return 0;
    if (a.value.hi < b.value.lo) return -1;
    if (a.value.lo > b.value.hi) return 1;
    throw TailError("rates not separable");
}

struct Term {
    Expr coef;
    int p = 0;
    Rate rate = Rate::zero();
};
using ExpPoly = std::vector<Term>;

Expr one() { return make_const("1"); }

ExpPoly negate(ExpPoly f) {
    for (Term& t : f) t.coef = make_unary(Op::neg, t.coef);
    return f;
}

ExpPoly multiply(const ExpPoly& f, const ExpPoly& g) {
    ExpPoly out;
    for (const Term& a : f)
        for (const Term& b : g) out.push_back({make_binary(Op::mul, a.coef, b.coef), a.p + b.p, a.rate + b.rate});
    return out;
}

ExpPoly to_exppoly(const Expr& e, int var);

// arg = alpha * L + beta with L-free alpha, beta
std::pair<Expr, Expr> affine(const Expr& arg, int var) {
    ExpPoly f = to_exppoly(arg, var);
    Expr alpha, beta;
    for (const Term& t : f) {
        if (!t.rate.exact || *t.rate.exact != 0 || t.p < 0 || t.p > 1) throw TailError("non-affine exponent");
        Expr& slot = t.p == 1 ? alpha : beta;
        slot = slot ? make_binary(Op::add, slot, t.coef) : t.coef;
    }
    return {alpha, beta};
}

ExpPoly exp_terms(const Expr& arg, int var, int sign) {
    auto [alpha, beta] = affine(arg, var);
    Term t;
    t.coef = beta ? make_unary(Op::exp, sign > 0 ? beta : make_unary(Op::neg, beta)) : one();
    t.rate = alpha ? Rate::of(alpha) : Rate::zero();
    if (sign < 0) t.rate = -t.rate;
    return {t};
}

ExpPoly to_exppoly(const Expr& e, int var) {
    if (!depends_on(e, var)) return {{e, 0, Rate::zero()}};
    switch (e->op) {
        case Op::variable: return {{one(), 1, Rate::zero()}};
        case Op::add: {
            ExpPoly a = to_exppoly(e->lhs, var), b = to_exppoly(e->rhs, var);
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
        case Op::sub: {
            ExpPoly a = to_exppoly(e->lhs, var), b = negate(to_exppoly(e->rhs, var));
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
        case Op::neg: return negate(to_exppoly(e->lhs, var));
        case Op::mul: return multiply(to_exppoly(e->lhs, var), to_exppoly(e->rhs, var));
        case Op::div: {
            ExpPoly a = to_exppoly(e->lhs, var);
            if (!depends_on(e->rhs, var)) {
                for (Term& t : a) t.coef = make_binary(Op::div, t.coef, e->rhs);
                return a;
            }
            ExpPoly b = to_exppoly(e->rhs, var);
            if (b.size() != 1) throw TailError("division by a sum");
            for (Term& t : a) {
                t.coef = make_binary(Op::div, t.coef, b[0].coef);
                t.p -= b[0].p;
                t.rate = t.rate + (-b[0].rate);
            }
            return a;
        }
        case Op::pow: {
            ExpPoly base = to_exppoly(e->lhs, var);
            int n = e->exponent;
            if (n < 0) {
                if (base.size() != 1) throw TailError("negative power of a sum");
                Term t = base[0];
                return {{make_pow(t.coef, n), t.p * n, t.rate.scaled(n)}};
            }
            ExpPoly acc{{one(), 0, Rate::zero()}};
            for (int k = 0; k < n; ++k) acc = multiply(acc, base);
            return acc;
        }
        case Op::exp: return exp_terms(e->lhs, var, 1);
        case Op::sinh:
        case Op::cosh: {
            ExpPoly a = exp_terms(e->lhs, var, 1), b = exp_terms(e->lhs, var, -1);
            Expr half = make_const("0.5");
            a[0].coef = make_binary(Op::mul, half, a[0].coef);
            b[0].coef = make_binary(Op::mul, e->op == Op::sinh ? make_unary(Op::neg, half) : half, b[0].coef);
            return {a[0], b[0]};
        }
        default: throw TailError(std::string("unsupported node in tail form: ") + op_name(e->op));
    }
}

struct TailTerm {
    Interval coef;
    int q = 0;        // power of L after normalization (<= 0 when s == 0)
    bool s_zero = false;
    Interval s;       // decay rate >= 0
};

// Enclosure of L^q exp(-s L) over L in [La, Lb], La > 0, Lb may be inf.
Interval psi(const TailTerm& t, double La, double Lb) {
    auto at = [&](double L, bool upper) -> double {
        if (L == kInf) {
            if (t.s_zero && t.q == 0) return 1.0;
            return 0.0;
        }
        Interval v = ipow(Interval(L), t.q);
        if (!t.s_zero) {
            double s = upper ? std::max(t.s.lo, 0.0) : t.s.hi;
            v = v * exp(-(Interval(s) * Interval(L)));
        }
        return upper ? v.hi : v.lo;
    };
    if (t.s_zero) {
        if (t.q == 0) return Interval(1.0);
        return {at(Lb, false), at(La, true)};  // q < 0: decreasing
    }
    if (t.q <= 0) return {at(Lb, false), at(La, true)};
    // rises to L = q/s, then falls
    double s_lo = std::max(t.s.lo, 0.0);
    double lo = std::min(at(La, false), at(Lb, false));
    if (s_lo > 0.0 && La >= double(t.q) / s_lo) return {at(Lb, false), at(La, true)};
    if (Lb <= double(t.q) / t.s.hi) return {at(La, false), at(Lb, true)};
    if (s_lo <= 0.0) return {lo, kInf};
    Interval peak = ipow(Interval(double(t.q)) / (Interval(s_lo) * exp(Interval(1.0))), t.q);
    return {lo, peak.hi};
}

struct TailForm {
    std::vector<TailTerm> terms;
};

// f = big - small as a normalized tail form, or nullopt when it does not fit.
std::optional<TailForm> tail_form(const Claim& c) {
    try {
        bool less = c.rel == Rel::lt || c.rel == Rel::le;
        Expr f = less ? make_binary(Op::sub, c.rhs, c.lhs) : make_binary(Op::sub, c.lhs, c.rhs);
        ExpPoly poly = to_exppoly(f, 0);
        // combine equal (rate, p)
        ExpPoly merged;
        for (const Term& t : poly) {
            bool done = false;
            for (Term& m : merged) {
                if (m.p == t.p && compare(m.rate, t.rate) == 0) {
                    m.coef = make_binary(Op::add, m.coef, t.coef);
                    done = true;
                    break;
                }
            }
            if (!done) merged.push_back(t);
        }
        // exact cancellations decide the leading power
        std::erase_if(merged, [](const Term& t) {
            auto r = exact_rational(t.coef);
            return r && *r == 0;
        });
        if (merged.empty()) return std::nullopt;
        Rate R = merged[0].rate;
        for (const Term& t : merged)
            if (compare(t.rate, R) > 0) R = t.rate;
        int J = std::numeric_limits<int>::min();
        for (const Term& t : merged)
            if (compare(t.rate, R) == 0) J = std::max(J, t.p);
        TailForm out;
        for (const Term& t : merged) {
            TailTerm tt;
            tt.coef = eval_interval(t.coef, {});
            tt.q = t.p - J;
            tt.s_zero = compare(t.rate, R) == 0;
            tt.s = tt.s_zero ? Interval(0.0) : R.value - t.rate.value;
            out.terms.push_back(tt);
        }
        return out;
    } catch (const TailError&) {
        return std::nullopt;
    } catch (const PartialDomainError&) {
        return std::nullopt;
    }
}

Interval eval_tail(const TailForm& tf, double La, double Lb) {
    Interval sum(0.0);
    for (const TailTerm& t : tf.terms) sum = sum + t.coef * psi(t, La, Lb);
    return sum;
}

struct Search {
    const Claim& c;
    const Budget& budget;
    CertResult res;

    // Point check at 100 digits, confirmed by a point-box enclosure.
    bool try_witness(const std::vector<double>& pt) {
        for (std::size_t i = 0; i < pt.size(); ++i)
            if (!std::isfinite(pt[i]) || pt[i] < c.domain[i].lo || pt[i] > c.domain[i].hi) return false;
        std::vector<HPFloat> hp(pt.begin(), pt.end());
        try {
            if (holds_hp(c, hp)) return false;
            Box box(pt.begin(), pt.end());
            Interval l = eval_interval(c.lhs, box), r = eval_interval(c.rhs, box);
            if (decide(l, r, c.rel) != Decision::no) return false;
            res.verdict = Verdict::refuted;
            res.witness = pt;
            res.witness_lhs = hp_str(eval_hp(c.lhs, hp));
            res.witness_rhs = hp_str(eval_hp(c.rhs, hp));
            res.witness_lhs_enc = l;
            res.witness_rhs_enc = r;
            return true;
        } catch (const PartialDomainError&) {
            return false;
        }
    }

    bool try_corners() {
        std::size_t n = c.domain.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            std::vector<double> pt(n);
            for (std::size_t i = 0; i < n; ++i) pt[i] = (mask >> i & 1) ? c.domain[i].hi : c.domain[i].lo;
            if (try_witness(pt)) return true;
        }
        return false;
    }

    void run_boxes() {
        struct Item {
            Box box;
            int depth;
        };
        std::vector<Item> stack{{c.domain, 0}};
        while (!stack.empty()) {
            Item it = std::move(stack.back());
            stack.pop_back();
            if (++res.boxes > budget.max_leaves) {
                res.residual = it.box;
                res.note = "leaf budget exhausted";
                return;
            }
            Decision d = Decision::unknown;
            try {
                d = decide(eval_interval(c.lhs, it.box), eval_interval(c.rhs, it.box), c.rel);
            } catch (const PartialDomainError&) {
            }
            if (d == Decision::yes) {
                ++res.leaves;
                continue;
            }
            std::vector<double> mid;
            for (const Interval& x : it.box) mid.push_back(x.mid());
            if (try_witness(mid)) return;
            if (it.depth >= budget.max_depth || it.box.empty()) {
                res.residual = it.box;
                res.note = "depth cap reached";
                return;
            }
            std::size_t k = 0;
            double best = -1.0;
            for (std::size_t i = 0; i < it.box.size(); ++i) {
                double span = c.domain[i].width();
                double w = (std::isfinite(span) && span > 0) ? it.box[i].width() / span : it.box[i].width();
                if (w > best) {
                    best = w;
                    k = i;
                }
            }
            double m = it.box[k].mid();
            if (!(m > it.box[k].lo && m < it.box[k].hi)) {
                res.residual = it.box;
                res.note = "box cannot be split further";
                return;
            }
            Item hi = it, lo = std::move(it);
            lo.box[k].hi = m;
            hi.box[k].lo = m;
            ++lo.depth;
            ++hi.depth;
            stack.push_back(std::move(hi));
            stack.push_back(std::move(lo));
        }
        res.verdict = Verdict::verified;
    }

    // One unbounded variable: bisect u = exp(-L/4) over [0, exp(-L0/4)].
    void run_tail(const TailForm& tf) {
        res.tail = true;
        const double L0 = c.domain[0].lo;
        const double u0 = exp(Interval(-L0 / 4.0)).hi;
        struct Item {
            double ua, ub;
            int depth;
        };
        std::vector<Item> stack{{0.0, u0, 0}};
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            double La = it.ub >= u0 ? L0 : std::max(L0, (Interval(-4.0) * log(Interval(it.ub))).lo);
            double Lb = it.ua <= 0.0 ? kInf : (Interval(-4.0) * log(Interval(it.ua))).hi;
            if (++res.boxes > budget.max_leaves) {
                res.residual = {Interval(La, Lb)};
                res.note = "leaf budget exhausted in the tail";
                return;
            }
            if (decide_margin(eval_tail(tf, La, Lb), c.rel) == Decision::yes) {
                ++res.leaves;
                continue;
            }
            double um = 0.5 * (it.ua + it.ub);
            if (um > 0.0 && try_witness({std::max(L0, -4.0 * std::log(um))})) return;
            if (it.depth >= budget.max_depth) {
                res.residual = {Interval(La, Lb)};
                res.note = "depth cap reached in the tail";
                return;
            }
            stack.push_back({um, it.ub, it.depth + 1});
            stack.push_back({it.ua, um, it.depth + 1});
        }
        res.verdict = Verdict::verified;
    }
};

}  // namespace

bool holds_hp(const Claim& c, const std::vector<HPFloat>& pt) {
    HPFloat l = eval_hp(c.lhs, pt), r = eval_hp(c.rhs, pt);
    switch (c.rel) {
        case Rel::lt: return l < r;
        case Rel::le: return l <= r;
        case Rel::gt: return l > r;
        case Rel::ge: return l >= r;
    }
    return false;
}

Claim make_claim(const std::string& id, const std::string& lhs, const std::string& rel, const std::string& rhs,
                 const std::string& domain) {
    Claim c;
    c.id = id;
    c.domain_text = domain;
    parse_domain(domain, c.vars, c.domain);
    c.lhs_text = lhs;
    c.rhs_text = rhs;
    c.lhs = parse_expr(lhs, c.vars);
    c.rhs = parse_expr(rhs, c.vars);
    c.rel = parse_rel(rel);
    return c;
}

std::vector<Claim> parse_claims(const std::string& text) {
    std::vector<Claim> out;
    std::map<std::string, std::string> rec;
    std::set<std::string> ids;
    int line_no = 0, start = 0;
    auto flush = [&] {
        if (rec.empty()) return;
        for (const char* k : {"id", "lhs", "rel", "rhs", "domain"})
            if (!rec.count(k))
                throw ParseError("record at line " + std::to_string(start) + " lacks '" + k + "'");
        Claim c;
        try {
            c = make_claim(rec["id"], rec["lhs"], rec["rel"], rec["rhs"], rec["domain"]);
        } catch (const std::exception& e) {
            throw ParseError("claim '" + rec["id"] + "': " + e.what());
        }
        c.cite = rec["cite"];
        c.anchor = rec["anchor"];
        if (!ids.insert(c.id).second) throw ParseError("duplicate claim id '" + c.id + "'");
        out.push_back(std::move(c));
        rec.clear();
    };
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) {
            flush();
            continue;
        }
        if (t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected 'key: value'");
        std::string key = trim(t.substr(0, colon)), value = trim(t.substr(colon + 1));
        static const std::set<std::string> keys{"id", "lhs", "rel", "rhs", "domain", "cite", "anchor"};
        if (!keys.count(key)) throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (rec.empty()) start = line_no;
        if (rec.count(key)) throw ParseError("line " + std::to_string(line_no) + ": repeated key '" + key + "'");
        rec[key] = value;
    }
    flush();
    return out;
}

std::vector<Claim> load_claims(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open claims file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_claims(ss.str());
}

CertResult certify(const Claim& c, const Budget& budget) {
    auto t0 = std::chrono::steady_clock::now();
    Search s{c, budget, {}};
    if (!s.try_corners()) {
        bool unbounded = false;
        for (const Interval& x : c.domain) unbounded = unbounded || std::isinf(x.hi) || std::isinf(x.lo);
        std::optional<TailForm> tf;
        if (unbounded && c.vars.size() == 1 && std::isinf(c.domain[0].hi) && c.domain[0].lo > 0) tf = tail_form(c);
        if (tf)
            s.run_tail(*tf);
        else
            s.run_boxes();
    }
    s.res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s.res;
}

nlohmann::json to_json(const Claim& c, const CertResult& r) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    nlohmann::json j{{"id", c.id},
                     {"lhs", c.lhs_text},
                     {"rel", rel_name(c.rel)},
                     {"rhs", c.rhs_text},
                     {"domain", c.domain_text},
                     {"cite", c.cite},
                     {"anchor", c.anchor},
                     {"verdict", verdict_name(r.verdict)},
                     {"subdivisions", r.leaves},
                     {"boxes", r.boxes},
                     {"tail_substitution", r.tail},
                     {"seconds", r.seconds}};
    if (r.verdict == Verdict::refuted) {
        nlohmann::json w = nlohmann::json::object();
        for (std::size_t i = 0; i < r.witness.size(); ++i) w[c.vars[i]] = r.witness[i];
        j["witness"] = {{"point", w},
                        {"lhs", r.witness_lhs},
                        {"rhs", r.witness_rhs},
                        {"lhs_enclosure", {num(r.witness_lhs_enc.lo), num(r.witness_lhs_enc.hi)}},
                        {"rhs_enclosure", {num(r.witness_rhs_enc.lo), num(r.witness_rhs_enc.hi)}}};
    }
    if (r.verdict == Verdict::inconclusive) {
        nlohmann::json box = nlohmann::json::array();
        for (const Interval& x : r.residual) box.push_back({num(x.lo), num(x.hi)});
        j["residual_box"] = box;
        j["note"] = r.note;
    }
    return j;
}

}  // namespace hyp
