#include "hyp/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "hyp/certify.hpp"

namespace hyp {

double trace_budget(double Lmax) { return 2.0 * std::cosh(Lmax / 2.0); }

Word congruence_word(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a * d - b * c != 1 || (a & 1) == 0 || (d & 1) == 0 || (b & 1) != 0 || (c & 1) != 0)
        throw DomainError("matrix is not in the level-2 congruence group");
    Word out;
    auto emit = [&](Letter x, std::int64_t n) {
        Letter l = n > 0 ? x : inv(x);
        for (std::int64_t i = 0; i < (n > 0 ? n : -n); ++i) out.push_back(l);
    };
    // peel generators off the left: M = g_1 ... g_r M'
    while (c != 0) {
        if (std::llabs(a) > std::llabs(c)) {
            auto n = std::int64_t(std::llround(double(a) / (2.0 * double(c))));
            a -= 2 * n * c;
            b -= 2 * n * d;
            emit(0, n);
        } else {
            auto n = std::int64_t(std::llround(double(c) / (2.0 * double(a))));
            c -= 2 * n * a;
            d -= 2 * n * b;
            emit(1, n);
        }
    }
    // M' = +-[[1, b a], [0, 1]]
    emit(0, b * a / 2);
    return free_reduce(out);
}

namespace {

struct Mat {
    std::int64_t a, b, c, d;
    Mat operator*(const Mat& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat inverse() const { return {d, -b, -c, a}; }
    std::int64_t trace() const { return a + d; }
};

constexpr Mat kR{1, 1, 0, 1};
constexpr Mat kL{1, 0, 1, 1};

// least rotation of an R/L word
bool is_least_rotation(const std::string& s) {
    for (std::size_t r = 1; r < s.size(); ++r) {
        std::string t = s.substr(r) + s.substr(0, r);
        if (t < s) return false;
    }
    return true;
}

// Lower bound on the trace of any mixed word with this prefix.
std::int64_t completion_floor(const std::string& p, const Mat& m) {
    bool mixed = p.find('R') != std::string::npos && p.find('L') != std::string::npos;
    if (mixed) return m.trace();
    return std::int64_t(p.size()) + 2;  // tr(R^n L) = n + 2
}

void soundness(const GeodesicRecord& r, SoundnessCheck& s) {
    double L = r.length;
    s.envelope = double(r.k) <= envelope_bound(L);
    s.floor = r.k < 1 || L >= hempel_floor() - 1e-12;
    s.composed = double(r.k) <= composed_bound(L).value;
    if (r.decomposition) {
        const ArcDecomposition& d = *r.decomposition;
        s.arc_count = double(d.m) <= L / (2.0 * std::numbers::ln2) + 1e-12;
        s.split = double(r.k) <= thick_bound(d.L1, d.m) + thin_bound(d) + 1e-9;
    }
}

}  // namespace

SearchResult enumerate(const SearchConfig& cfg, const std::vector<FrontierEntry>& resume) {
    if (!(cfg.Lmax >= hempel_floor() - 1e-12) || !std::isfinite(cfg.Lmax))
        throw DomainError("search needs a finite Lmax >= 2 log(1 + sqrt 2)");
    SearchResult res;
    res.trace_budget = trace_budget(cfg.Lmax);
    // |trace| <= T; traces are integers
    const auto tmax = std::int64_t(std::floor(res.trace_budget + 1e-9));
    if (tmax > 3000000000LL) throw DomainError("trace budget too large for 64-bit search");

    struct Node {
        std::string p;
        Mat m;
    };
    std::vector<Node> stack;
    if (resume.empty()) {
        // the least rotation of a mixed word starts with L
        stack.push_back({"L", kL});
    } else {
        for (auto it = resume.rbegin(); it != resume.rend(); ++it) stack.push_back({it->prefix, {it->a, it->b, it->c, it->d}});
    }

    static const std::array<Mat, 6> cosets{Mat{1, 0, 0, 1}, kR, kL, Mat{0, -1, 1, 0}, kR * kL, kL * kR};
    std::set<Word> classes;
    while (!stack.empty()) {
        if (res.nodes >= cfg.max_nodes) {
            res.complete = false;
            for (auto it = stack.rbegin(); it != stack.rend(); ++it)
                res.frontier.push_back({it->p, it->m.a, it->m.b, it->m.c, it->m.d});
            break;
        }
        Node n = std::move(stack.back());
        stack.pop_back();
        ++res.nodes;
        if (completion_floor(n.p, n.m) > tmax) continue;
        const Mat& M = n.m;
        bool mixed = n.p.find('R') != std::string::npos;
        if (mixed && is_least_rotation(n.p) && (M.b & 1) == 0 && (M.c & 1) == 0) {
            for (const Mat& h : cosets) {
                Mat X = h * M * h.inverse();
                classes.insert(CyclicWord::from_letters(congruence_word(X.a, X.b, X.c, X.d)).letters());
            }
        }
        stack.push_back({n.p + "L", M * kL});
        stack.push_back({n.p + "R", M * kR});
    }

    const SurfaceSpec tps = build_tps();
    std::vector<CyclicWord> words;
    for (const Word& w : classes) {
        CyclicWord cw = CyclicWord::from_letters(w);
        if (!cw.is_primitive()) {
            ++res.powers_skipped;
            continue;
        }
        words.push_back(cw);
    }
    res.records.resize(words.size());
    res.checks.resize(words.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < words.size(); i += step) {
            GeodesicRecord& r = res.records[i];
            r.word = words[i];
            IntMat H = tps.int_holonomy(r.word.letters());
            r.trace = H.a + H.d;
            r.trace_value = double(*r.trace);
            r.length = translation_length_from_trace(r.trace_value);
            r.k = self_intersection_combinatorial(r.word);
            r.method = Method::combinatorial;
            if (cfg.decompose) r.decomposition = decompose(r.word, tps);
            soundness(r, res.checks[i]);
        }
    };
    const int nw = std::max(1, cfg.workers);
    // warm the bound cache so workers only read it
    composed_bound(std::max(cfg.Lmax, hempel_floor()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nw; ++t) pool.emplace_back(work, std::size_t(t), std::size_t(nw));
    work(0, std::size_t(nw));
    for (auto& t : pool) t.join();

    std::vector<std::size_t> order(res.records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto tx = std::llabs(*res.records[x].trace), ty = std::llabs(*res.records[y].trace);
        if (tx != ty) return tx < ty;
        const Word &wx = res.records[x].word.letters(), &wy = res.records[y].word.letters();
        if (wx.size() != wy.size()) return wx.size() < wy.size();
        return wx < wy;
    });
    SearchResult sorted = res;
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.records[i] = res.records[order[i]];
        sorted.checks[i] = res.checks[order[i]];
    }
    return sorted;
}

std::vector<std::string> naive_classes(double T, int max_len) {
    const auto tmax = std::int64_t(std::floor(T + 1e-9));
    const SurfaceSpec tps = build_tps();
    std::set<std::string> out;
    Word w;
    auto rec = [&](auto&& self) -> void {
        if (!w.empty() && w.front() != inv(w.back())) {
            if (canonical_rotation(w) == w) {
                CyclicWord cw = CyclicWord::from_letters(w);
                IntMat H = tps.int_holonomy(w);
                auto t = std::llabs(H.a + H.d);
                if (t > 2 && t <= tmax && cw.is_primitive()) out.insert(cw.str());
            }
        }
        if (int(w.size()) == max_len) return;
        for (Letter x = 0; x < 4; ++x) {
            if (!w.empty() && x == inv(w.back())) continue;
            w.push_back(x);
            self(self);
            w.pop_back();
        }
    };
    rec(rec);
    return {out.begin(), out.end()};
}

MinLengthTable min_length_table(const SearchResult& res, long kmax) {
    if (kmax < 1) throw DomainError("kmax must be >= 1");
    MinLengthTable t;
    t.Lmax = 2.0 * std::acosh(res.trace_budget / 2.0);
    for (long k = 1; k <= kmax; ++k) {
        TableRow row;
        row.k = k;
        row.conjectured = 2.0 * std::acosh(1.0 + 2.0 * double(k));
        row.envelope = 0.5 * std::log(double(k) / 2.0);
        // records are sorted by |trace| then word, so the first hit is the argmin
        for (const GeodesicRecord& r : res.records) {
            if (r.k >= k) {
                row.min_length = r.length;
                row.word = r.word.str();
                row.trace = std::llabs(*r.trace);
                row.word_k = r.k;
                break;
            }
        }
        row.conclusive = res.complete && row.conjectured <= t.Lmax - 1e-6;
        t.rows.push_back(row);
    }
    return t;
}

const char* verdict_name(RowVerdict v) {
    switch (v) {
        case RowVerdict::matches: return "matches";
        case RowVerdict::counterexample: return "counterexample";
        case RowVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<ConjectureRow> conjecture_report(const MinLengthTable& table, const SearchConfig& cfg) {
    const SurfaceSpec tps = build_tps();
    std::vector<ConjectureRow> out;
    for (const TableRow& row : table.rows) {
        ConjectureRow c;
        c.k = row.k;
        c.word = row.word;
        if (!row.conclusive || !row.min_length) {
            c.note = "conjectured length beyond the search budget";
            out.push_back(c);
            continue;
        }
        CyclicWord cw = CyclicWord::parse(row.word);
        NumericCount nc = self_intersection_numeric(cw, tps, cfg.cutoff);
        bool agree = nc.stabilized && nc.k == row.word_k;
        const std::int64_t target = 4 * row.k + 2;
        if (row.trace == target) {
            c.verdict = RowVerdict::matches;
            c.confirmed = agree;
            if (!agree) c.note = "numeric recount disagrees with the combinatorial count";
        } else if (row.trace < target) {
            c.verdict = RowVerdict::counterexample;
            c.confirmed = agree && nc.k >= row.k;
            c.note = c.confirmed ? "shorter class confirmed by both counting methods"
                                 : "shorter class not confirmed by the numeric recount";
        } else {
            c.note = "corkscrew class missing from the corpus";
        }
        out.push_back(c);
    }
    return out;
}

nlohmann::json to_json(const MinLengthTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TableRow& r : t.rows) {
        nlohmann::json j{{"k", r.k},
                         {"conjectured", r.conjectured},
                         {"envelope", r.envelope},
                         {"conclusive", r.conclusive}};
        if (r.min_length) {
            j["min_length"] = *r.min_length;
            j["word"] = r.word;
            j["trace"] = r.trace;
            j["word_k"] = r.word_k;
        } else {
            j["min_length"] = nullptr;
        }
        rows.push_back(j);
    }
    return {{"Lmax", t.Lmax}, {"rows", rows}};
}

nlohmann::json to_json(const ConjectureRow& r) {
    nlohmann::json j{{"k", r.k}, {"verdict", verdict_name(r.verdict)}, {"word", r.word}, {"confirmed", r.confirmed}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string table_csv(const MinLengthTable& t) {
    std::ostringstream os;
    os << "k,min_length,conjectured,ratio,word,conclusive\n";
    char buf[256];
    for (const TableRow& r : t.rows) {
        if (r.min_length)
            std::snprintf(buf, sizeof buf, "%ld,%.15f,%.15f,%.15f,%s,%s\n", r.k, *r.min_length, r.conjectured,
                          *r.min_length / r.conjectured, r.word.c_str(), r.conclusive ? "true" : "false");
        else
            std::snprintf(buf, sizeof buf, "%ld,,%.15f,,,%s\n", r.k, r.conjectured, r.conclusive ? "true" : "false");
        os << buf;
    }
    return os.str();
}

std::string frontier_text(const std::vector<FrontierEntry>& f) {
    std::ostringstream os;
    for (const FrontierEntry& e : f) os << e.prefix << ' ' << e.a << ' ' << e.b << ' ' << e.c << ' ' << e.d << '\n';
    return os.str();
}

std::vector<FrontierEntry> parse_frontier(const std::string& text) {
    std::istringstream is(text);
    std::vector<FrontierEntry> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        FrontierEntry e;
        if (!(ls >> e.prefix >> e.a >> e.b >> e.c >> e.d)) throw ParseError("bad frontier line: " + line);
        if (e.prefix.find_first_not_of("RL") != std::string::npos) throw ParseError("bad frontier prefix: " + e.prefix);
        Mat m{1, 0, 0, 1};
        for (char ch : e.prefix) m = m * (ch == 'R' ? kR : kL);
        if (m.a != e.a || m.b != e.b || m.c != e.c || m.d != e.d)
            throw ParseError("frontier matrix does not match its prefix: " + e.prefix);
        out.push_back(e);
    }
    return out;
}

}  // namespace hyp
