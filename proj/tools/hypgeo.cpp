#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyp/certify.hpp"
#include "hyp/intersect.hpp"
#include "hyp/search.hpp"

#ifndef HYPGEO_DATA_DIR
#define HYPGEO_DATA_DIR "data"
#endif

using nlohmann::json;
using namespace hyp;

namespace {

// 0 ok / verified, 1 mathematical negative, 2 usage or parse
constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

int fail(const char* type, const std::string& msg, int code) {
    std::cerr << json{{"error", {{"type", type}, {"message", msg}}}}.dump() << "\n";
    return code;
}

std::pair<long, long> parse_k_range(const std::string& s) {
    auto to_long = [&](const std::string& t) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            throw UsageError("bad k '" + s + "'");
        }
        if (used != t.size()) throw UsageError("bad k '" + s + "'");
        return v;
    };
    auto dots = s.find("..");
    long lo = 0, hi = 0;
    if (dots == std::string::npos) {
        lo = hi = to_long(s);
    } else {
        lo = to_long(s.substr(0, dots));
        hi = to_long(s.substr(dots + 2));
    }
    if (lo < 1 || hi < lo) throw UsageError("k must be >= 1 (got '" + s + "')");
    return {lo, hi};
}

struct Options {
    std::string numeric = "double";
    int workers = 1;

    // corkscrew
    std::string k_range;
    bool corkscrew_json = false;

    // certify / ledger-list
    std::string claims_file;
    std::vector<std::string> ids;
    bool no_timing = false;
    long max_leaves = Budget{}.max_leaves;
    int max_depth = Budget{}.max_depth;
    bool list_json = false;

    // word commands
    std::string word, surface = "tps", method = "both";
    int cutoff = 0;

    // search
    double Lmax = 0.0;
    long kmax = 5;
    long max_nodes = SearchConfig{}.max_nodes;
    std::string jsonl, csv, frontier, resume;

    // bound
    double L = 0.0;

    std::string out;
};

int cmd_corkscrew(const Options& o) {
    auto [lo, hi] = parse_k_range(o.k_range);
    if (hi - lo > 10000000) throw UsageError("k range too large");
    if (o.corkscrew_json) {
        json rows = json::array();
        for (long k = lo; k <= hi; ++k)
            rows.push_back({{"k", k},
                            {"trace", corkscrew_trace(k)},
                            {"length_expr", "2*acosh(" + std::to_string(2 * k + 1) + ")"},
                            {"length", corkscrew_length(k)}});
        emit(rows, o.out);
        return kOk;
    }
    std::ostringstream os;
    os << "k,trace,length_expr,length\n";
    char buf[128];
    for (long k = lo; k <= hi; ++k) {
        std::snprintf(buf, sizeof buf, "%ld,%lld,2*acosh(%ld),%.15f\n", k, (long long)corkscrew_trace(k), 2 * k + 1,
                      corkscrew_length(k));
        os << buf;
    }
    if (o.out.empty())
        std::cout << os.str();
    else
        write_file(o.out, os.str());
    return kOk;
}

int cmd_certify(const Options& o) {
    std::vector<Claim> all = parse_claims(read_file(o.claims_file));
    std::vector<Claim> sel;
    if (o.ids.empty()) {
        sel = all;
    } else {
        for (const std::string& id : o.ids) {
            auto it = std::find_if(all.begin(), all.end(), [&](const Claim& c) { return c.id == id; });
            if (it == all.end()) throw UsageError("no claim with id '" + id + "'");
            sel.push_back(*it);
        }
    }
    if (sel.empty()) throw UsageError("empty claim selection");
    Budget budget;
    budget.max_leaves = o.max_leaves;
    budget.max_depth = o.max_depth;

    std::vector<CertResult> res(sel.size());
    const std::size_t nw = std::size_t(std::max(1, o.workers));
    auto work = [&](std::size_t begin) {
        for (std::size_t i = begin; i < sel.size(); i += nw) res[i] = certify(sel[i], budget);
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nw; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& t : pool) t.join();

    json results = json::array();
    long verified = 0, refuted = 0, inconclusive = 0;
    double seconds = 0.0;
    for (std::size_t i = 0; i < sel.size(); ++i) {
        json j = to_json(sel[i], res[i]);
        if (o.no_timing) j.erase("seconds");
        results.push_back(j);
        seconds += res[i].seconds;
        switch (res[i].verdict) {
            case Verdict::verified: ++verified; break;
            case Verdict::refuted: ++refuted; break;
            case Verdict::inconclusive: ++inconclusive; break;
        }
    }
    json report{{"claims_file", o.claims_file},
                {"budget", {{"max_leaves", budget.max_leaves}, {"max_depth", budget.max_depth}}},
                {"results", results},
                {"summary", {{"claims", sel.size()}, {"verified", verified}, {"refuted", refuted}, {"inconclusive", inconclusive}}}};
    if (!o.no_timing) report["summary"]["seconds"] = seconds;
    emit(report, o.out);
    return verified == long(sel.size()) ? kOk : kNegative;
}

int cmd_ledger_list(const Options& o) {
    std::vector<Claim> all = parse_claims(read_file(o.claims_file));
    if (o.list_json) {
        json rows = json::array();
        for (const Claim& c : all)
            rows.push_back({{"id", c.id}, {"lhs", c.lhs_text}, {"rel", rel_name(c.rel)}, {"rhs", c.rhs_text},
                            {"domain", c.domain_text}, {"cite", c.cite}, {"anchor", c.anchor}});
        emit(rows, o.out);
        return kOk;
    }
    for (const Claim& c : all)
        std::cout << c.id << "\t" << c.lhs_text << " " << rel_name(c.rel) << " " << c.rhs_text << "\t"
                  << (c.domain_text.empty() ? "-" : c.domain_text) << "\t" << c.cite << "\n";
    return kOk;
}

Method parse_method(const std::string& s) {
    if (s == "combinatorial") return Method::combinatorial;
    if (s == "numeric") return Method::numeric;
    if (s == "both") return Method::both;
    throw UsageError("method must be combinatorial, numeric or both");
}

int cmd_intersect(const Options& o) {
    const SurfaceSpec spec = parse_surface(o.surface);
    const CyclicWord w = CyclicWord::parse(o.word);
    const Method m = parse_method(o.method);
    const NumericMode mode = parse_numeric_mode(o.numeric);
    w.require_primitive();
    if (is_peripheral(w)) throw PeripheralError("word " + w.str() + " is peripheral");
    MobiusMap H = spec.holonomy(w.letters());
    json j{{"word", w.str()}, {"surface", spec.name()}, {"method", method_name(m)}, {"length", translation_length(H)}};
    if (spec.integral()) {
        IntMat I = spec.int_holonomy(w.letters());
        j["trace"] = I.a + I.d;
    } else {
        j["trace"] = H.trace();
    }
    int code = kOk;
    std::optional<long> kc;
    if (m == Method::combinatorial || m == Method::both) {
        kc = self_intersection_combinatorial(w);
        j["combinatorial"] = *kc;
        j["k"] = *kc;
        j["stabilized"] = true;
    }
    if (m == Method::numeric || m == Method::both) {
        NumericCount nc = self_intersection_numeric(w, spec, o.cutoff, mode);
        j["numeric"] = {{"k", nc.k},
                        {"crossings", nc.crossings},
                        {"stabilized", nc.stabilized},
                        {"cutoff", nc.cutoff},
                        {"max_rep_len", nc.max_rep_len},
                        {"exact_rechecks", nc.exact_rechecks},
                        {"unresolved", nc.unresolved},
                        {"mode", numeric_mode_name(mode)}};
        j["k"] = nc.k;
        j["stabilized"] = nc.stabilized;
        if (!nc.stabilized) code = kNegative;
        if (kc) {
            bool agree = nc.stabilized && nc.k == *kc;
            j["agree"] = agree;
            j["k"] = *kc;
            if (!agree) code = kNegative;
        }
    }
    emit(j, o.out);
    return code;
}

int cmd_decompose(const Options& o) {
    const SurfaceSpec spec = parse_surface(o.surface);
    const CyclicWord w = CyclicWord::parse(o.word);
    w.require_primitive();
    if (is_peripheral(w)) throw PeripheralError("word " + w.str() + " is peripheral");
    ArcDecomposition d = decompose(w, spec);
    json j{{"word", w.str()}, {"surface", spec.name()}, {"length", d.L}, {"decomposition", to_json(d)}};
    j["complete"] = d.complete;
    emit(j, o.out);
    return kOk;
}

int cmd_bound(const Options& o) {
    ComposedBound b = composed_bound(o.L);
    double disp = closing_display(o.L);
    json j{{"L", o.L},
           {"B", b.value},
           {"grid_L", b.grid_L},
           {"configuration", {{"m", b.m}, {"m0", b.m0}, {"m1", b.m1}, {"m2", b.m2}, {"L2p", b.L2p}, {"L2pp", b.L2pp}}},
           {"closing_display", disp},
           {"B_minus_display", b.value - disp}};
    emit(j, o.out);
    return kOk;
}

int cmd_search(const Options& o) {
    SearchConfig cfg;
    cfg.Lmax = o.Lmax;
    cfg.kmax = o.kmax;
    cfg.cutoff = o.cutoff;
    cfg.workers = o.workers;
    cfg.max_nodes = o.max_nodes;
    if (o.kmax < 1) throw UsageError("kmax must be >= 1");
    std::vector<FrontierEntry> resume;
    if (!o.resume.empty()) resume = parse_frontier(read_file(o.resume));
    SearchResult res = enumerate(cfg, resume);

    long violations = 0;
    for (const SoundnessCheck& c : res.checks) violations += !c.ok();
    if (!o.jsonl.empty()) {
        std::ostringstream os;
        for (const GeodesicRecord& r : res.records) os << to_json(r).dump() << "\n";
        write_file(o.jsonl, os.str());
    }
    MinLengthTable table = min_length_table(res, o.kmax);
    if (!o.csv.empty()) write_file(o.csv, table_csv(table));
    if (!res.complete) {
        if (o.frontier.empty()) throw UsageError("node budget exhausted; pass --frontier to save the frontier");
        write_file(o.frontier, frontier_text(res.frontier));
    }
    std::vector<ConjectureRow> report = conjecture_report(table, cfg);
    json rep = json::array();
    bool counterexample = false;
    for (const ConjectureRow& r : report) {
        rep.push_back(to_json(r));
        counterexample = counterexample || (r.verdict == RowVerdict::counterexample && r.confirmed);
    }
    json j{{"Lmax", o.Lmax},
           {"trace_budget", res.trace_budget},
           {"records", res.records.size()},
           {"powers_skipped", res.powers_skipped},
           {"nodes", res.nodes},
           {"complete", res.complete},
           {"soundness_violations", violations},
           {"table", to_json(table)},
           {"report", rep}};
    if (!res.complete) j["frontier_size"] = res.frontier.size();
    emit(j, o.out);
    return (counterexample || violations > 0) ? kNegative : kOk;
}

json config_json(const std::string& sub, const Options& o) {
    json j{{"subcommand", sub}, {"numeric", o.numeric}, {"workers", o.workers}};
    if (sub == "corkscrew") j["k"] = o.k_range;
    if (sub == "certify" || sub == "ledger-list") {
        j["claims_file"] = o.claims_file;
        j["ids"] = o.ids;
        j["max_leaves"] = o.max_leaves;
        j["max_depth"] = o.max_depth;
    }
    if (sub == "intersect" || sub == "decompose") {
        j["word"] = o.word;
        j["surface"] = o.surface;
        j["method"] = o.method;
        j["cutoff"] = o.cutoff;
    }
    if (sub == "search") {
        j["Lmax"] = o.Lmax;
        j["kmax"] = o.kmax;
        j["max_nodes"] = o.max_nodes;
        j["resume"] = o.resume;
    }
    if (sub == "bound") j["L"] = o.L;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed geodesics on hyperbolic surfaces: self-intersection, length bounds and certified inequalities"};
    app.require_subcommand(1);
    Options o;
    o.claims_file = std::string(HYPGEO_DATA_DIR) + "/claims.txt";
    app.add_option("--numeric", o.numeric, "numeric mode: double or exact")->envname("HYPGEO_NUMERIC");
    app.add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("-o,--out", o.out, "write the main output here instead of stdout");

    auto* cork = app.add_subcommand("corkscrew", "trace and length of a b^k");
    cork->add_option("k", o.k_range, "k or a range lo..hi")->required();
    cork->add_flag("--json", o.corkscrew_json, "JSON instead of CSV");

    auto* cert = app.add_subcommand("certify", "certify the claims in a claims file");
    cert->add_option("claims", o.claims_file, "claims file")->capture_default_str();
    cert->add_option("--id", o.ids, "only these claim ids");
    cert->add_flag("--no-timing", o.no_timing, "omit wall times (byte-identical reports)");
    cert->add_option("--max-leaves", o.max_leaves)->check(CLI::PositiveNumber);
    cert->add_option("--max-depth", o.max_depth)->check(CLI::Range(1, 200));

    auto* inter = app.add_subcommand("intersect", "self-intersection number of a closed geodesic");
    inter->add_option("word", o.word, "word in a, b, A, B with ^n sugar")->required();
    inter->add_option("--surface", o.surface, "tps or pants:l1,l2,l3")->capture_default_str();
    inter->add_option("--method", o.method, "combinatorial, numeric or both")->capture_default_str();
    inter->add_option("--cutoff", o.cutoff, "numeric coset cutoff (0: 2|w|+2)");

    auto* search = app.add_subcommand("search", "enumerate classes on the thrice-punctured sphere");
    search->add_option("--Lmax", o.Lmax, "length budget")->required();
    search->add_option("--kmax", o.kmax, "largest k in the table")->capture_default_str();
    search->add_option("--cutoff", o.cutoff, "numeric cutoff for confirmations");
    search->add_option("--max-nodes", o.max_nodes, "prefix nodes before stopping")->check(CLI::PositiveNumber);
    search->add_option("--jsonl", o.jsonl, "write records as JSON lines");
    search->add_option("--csv", o.csv, "write the min-length table as CSV");
    search->add_option("--frontier", o.frontier, "where to save the frontier if the node budget runs out");
    search->add_option("--resume", o.resume, "continue from a saved frontier");

    auto* bound = app.add_subcommand("bound", "composed upper bound B(L) next to the closing display");
    bound->add_option("--L", o.L, "length")->required();

    auto* dec = app.add_subcommand("decompose", "thick/thin decomposition of a closed geodesic");
    dec->add_option("word", o.word, "word")->required();
    dec->add_option("--surface", o.surface, "tps or pants:l1,l2,l3")->capture_default_str();

    auto* list = app.add_subcommand("ledger-list", "list the claims in a claims file");
    list->add_option("claims", o.claims_file, "claims file")->capture_default_str();
    list->add_flag("--json", o.list_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    std::cerr << "config: " << config_json(sub, o).dump() << "\n";
    try {
        parse_numeric_mode(o.numeric);
        if (sub == "corkscrew") return cmd_corkscrew(o);
        if (sub == "certify") return cmd_certify(o);
        if (sub == "ledger-list") return cmd_ledger_list(o);
        if (sub == "intersect") return cmd_intersect(o);
        if (sub == "decompose") return cmd_decompose(o);
        if (sub == "bound") return cmd_bound(o);
        if (sub == "search") return cmd_search(o);
    } catch (const UsageError& e) {
        return fail("usage", e.what(), kUsage);
    } catch (const ParseError& e) {
        return fail("parse", e.what(), kUsage);
    } catch (const TrivialClassError& e) {
        return fail("trivial_class", e.what(), kUsage);
    } catch (const MultiplicityError& e) {
        return fail("non_primitive", e.what(), kUsage);
    } catch (const PeripheralError& e) {
        return fail("peripheral", e.what(), kUsage);
    } catch (const DomainError& e) {
        return fail("domain", e.what(), kUsage);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), kInternal);
    }
    return kUsage;
}
