#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyp/intersect.hpp"

namespace hyp {

struct SearchConfig {
    double Lmax = 0.0;
    long kmax = 5;
    int cutoff = 0;   // numeric cutoff for argmin confirmation, <= 0: 2|w| + 2
    int workers = 1;
    long max_nodes = 50000000;  // prefix nodes before the enumeration stops with a frontier
    bool decompose = true;
};

// Prefix in the positive monoid on R = [[1,1],[0,1]] (letter 'R') and
// L = [[1,0],[1,1]] (letter 'L'), with its matrix.
struct FrontierEntry {
    std::string prefix;
    std::int64_t a = 1, b = 0, c = 0, d = 1;
};

struct SoundnessCheck {
    bool envelope = true;   // k <= 9 L^2 e^{L/2}
    bool floor = true;      // L >= 2 log(1 + sqrt 2) when k >= 1
    bool arc_count = true;  // m <= L / (2 log 2)
    bool split = true;      // k <= thick + thin for the decomposition
    bool composed = true;   // k <= B(L)
    bool ok() const { return envelope && floor && arc_count && split && composed; }
};

struct SearchResult {
    double trace_budget = 0.0;
    std::vector<GeodesicRecord> records;  // sorted by |trace|, word length, letters
    std::vector<SoundnessCheck> checks;   // parallel to records
    long powers_skipped = 0;
    long nodes = 0;
    bool complete = true;
    std::vector<FrontierEntry> frontier;  // set when the node budget ran out
};

double trace_budget(double Lmax);

// Every primitive non-peripheral class on the thrice-punctured sphere with
// |trace| <= 2 cosh(Lmax/2), one record each. `resume` restarts from a frontier.
SearchResult enumerate(const SearchConfig& cfg, const std::vector<FrontierEntry>& resume = {});

// Canonical words of all primitive non-peripheral classes with |trace| <= T,
// from every cyclically reduced word of length <= max_len. No pruning.
std::vector<std::string> naive_classes(double T, int max_len);

// Matrix in the level-2 congruence group (up to sign) as a word in a, b.
Word congruence_word(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

struct TableRow {
    long k = 0;
    std::optional<double> min_length;
    std::string word;
    std::int64_t trace = 0;  // |trace| of the argmin
    long word_k = 0;         // self-intersection of the argmin
    double conjectured = 0.0;  // 2 acosh(1 + 2k)
    double envelope = 0.0;     // log(k/2) / 2
    bool conclusive = false;
};

struct MinLengthTable {
    double Lmax = 0.0;
    std::vector<TableRow> rows;  // k = 1..kmax
};

MinLengthTable min_length_table(const SearchResult& res, long kmax);

enum class RowVerdict { matches, counterexample, inconclusive };
const char* verdict_name(RowVerdict v);

struct ConjectureRow {
    long k = 0;
    RowVerdict verdict = RowVerdict::inconclusive;
    std::string word;
    bool confirmed = false;  // counterexample re-counted by both methods
    std::string note;
};

std::vector<ConjectureRow> conjecture_report(const MinLengthTable& table, const SearchConfig& cfg);

nlohmann::json to_json(const MinLengthTable& t);
nlohmann::json to_json(const ConjectureRow& r);
std::string table_csv(const MinLengthTable& t);
std::string frontier_text(const std::vector<FrontierEntry>& f);
std::vector<FrontierEntry> parse_frontier(const std::string& text);

}  // namespace hyp
