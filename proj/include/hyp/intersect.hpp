#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hyp/atlas.hpp"
#include "hyp/words.hpp"

namespace hyp {

// True when the canonical word is one of the peripheral classes a, b, aB.
bool is_peripheral(const CyclicWord& w);

// Linked-pair count on the cyclic word. Needs a primitive, non-peripheral class.
long self_intersection_combinatorial(const CyclicWord& w);

struct NumericCount {
    long k = 0;
    long crossings = 0;        // counted cosets, twice the number of double points
    bool stabilized = false;
    int cutoff = 0;
    int max_rep_len = 0;       // longest shortest representative among counted cosets
    long exact_rechecks = 0;   // crossings decided exactly after a tangency flag
    long unresolved = 0;       // tangencies the double-only path could not settle
};

// fast: doubles, exact or 100-digit rechecks only near tangency.
// exact: every crossing decided by the exact / 100-digit path.
enum class NumericMode { fast, exact };
const char* numeric_mode_name(NumericMode m);
NumericMode parse_numeric_mode(const std::string& s);

// cutoff <= 0 selects 2|w| + 2.
NumericCount self_intersection_numeric(const CyclicWord& w, const SurfaceSpec& spec, int cutoff = 0,
                                       NumericMode mode = NumericMode::fast);

enum class Method { combinatorial, numeric, both, formula };
const char* method_name(Method m);

struct GeodesicRecord {
    CyclicWord word;
    std::optional<std::int64_t> trace;  // exact on the thrice-punctured sphere
    double trace_value = 0.0;
    double length = 0.0;
    long k = 0;
    Method method = Method::combinatorial;
    bool stabilized = true;
    std::optional<ArcDecomposition> decomposition;
};

nlohmann::json to_json(const GeodesicRecord& r);
nlohmann::json to_json(const ArcDecomposition& d);

// a b^k on the thrice-punctured sphere. Counts are computed when the word is
// short enough; beyond that k is taken from the trace formula.
GeodesicRecord corkscrew(long k, bool with_decomposition = true);
std::int64_t corkscrew_trace(long k);
double corkscrew_length(long k);

double thin_bound(const ArcDecomposition& d);
double thick_bound(double L1, long m);
// core_len is the host core length (used only for two special arcs).
long pairwise_arc_bound(const ThinArc& p, const ThinArc& q, bool same_arc, double core_len);

double envelope_bound(double L);  // 9 L^2 e^{L/2}
double hempel_floor();            // 2 log(1 + sqrt 2)

}  // namespace hyp
