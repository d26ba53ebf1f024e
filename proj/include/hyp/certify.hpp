#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyp/expr.hpp"

namespace hyp {

enum class Rel { lt, le, gt, ge };
const char* rel_name(Rel r);
Rel parse_rel(const std::string& s);

struct Claim {
    std::string id;
    std::vector<std::string> vars;
    Box domain;  // closure of the stated domain; hi may be +inf
    Expr lhs, rhs;
    Rel rel = Rel::lt;
    std::string lhs_text, rhs_text, domain_text;
    std::string cite, anchor;
};

// Records of "key: value" lines separated by blank lines; '#' starts a comment.
// Keys: id, lhs, rel, rhs, domain, cite, anchor. Domain: "L in [17.2, inf); m in [1, 5]".
std::vector<Claim> parse_claims(const std::string& text);
std::vector<Claim> load_claims(const std::string& path);
Claim make_claim(const std::string& id, const std::string& lhs, const std::string& rel, const std::string& rhs,
                 const std::string& domain);

struct Budget {
    long max_leaves = 1000000;
    int max_depth = 60;
};

enum class Verdict { verified, refuted, inconclusive };
const char* verdict_name(Verdict v);

struct CertResult {
    Verdict verdict = Verdict::inconclusive;
    long leaves = 0;  // verified leaf boxes
    long boxes = 0;   // boxes visited
    bool tail = false;  // solved through u = exp(-L/4)
    std::vector<double> witness;
    std::string witness_lhs, witness_rhs;  // 100-digit values at the witness
    Interval witness_lhs_enc, witness_rhs_enc;
    Box residual;  // worst undecided box
    std::string note;
    double seconds = 0.0;
};

CertResult certify(const Claim& c, const Budget& budget = {});
// Checks the relation at a point at 100 digits; throws PartialDomainError off-domain.
bool holds_hp(const Claim& c, const std::vector<HPFloat>& point);

nlohmann::json to_json(const Claim& c, const CertResult& r);

// Maximizer of D(x) = sum_j (2m+1-2j) sinh(x_j) over nondecreasing x >= 0 with
// sum x = L2p, m = m0 + m2, on the grid of step L2p / steps.
struct MaximizerReport {
    int m0 = 0, m2 = 0;
    double L2p = 0.0;
    int steps = 0;
    std::vector<double> best;  // grid maximizer
    double best_value = 0.0;
    int m1 = 0;                // number of equal nonzero tail entries in the matched pattern
    double pattern_value = 0.0;  // D at (0,..,0, L2p/m1, ..)
    double pattern_distance = 0.0;  // max coordinate distance best -> pattern
    bool matches = false;           // within one grid step
};
MaximizerReport maximizer_check(int m0, int m2, double L2p, int steps = 200);

// Upper bound over admissible splits and counts; see the README for the cell scheme.
struct ComposedBound {
    double L = 0.0;
    double value = 0.0;
    double grid_L = 0.0;  // L rounded up to the grid the value was computed on
    int m = 0, m0 = 0, m1 = 0, m2 = 0;  // maximizing configuration
    double L2p = 0.0, L2pp = 0.0;       // lower corner of the maximizing cell
};
ComposedBound composed_bound(double L);
// Closing display used for comparison: 1 + 2 sinh(L/2) + (25/12 L + 1)^2 / 2.
double closing_display(double L);

}  // namespace hyp
