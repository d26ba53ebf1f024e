#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyp/words.hpp"

namespace hyp {

// Outcome of a sampled property suite.
struct SuiteResult {
    long samples = 0;
    long skipped = 0;     // draws outside the suite's domain
    long violations = 0;
    double worst = 0.0;   // suite-specific: largest defect, or smallest value seen
    std::string first_violation;
    bool ok() const { return violations == 0 && samples > 0; }
};

// Symmetry and triangle inequality for dist on random triples.
SuiteResult metric_axioms(long triples, std::uint64_t seed, double tol = 1e-12);

// Random expression, box and point in the box: the 100-digit value lies in the enclosure.
SuiteResult containment_fuzz(long samples, std::uint64_t seed);

// Random expression and box: the enclosures over both halves of a bisection lie
// inside the enclosure over the box.
SuiteResult monotone_refinement(long samples, std::uint64_t seed);

// Random pants with boundary lengths in (0, 1): points of one N3 collar never lie
// in another. worst = smallest (distance to a foreign core lift) - (its N3 radius).
// radius_pad inflates the radii (positive control).
SuiteResult collar_disjointness(int pants, int samples_per_core, std::uint64_t seed, double radius_pad = 0.0);

// Points of the thick part of the thrice-punctured sphere: half the minimal
// displacement over all nontrivial elements. worst = smallest value seen.
SuiteResult thick_injectivity(long samples, std::uint64_t seed);
// Half the minimal displacement at z, by exhaustive integer enumeration.
double tps_injectivity_radius(double x, double y);

// Canonical, primitive, non-peripheral words up to the given length.
std::vector<CyclicWord> canonical_words(int max_len);

// Combinatorial against stabilized numeric counts on the thrice-punctured sphere.
SuiteResult dual_method_sweep(int max_len, int workers);

}  // namespace hyp
