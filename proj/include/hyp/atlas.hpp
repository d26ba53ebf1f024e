#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyp/kernel.hpp"
#include "hyp/words.hpp"

namespace hyp {

struct PeripheralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SurfaceKind { thrice_punctured_sphere, pants };

struct Peripheral {
    std::string word;  // a, b, aB
    double length;     // 0 for a cusp
};

struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::thrice_punctured_sphere;
    std::array<double, 3> boundary{0.0, 0.0, 0.0};
    MobiusMap a, b;
    std::optional<IntMat> int_a, int_b;  // set on the thrice-punctured sphere
    std::vector<Peripheral> peripherals;

    bool integral() const { return int_a.has_value(); }
    MobiusMap holonomy(const Word& w) const;
    IntMat int_holonomy(const Word& w) const;  // throws unless integral()
    MobiusMap generator(Letter x) const;
    std::string name() const;
};

SurfaceSpec build_tps();
// Peripherals a, b and a*b^-1 carry lengths l1, l2, l3 (0 = cusp).
SurfaceSpec build_pants(double l1, double l2, double l3);
// "tps" or "pants:l1,l2,l3"
SurfaceSpec parse_surface(const std::string& text);

enum class CoreKind { geodesic, cusp };

struct ThinComponent {
    CoreKind core = CoreKind::cusp;
    int peripheral = 0;     // index into SurfaceSpec::peripherals
    double core_len = 0.0;  // 0 for cusps
    double n0_radius = 0.0; // geodesic case only
    double n3_radius = 0.0;
    // cusp case: boundary horocycle heights and lengths in the width-2 strip
    double n0_height = 2.0, n3_height = 1.0;
    double n0_horocycle_len = 1.0, n3_horocycle_len = 2.0;
};

constexpr double kShortThreshold = 1.0;  // strict: l < 1
constexpr double kArcTol = 1e-10;

std::vector<ThinComponent> thin_components(const SurfaceSpec& spec);

// Map sigma with sigma^-1 P sigma = translation by +-2; P parabolic.
MobiusMap cusp_frame(const MobiusMap& P);

enum class ArcCase { general, special };
const char* case_name(ArcCase c);

struct ThinArc {
    int component = 0;     // index into thin_components()
    double start = 0.0;    // arclength parameter along the axis, in [0, L)
    double length = 0.0;
    double winding = 0.0;
    ArcCase kind = ArcCase::general;
    double n3_length = 0.0;  // length of the enclosing arc in N3
    double R = 0.0;          // Euclidean radius in the cusp frame (cusp arcs)
};

struct ArcDecomposition {
    double L = 0, L1 = 0, L2 = 0, L2p = 0, L2pp = 0;
    int m = 0, m0 = 0, m2 = 0;
    std::vector<ThinArc> thin;   // ordered along the geodesic
    std::vector<double> thick;   // lengths of the complementary arcs
    bool complete = true;        // false when lifts were found by a bounded search
    // general-case windings, ascending
    std::vector<double> general_windings() const;
};

double winding_number(const ThinArc& arc);
ArcCase classify_arc(const ThinArc& arc);

ArcDecomposition decompose(const CyclicWord& word, const SurfaceSpec& spec);

// Reduction of a point into the standard fundamental domain of the level-2
// congruence group: z = g * z_F. Returns z_F and g.
struct Reduced {
    HPoint z;
    IntMat g;
};
Reduced tps_reduce(HPoint z);

// Index (0: inf, 1: 0, 2: +-1) of the cusp whose horoball of the given
// height contains a point already in the fundamental domain, or -1.
int tps_cusp_region(const HPoint& zF, double height);

}  // namespace hyp
