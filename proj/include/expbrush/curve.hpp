#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "expbrush/boxes.hpp"

namespace expbrush {

// Vertex of a rectilinear curve: horizontal coordinate in potential units
// (double, compared bit-identically against the shared level edges),
// vertical coordinate exact rational.
struct CurveVertex {
    double x = 0.0;
    Rat y;
};
inline bool operator==(const CurveVertex& u, const CurveVertex& v) {
    return u.x == v.x && u.y == v.y;
}

struct Polyline {
    std::vector<CurveVertex> v;
    int level = 0;
    double cauchy_bound = 0.0;  // tail estimate for the ideal continuation
};

// Detour statistics of one refinement level.
struct LevelStats {
    int level = 0;
    std::size_t box_count = 0;
    double max_dev = 0.0;        // measured sup |g_k - g_{k-1}|
    double bound_sqrt2_w = 0.0;  // sqrt(2) * level width
    double bound_five = 0.0;     // 5 / (l+k)^2
};

// The seed's right edge traversed upward: the level-0 curve.
Polyline seed_curve(const Rect& seed);

// Replace every sub-path of g_prev lying on a left edge of fam by the walk
// around the box's other three sides (corners fixed).  Throws when g_prev
// meets a box other than across its full left edge.
struct RefineResult {
    Polyline curve;
    LevelStats stats;
};
RefineResult refine_curve(const Polyline& g_prev, const BoxFamily& fam, int offset);

struct CurveBuild {
    FamilyChain chain;
    Polyline curve;
    std::vector<Polyline> snapshots;  // g_0, g_1, ..., g_levels_built
    std::vector<LevelStats> stats;
    double cauchy_tail = 0.0;  // sum of 5/(l+j)^2 over unbuilt levels
    int levels_built = 0;
};
CurveBuild build_curve(const SubBrush& sb, int kmax, int l, const Rect& seed);

// Upper bound on sum_{j > kmax} 5/(l+j)^2.
double cauchy_tail_bound(int kmax, int l);

struct JordanCurve {
    Rect seed;
    Polyline arc;
    std::vector<CurveVertex> loop;  // closed: last connects back to first
    int winding = 0;                // winding number around the seed center
};

// Closes the arc with the seed's top, left and bottom sides, verifies
// simplicity with an exact orthogonal segment sweep, and orients the result.
// Throws CurveNotSimple on a crossing.
JordanCurve assemble_jordan(const Polyline& arc, const Rect& seed);

// First pair of offending segments of the closed rectilinear loop, if any
// (adjacent segments may share exactly their common vertex).
std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    const std::vector<CurveVertex>& loop);

// Exact point-in-polygon test for a closed rectilinear loop.
bool point_in_loop(const std::vector<CurveVertex>& loop, const Rat& x, const Rat& y);

// Localized build: seed box inside B(x0, eps/2) dodging the sub-brush, level
// offset chosen so the accumulated widths stay below eps/2.
struct LocalizedBuild {
    CurveBuild build;
    JordanCurve jordan;
    int offset = 0;
    double eps = 0.0;
};
LocalizedBuild localized_curve(double x0, const Rat& y0, double eps,
                               const SubBrush& sb, int kmax);

// Smallest level offset l with sum_{k>=1} level_width(k, l) < budget.
int pick_level_offset(double budget);

}  // namespace expbrush
