#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "expbrush/brush.hpp"

namespace expbrush {

// Axis-aligned seed rectangle: horizontal sides are doubles (potential
// units), vertical sides exact rationals.
struct Rect {
    double a = -1.0;
    double b = 1.0;
    Rat c = -1;
    Rat d = 1;
};

struct Box {
    double a = 0.0;
    double b = 0.0;
    Rat c, d;
    int level = 0;
    int parent = -1;   // index into the previous family's boxes
    int witness = -1;  // sub-brush address index with a hair through the left edge
};

struct BoxFamily {
    int level = 0;
    double width = 0.0;      // b - a shared by the level's boxes
    double left_edge = 0.0;  // shared a (the previous level's right edge)
    double right_edge = 0.0;
    std::vector<Box> boxes;
};

// Width of level-k boxes under level offset l: growth_inv_iter((l+k)^2, 1).
// Computed once per level and compared bit-identically everywhere.
double level_width(int k, int l);

// Level-0 family holding exactly the seed rectangle.  The seed's left, top
// and bottom edges must miss the sub-brush (its right edge is where the
// construction attaches); violations report the offending address.
BoxFamily seed_family(const Rect& rect, const SubBrush& sb);

// Level-k family from the level-(k-1) family:
//  - collect the sub-brush points on the previous right edge,
//  - cover their heights by depth-2(l+k)^2 cylinder intervals,
//  - merge previous box endpoints with cylinder endpoints, split gaps to
//    width <= level_width(k, l),
//  - emit one box per gap that meets a collected point, then shrink boxes
//    that touch so the family is pairwise disjoint.
BoxFamily next_family(const BoxFamily& prev, const SubBrush& sb, int k, int l);

struct FamilyChain {
    Rect seed;
    int offset = 0;  // level offset l
    std::vector<BoxFamily> families;  // families[0] is the seed family
    bool terminated_early = false;    // some level came out empty
};
FamilyChain build_chain(const SubBrush& sb, int kmax, int l, const Rect& seed);

struct ConditionResult {
    int id = 0;  // 1..8
    bool pass = true;
    std::string witness;  // first failure description
};
struct ValidationReport {
    bool pass = true;
    std::vector<ConditionResult> conditions;  // size 8, ids 1..8
    std::string note;
};

// Checks the eight box-family conditions, quantified over the finite
// sub-brush (the computable rendering of the full-brush statements).
ValidationReport validate_families(const FamilyChain& chain, const SubBrush& sb);

}  // namespace expbrush
