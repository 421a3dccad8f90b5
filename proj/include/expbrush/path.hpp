#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "expbrush/curve.hpp"

namespace expbrush {

// Path endpoints: a planar point with rational height (off the brush: hair
// heights are never rational) or a point on a sub-brush hair.
struct PlanarPoint {
    double x = 0.0;
    Rat y;
};
struct HairPoint {
    double t = 0.0;
    ExternalAddress s;
};
using PathEndpoint = std::variant<PlanarPoint, HairPoint>;

// A polyline vertex whose height is either exact rational or "the height of
// this address" (for vertices on a hair).
struct RouteVertex {
    double x = 0.0;
    std::variant<Rat, ExternalAddress> y;
};
double route_vertex_height(const RouteVertex& v);  // double approximation

// Every point where the route touches the brush, with its certification.
struct ContactCheck {
    std::uint64_t j;  // double-square index
    bool pass;
};
struct BrushContact {
    ExternalAddress s;
    double t = 0.0;
    std::string method;  // "double-square" or "witness-pair"
    std::vector<ContactCheck> checks;
    bool certified = false;
};

struct Route {
    std::string kind;  // which of the three cases produced it
    std::vector<RouteVertex> vertices;
    std::vector<BrushContact> contacts;
};

// A rectilinear path from e0 to e1 that touches the sub-brush only in
// certified escaping points.  Hair endpoints must sit strictly above their
// tip and pass the double-square certificate; routes through a hair go via
// a Jordan curve built around it (kmax refinement levels).
Route path_between(const PathEndpoint& e0, const PathEndpoint& e1,
                   const SubBrush& sb, int kmax);

}  // namespace expbrush
