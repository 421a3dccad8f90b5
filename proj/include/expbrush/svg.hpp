#pragma once

#include <string>

#include "expbrush/curve.hpp"
#include "expbrush/path.hpp"

namespace expbrush {

// SVG scene for a curve build: sub-brush hairs, box outlines per level, the
// refinement polylines g_0..g_k, and (when given) the assembled closed curve
// highlighted.  The model-to-pixel affine transform is declared in a comment
// at the top of the file.
std::string curve_svg(const CurveBuild& build, const JordanCurve* jordan,
                      const SubBrush& sb);

// SVG scene for a route: hairs plus the route polyline with brush contacts
// marked.
std::string path_svg(const Route& route, const SubBrush& sb);

}  // namespace expbrush
