#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "expbrush/errors.hpp"

namespace expbrush {

// Parameter of the plane-side family z -> e^z + a, restricted to a <= -1.
struct ExpParameter {
    double a = -1.0;
};
ExpParameter make_parameter(double a);  // throws DomainError for a > -1

// Real fixed point p* with e^{p*} + a = p*, located by bisection on [a, 0].
// For a < -1 the multiplier e^{p*} is < 1 (attracting); for a = -1 the fixed
// point is 0 with multiplier 1 (parabolic).
double find_fixed_point(const ExpParameter& p);

enum class OrbitClass : std::uint8_t {
    Unknown = 0,
    FatouAttracted = 1,
    EscapingHeuristic = 2,
};

struct OrbitVerdict {
    OrbitClass cls = OrbitClass::Unknown;
    int steps = 0;
    std::complex<double> witness;  // final value or fixed-point offset
    bool overflow = false;         // escape verdict came from an overflow
};

struct ClassifyOptions {
    int max_steps = 512;
    double escape_radius = 50.0;   // Re z beyond this reads as heuristic escape
    double eps_attract = 1e-8;
    // Parabolic-basin trap for a = -1: after `parabolic_window` visits to
    // Re z < a-1 the orbit is read as attracted (one visit already lands the
    // next iterate in the disk |z+1| < e^{a-1}, inside the petal).
    int parabolic_window = 1;
};

// Iterates z -> e^z + a.  Attraction is genuine (contraction-ball argument
// for a < -1; documented left-half-plane heuristic for a = -1); the escape
// verdict is heuristic only -- certified escape lives in the model-space
// modules.
OrbitVerdict classify_orbit(std::complex<double> z, const ExpParameter& p,
                            const ClassifyOptions& opt = {});

struct Viewport {
    double x0 = -4.0, x1 = 4.0;
    double y0 = -4.0, y1 = 4.0;
};

struct RasterImage {
    int width = 0, height = 0;
    Viewport viewport;
    std::vector<OrbitClass> cls;  // row-major, top row first
    std::vector<int> steps;
    std::vector<std::uint8_t> rgb;  // 3 bytes per pixel
};

// Deterministic per-pixel classification at pixel centers (parallel over
// row stripes, assembled in order).
RasterImage render(const ExpParameter& p, const Viewport& vp, int width, int height,
                   const ClassifyOptions& opt = {});

// Palette legend embedded in the PNG text metadata.
std::string palette_legend();

void write_render_png(const RasterImage& img, const std::string& path);

}  // namespace expbrush
