#include "expbrush/complex_plane.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "expbrush/png_io.hpp"

namespace expbrush {

ExpParameter make_parameter(double a) {
    if (!(a <= -1.0)) throw DomainError("parameter must satisfy a <= -1");
    return ExpParameter{a};
}

double find_fixed_point(const ExpParameter& p) {
    const double a = p.a;
    auto g = [a](double x) { return std::exp(x) + a - x; };
    if (g(0.0) == 0.0) return 0.0;  // a == -1 exactly
    double lo = a, hi = 0.0;        // g(a) = e^a > 0, g(0) = 1 + a < 0
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    // One polishing step keeps the residual near machine precision.
    const double x = 0.5 * (lo + hi);
    const double corr = (std::exp(x) + a - x) / (1.0 - std::exp(x));
    const double polished = x + corr;
    return std::isfinite(polished) ? polished : x;
}

OrbitVerdict classify_orbit(std::complex<double> z, const ExpParameter& p,
                            const ClassifyOptions& opt) {
    if (opt.max_steps < 0) throw DomainError("classify_orbit: max_steps >= 0");
    const double pstar = find_fixed_point(p);
    const bool parabolic = (p.a == -1.0);
    // Contraction ball: for a < -1 attraction inside |z - p*| < r is genuine
    // when e^{p* + r} < 1, i.e. r < -p*.
    const double ball = parabolic ? opt.eps_attract
                                  : std::min(opt.eps_attract, -pstar * 0.5);
    int left_half = 0;
    for (int n = 0; n <= opt.max_steps; ++n) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            return {OrbitClass::EscapingHeuristic, n, z, true};
        if (std::abs(z - std::complex<double>(pstar, 0.0)) < ball ||
            z == std::complex<double>(pstar, 0.0))
            return {OrbitClass::FatouAttracted, n, z - pstar, false};
        if (parabolic) {
            left_half = (z.real() < p.a - 1.0) ? left_half + 1 : 0;
            if (left_half >= opt.parabolic_window)
                return {OrbitClass::FatouAttracted, n, z, false};
        }
        if (z.real() > opt.escape_radius)
            return {OrbitClass::EscapingHeuristic, n, z, false};
        if (n == opt.max_steps) break;
        z = std::exp(z) + p.a;
    }
    return {OrbitClass::Unknown, opt.max_steps, z, false};
}

namespace {

void shade_pixel(std::uint8_t* px, OrbitClass cls, int steps, int max_steps) {
    const double f = max_steps > 0
                         ? 1.0 - std::min(1.0, static_cast<double>(steps) / max_steps)
                         : 0.0;
    switch (cls) {
        case OrbitClass::FatouAttracted:
            px[0] = 20;
            px[1] = static_cast<std::uint8_t>(40 + 60.0 * f);
            px[2] = static_cast<std::uint8_t>(120 + 135.0 * f);
            break;
        case OrbitClass::EscapingHeuristic:
            px[0] = 255;
            px[1] = static_cast<std::uint8_t>(40 + 215.0 * f);
            px[2] = 32;
            break;
        case OrbitClass::Unknown:
        default:
            px[0] = px[1] = px[2] = 0;
            break;
    }
}

}  // namespace

RasterImage render(const ExpParameter& p, const Viewport& vp, int width, int height,
                   const ClassifyOptions& opt) {
    if (width < 1 || height < 1) throw DomainError("render: size must be >= 1x1");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.viewport = vp;
    img.cls.assign(static_cast<std::size_t>(width) * height, OrbitClass::Unknown);
    img.steps.assign(static_cast<std::size_t>(width) * height, 0);
    img.rgb.assign(static_cast<std::size_t>(width) * height * 3, 0);

    const double dx = (vp.x1 - vp.x0) / width;
    const double dy = (vp.y1 - vp.y0) / height;
    auto run_rows = [&](int row0, int stride) {
        for (int r = row0; r < height; r += stride) {
            // Top row shows the top of the viewport.
            const double y = vp.y1 - (r + 0.5) * dy;
            for (int c = 0; c < width; ++c) {
                const double x = vp.x0 + (c + 0.5) * dx;
                const auto verdict = classify_orbit({x, y}, p, opt);
                const std::size_t idx = static_cast<std::size_t>(r) * width + c;
                img.cls[idx] = verdict.cls;
                img.steps[idx] = verdict.steps;
                shade_pixel(&img.rgb[idx * 3], verdict.cls, verdict.steps,
                            opt.max_steps);
            }
        }
    };
    const int stride = std::max(1u, std::min<unsigned>(
        std::thread::hardware_concurrency(), 16u));
    std::vector<std::thread> pool;
    for (int t = 1; t < stride; ++t) pool.emplace_back(run_rows, t, stride);
    run_rows(0, stride);
    for (auto& th : pool) th.join();
    return img;
}

std::string palette_legend() {
    return "attracted=blue (brighter = fewer steps), escaping-heuristic=orange "
           "(brighter = fewer steps), unknown=black";
}

void write_render_png(const RasterImage& img, const std::string& path) {
    std::vector<std::pair<std::string, std::string>> text;
    text.emplace_back("Legend", palette_legend());
    write_png_rgb8(path, img.width, img.height, img.rgb, text);
}

}  // namespace expbrush
