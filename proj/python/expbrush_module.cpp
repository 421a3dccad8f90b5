#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expbrush/complex_plane.hpp"
#include "expbrush/curve.hpp"
#include "expbrush/path.hpp"
#include "expbrush/svg.hpp"

namespace py = pybind11;
namespace eb = expbrush;

namespace {

eb::SubBrush sub_brush_from_strings(const std::vector<std::string>& addrs,
                                    std::size_t depth) {
    std::vector<eb::ExternalAddress> as;
    as.reserve(addrs.size());
    for (const auto& a : addrs) as.push_back(eb::ExternalAddress::parse(a));
    return eb::make_sub_brush(std::move(as), depth);
}

py::dict certificate_dict(const eb::EscapeCertificate& cert) {
    py::list checks;
    for (const auto& ch : cert.checks) {
        py::dict d;
        d["k"] = ch.k;
        d["bound"] = ch.bound.str();
        d["required"] = ch.required.str();
        d["pass"] = ch.pass;
        checks.append(d);
    }
    py::dict out;
    out["kmax"] = cert.kmax;
    out["passed"] = cert.passed;
    out["checks"] = checks;
    return out;
}

}  // namespace

PYBIND11_MODULE(expbrush, m) {
    m.doc() = "brush-model toolkit for exponential-family Julia dynamics";

    py::register_exception<eb::Error>(m, "BrushError");

    m.def("growth", &eb::growth, py::arg("t"), "e^t - 1");
    m.def("growth_inv", &eb::growth_inv, py::arg("t"), "ln(t + 1)");
    m.def("growth_inv_iter", &eb::growth_inv_iter, py::arg("n"), py::arg("t"));
    m.def("inv_square_partial_sum", &eb::inv_square_partial_sum, py::arg("kmax"));

    m.def(
        "tip",
        [](const std::string& address, std::size_t depth) {
            return eb::tip(eb::ExternalAddress::parse(address), depth);
        },
        py::arg("address"), py::arg("depth") = 64,
        "minimal potential keeping the orbit nonnegative for `depth` steps");

    m.def(
        "shift",
        [](const std::string& address) {
            return eb::ExternalAddress::parse(address).shifted().str();
        },
        py::arg("address"));

    m.def(
        "cylinder_interval",
        [](const std::string& address, std::size_t depth) {
            const auto iv =
                eb::embed_point(eb::ExternalAddress::parse(address), depth);
            return py::make_tuple(eb::rat_to_string(iv.lo), eb::rat_to_string(iv.hi));
        },
        py::arg("address"), py::arg("depth"),
        "exact rational endpoints of the depth-cylinder around the address");

    m.def(
        "classify",
        [](double t, const std::string& address, std::uint64_t kmax) {
            const auto x = eb::ModelPoint::make(t, eb::ExternalAddress::parse(address));
            const std::size_t depth = static_cast<std::size_t>(2 * kmax * kmax);
            const auto trace = eb::orbit_lower_bounds(x, depth);
            py::dict out;
            out["address"] = address;
            out["t"] = t;
            if (!trace.ok()) {
                out["state"] = "LEFT-DOMAIN";
                out["failed_step"] = *trace.failed_index;
                return out;
            }
            const auto cert = eb::certify_escape(x, kmax);
            out["state"] = cert.passed ? "CERTIFIED-ESCAPING" : "UNKNOWN";
            out["certificate"] = certificate_dict(cert);
            return out;
        },
        py::arg("t"), py::arg("address"), py::arg("kmax") = 6);

    m.def(
        "build_boxes",
        [](const std::vector<std::string>& addresses, int kmax, int offset,
           std::size_t depth, double a, double b, const std::string& c,
           const std::string& d) {
            const auto sb = sub_brush_from_strings(addresses, depth);
            eb::Rect seed{a, b, eb::rat_parse(c), eb::rat_parse(d)};
            const auto chain = eb::build_chain(sb, kmax, offset, seed);
            const auto rep = eb::validate_families(chain, sb);
            py::list levels;
            for (const auto& fam : chain.families) {
                py::list boxes;
                for (const auto& box : fam.boxes) {
                    py::dict bd;
                    bd["a"] = box.a;
                    bd["b"] = box.b;
                    bd["c"] = eb::rat_to_string(box.c);
                    bd["d"] = eb::rat_to_string(box.d);
                    boxes.append(bd);
                }
                py::dict fd;
                fd["k"] = fam.level;
                fd["width"] = fam.width;
                fd["boxes"] = boxes;
                levels.append(fd);
            }
            py::dict out;
            out["levels"] = levels;
            out["valid"] = rep.pass;
            out["terminated_early"] = chain.terminated_early;
            return out;
        },
        py::arg("addresses"), py::arg("kmax") = 3, py::arg("offset") = 0,
        py::arg("depth") = 64, py::arg("a") = -1.0, py::arg("b") = 1.0,
        py::arg("c") = std::string("-1"), py::arg("d") = std::string("1"));

    m.def(
        "curve_svg",
        [](const std::vector<std::string>& addresses, int kmax, int offset,
           std::size_t depth) {
            const auto sb = sub_brush_from_strings(addresses, depth);
            const auto build = eb::build_curve(sb, kmax, offset, eb::Rect{});
            const auto jordan = eb::assemble_jordan(build.curve, eb::Rect{});
            return eb::curve_svg(build, &jordan, sb);
        },
        py::arg("addresses"), py::arg("kmax") = 3, py::arg("offset") = 0,
        py::arg("depth") = 64,
        "SVG of the construction over the default seed rectangle");

    m.def(
        "find_fixed_point",
        [](double a) { return eb::find_fixed_point(eb::make_parameter(a)); },
        py::arg("a"));

    m.def(
        "render_png",
        [](const std::string& path, double a, double x0, double x1, double y0,
           double y1, int width, int height, int max_steps) {
            eb::ClassifyOptions opt;
            opt.max_steps = max_steps;
            const auto img = eb::render(eb::make_parameter(a),
                                        eb::Viewport{x0, x1, y0, y1}, width, height, opt);
            eb::write_render_png(img, path);
        },
        py::arg("path"), py::arg("a") = -1.0, py::arg("x0") = -4.0,
        py::arg("x1") = 4.0, py::arg("y0") = -4.0, py::arg("y1") = 4.0,
        py::arg("width") = 256, py::arg("height") = 256, py::arg("max_steps") = 512);
}
