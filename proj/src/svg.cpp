#include "expbrush/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace expbrush {

namespace {

const char* kLevelColors[] = {"#1f77b4", "#2ca02c", "#d62728",
                              "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Model-to-pixel mapping with a fixed pixel frame and y flipped.
class Mapper {
public:
    Mapper(double x0, double x1, double y0, double y1, double wpx, double hpx)
        : x0_(x0), y1_(y1), wpx_(wpx), hpx_(hpx) {
        sx_ = wpx / std::max(1e-12, x1 - x0);
        sy_ = hpx / std::max(1e-12, y1 - y0);
    }
    double X(double x) const { return (x - x0_) * sx_; }
    double Y(double y) const { return (y1_ - y) * sy_; }
    double sx() const { return sx_; }
    double sy() const { return sy_; }
    double width() const { return wpx_; }
    double height() const { return hpx_; }
    double x0() const { return x0_; }
    double y1() const { return y1_; }

private:
    double x0_, y1_, wpx_, hpx_, sx_, sy_;
};

class SvgDoc {
public:
    SvgDoc(const Mapper& m) : m_(m) {
        os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        os_ << "<!-- transform: x_px = (x_model - " << fmt(m.x0()) << ") * "
            << fmt(m.sx()) << "; y_px = (" << fmt(m.y1())
            << " - y_model) * " << fmt(m.sy())
            << "; vertical axis = rational embedding coordinate -->\n";
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(m.width())
            << "\" height=\"" << fmt(m.height()) << "\" viewBox=\"0 0 "
            << fmt(m.width()) << " " << fmt(m.height()) << "\">\n";
        os_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width, const std::string& extra = "") {
        os_ << "<line x1=\"" << fmt(m_.X(x1)) << "\" y1=\"" << fmt(m_.Y(y1))
            << "\" x2=\"" << fmt(m_.X(x2)) << "\" y2=\"" << fmt(m_.Y(y2))
            << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
            << "\"" << extra << "/>\n";
    }
    void rect(double x, double y, double w, double h, const std::string& stroke) {
        os_ << "<rect x=\"" << fmt(m_.X(x)) << "\" y=\"" << fmt(m_.Y(y + h))
            << "\" width=\"" << fmt(w * m_.sx()) << "\" height=\"" << fmt(h * m_.sy())
            << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\"/>\n";
    }
    void poly(const std::vector<std::pair<double, double>>& pts,
              const std::string& stroke, double width) {
        os_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
            << fmt(width) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) os_ << " ";
            os_ << fmt(m_.X(pts[i].first)) << "," << fmt(m_.Y(pts[i].second));
        }
        os_ << "\"/>\n";
    }
    void dot(double x, double y, double r, const std::string& fill) {
        os_ << "<circle cx=\"" << fmt(m_.X(x)) << "\" cy=\"" << fmt(m_.Y(y))
            << "\" r=\"" << fmt(r) << "\" fill=\"" << fill << "\"/>\n";
    }
    std::string close() {
        os_ << "</svg>\n";
        return os_.str();
    }

private:
    const Mapper& m_;
    std::ostringstream os_;
};

struct Bounds {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    void add(double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    void pad(double fx, double fy) {
        const double dx = std::max(1e-9, (x1 - x0) * fx);
        const double dy = std::max(1e-9, (y1 - y0) * fy);
        x0 -= dx;
        x1 += dx;
        y0 -= dy;
        y1 += dy;
    }
};

void draw_hairs(SvgDoc& doc, const SubBrush& sb, double x_right) {
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const double h = approx_height(sb.addresses[i]);
        if (sb.tips[i] < x_right)
            doc.line(sb.tips[i], h, x_right, h, "#999999", 1.0);
        doc.dot(sb.tips[i], h, 2.0, "#555555");
    }
}

}  // namespace

std::string curve_svg(const CurveBuild& build, const JordanCurve* jordan,
                      const SubBrush& sb) {
    Bounds bb;
    bb.x0 = build.chain.seed.a;
    bb.x1 = build.chain.seed.b;
    bb.y0 = rat_to_double(build.chain.seed.c);
    bb.y1 = rat_to_double(build.chain.seed.d);
    for (const auto& fam : build.chain.families)
        for (const auto& box : fam.boxes) {
            bb.add(box.a, rat_to_double(box.c));
            bb.add(box.b, rat_to_double(box.d));
        }
    bb.pad(0.08, 0.08);

    Mapper m(bb.x0, bb.x1, bb.y0, bb.y1, 900, 640);
    SvgDoc doc(m);
    draw_hairs(doc, sb, bb.x1);

    for (std::size_t ki = 1; ki < build.chain.families.size(); ++ki) {
        const auto& fam = build.chain.families[ki];
        const char* color = kLevelColors[(ki - 1) % std::size(kLevelColors)];
        for (const auto& box : fam.boxes)
            doc.rect(box.a, rat_to_double(box.c), box.b - box.a,
                     rat_to_double(box.d - box.c), color);
    }
    for (std::size_t gi = 0; gi < build.snapshots.size(); ++gi) {
        const char* color =
            gi == 0 ? "#bbbbbb" : kLevelColors[(gi - 1) % std::size(kLevelColors)];
        std::vector<std::pair<double, double>> pts;
        for (const auto& v : build.snapshots[gi].v)
            pts.emplace_back(v.x, rat_to_double(v.y));
        doc.poly(pts, color, gi + 1 == build.snapshots.size() ? 1.6 : 1.0);
    }
    if (jordan) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& v : jordan->loop) pts.emplace_back(v.x, rat_to_double(v.y));
        if (!pts.empty()) pts.push_back(pts.front());
        doc.poly(pts, "#000000", 2.2);
    }
    return doc.close();
}

std::string path_svg(const Route& route, const SubBrush& sb) {
    Bounds bb;
    bool first = true;
    for (const auto& v : route.vertices) {
        const double y = route_vertex_height(v);
        if (first) {
            bb.x0 = bb.x1 = v.x;
            bb.y0 = bb.y1 = y;
            first = false;
        }
        bb.add(v.x, y);
    }
    for (std::size_t i = 0; i < sb.size(); ++i) bb.add(sb.tips[i], approx_height(sb.addresses[i]));
    bb.pad(0.08, 0.08);

    Mapper m(bb.x0, bb.x1, bb.y0, bb.y1, 900, 640);
    SvgDoc doc(m);
    draw_hairs(doc, sb, bb.x1);

    std::vector<std::pair<double, double>> pts;
    for (const auto& v : route.vertices)
        pts.emplace_back(v.x, route_vertex_height(v));
    doc.poly(pts, "#0044cc", 2.0);
    if (!pts.empty()) {
        doc.dot(pts.front().first, pts.front().second, 3.5, "#007700");
        doc.dot(pts.back().first, pts.back().second, 3.5, "#770000");
    }
    for (const auto& c : route.contacts)
        doc.dot(c.t, approx_height(c.s), 3.0, c.certified ? "#00aa00" : "#cc0000");
    return doc.close();
}

}  // namespace expbrush
