#include "expbrush/path.hpp"

#include <algorithm>
#include <cmath>

namespace expbrush {

namespace {

double min_tip(const SubBrush& sb) {
    double m = 0.0;
    for (double t : sb.tips) m = std::min(m, t);
    return m;
}

// Is the open vertical segment {x} x (ylo, yhi) blocked by a hair?
bool column_blocked(const SubBrush& sb, double x, const Rat& ylo, const Rat& yhi) {
    for (std::size_t i = 0; i < sb.size(); ++i) {
        if (!(sb.tips[i] <= x)) continue;
        if (compare_height(sb.addresses[i], ylo) == std::strong_ordering::greater &&
            compare_height(sb.addresses[i], yhi) == std::strong_ordering::less)
            return true;
    }
    return false;
}

void push_vertex(std::vector<RouteVertex>& out, RouteVertex v) {
    if (!out.empty()) {
        const auto& b = out.back();
        const bool same_y = b.y.index() == v.y.index() &&
                            (b.y.index() == 0
                                 ? std::get<Rat>(b.y) == std::get<Rat>(v.y)
                                 : std::get<ExternalAddress>(b.y) ==
                                       std::get<ExternalAddress>(v.y));
        if (b.x == v.x && same_y) return;
    }
    out.push_back(std::move(v));
}

std::vector<RouteVertex> route_complement(const SubBrush& sb, const PlanarPoint& p0,
                                          const PlanarPoint& p1) {
    std::vector<RouteVertex> out;
    push_vertex(out, {p0.x, p0.y});
    const Rat ylo = std::min(p0.y, p1.y);
    const Rat yhi = std::max(p0.y, p1.y);
    if (!column_blocked(sb, p0.x, ylo, yhi)) {
        // Vertical first, then along the rational height of p1.
        push_vertex(out, {p0.x, p1.y});
    } else if (!column_blocked(sb, p1.x, ylo, yhi)) {
        push_vertex(out, {p1.x, p0.y});
    } else {
        // Detour left of every tip: that column meets no hair.
        const double xl = std::min({p0.x, p1.x, min_tip(sb)}) - 1.0;
        push_vertex(out, {xl, p0.y});
        push_vertex(out, {xl, p1.y});
    }
    push_vertex(out, {p1.x, p1.y});
    return out;
}

// Witness-pair certification of a brush point (x, hair s): at each level
// j = l+1 .. l+levels the tower orbit bound at iterate 2j^2 must reach
// growth^{j^2}(1).
BrushContact certify_contact(const ExternalAddress& s, double x, int offset,
                             int levels, const std::string& method) {
    BrushContact contact;
    contact.s = s;
    contact.t = x;
    contact.method = method;
    contact.certified = true;
    const auto point = ModelPoint::make(x, s);
    for (int k = 1; k <= levels; ++k) {
        const auto j = static_cast<std::uint64_t>(offset + k);
        bool pass = false;
        const auto trace = orbit_lower_bounds(point, 2 * j * j);
        if (trace.ok())
            pass = trace.potentials[2 * j * j] >= growth_pow_of_one(j * j);
        contact.checks.push_back({j, pass});
        contact.certified = contact.certified && pass;
    }
    return contact;
}

struct HairLeg {
    std::vector<RouteVertex> vertices;  // from an off-brush corner to the hair point
    std::vector<BrushContact> contacts;
};

// Route from the seed corner of a Jordan curve around (t1, s1) along the
// curve to its crossing with the hair, then along the hair to the point.
HairLeg hair_leg(const SubBrush& sb, const HairPoint& hp, int kmax) {
    bool declared = false;
    for (const auto& a : sb.addresses) declared = declared || a == hp.s;
    if (!declared)
        throw PreconditionError("path endpoint address " + hp.s.str() +
                                " is not in the sub-brush");
    const double tip1 = tip(hp.s, sb.depth);
    if (!(hp.t > tip1))
        throw PreconditionError("path endpoint sits at or below its hair tip");

    // Seed around the hair point; the left edge sits left of every tip.
    Rect seed;
    seed.a = std::min(0.0, min_tip(sb)) - 1.0;
    seed.b = hp.t + 1.0;
    const long long band = hp.s.entry(0);
    seed.c = Rat(band);
    seed.d = Rat(band + 1);
    for (std::size_t pass = 0; pass <= sb.size() + 1; ++pass) {
        bool dirty = false;
        for (std::size_t i = 0; i < sb.size(); ++i) {
            if (!(sb.tips[i] <= seed.b)) continue;
            const auto& s = sb.addresses[i];
            if (compare_height(s, seed.c) == std::strong_ordering::equal) {
                seed.c = rational_between(hp.s, seed.c);
                dirty = true;
            }
            if (compare_height(s, seed.d) == std::strong_ordering::equal) {
                seed.d = rational_between(hp.s, seed.d);
                dirty = true;
            }
        }
        if (!dirty) break;
    }

    auto build = build_curve(sb, kmax, 0, seed);
    auto jordan = assemble_jordan(build.curve, seed);
    if (build.levels_built < 1)
        throw Error("path: no box family meets the hair (resolution too coarse)");

    HairLeg leg;
    // Walk the loop from its closing corner (seed.a, seed.c) forward through
    // the arc until the segment at the final right edge crossing the hair.
    const auto& loop = jordan.loop;
    const double b_final = build.chain.families[build.levels_built].right_edge;
    std::size_t cross_seg = loop.size();
    for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
        const auto& u = loop[i];
        const auto& v = loop[i + 1];
        if (u.x == v.x && u.x == b_final) {
            const Rat lo = std::min(u.y, v.y);
            const Rat hi = std::max(u.y, v.y);
            if (compare_height(hp.s, lo) == std::strong_ordering::greater &&
                compare_height(hp.s, hi) == std::strong_ordering::less) {
                cross_seg = i;
                break;
            }
        }
    }
    if (cross_seg == loop.size())
        throw Error("path: curve does not cross the target hair");

    push_vertex(leg.vertices, {loop.back().x, loop.back().y});  // (seed.a, seed.c)
    for (std::size_t i = 0; i <= cross_seg; ++i)
        push_vertex(leg.vertices, {loop[i].x, loop[i].y});
    push_vertex(leg.vertices, {b_final, hp.s});       // crossing point, on the hair
    push_vertex(leg.vertices, {hp.t, hp.s});          // along the hair to the endpoint

    // Brush contacts along the walked portion: hairs crossing any walked
    // vertical segment (horizontal runs have rational heights).
    auto walked_contact = [&](double x, const Rat& lo, const Rat& hi) {
        for (std::size_t i = 0; i < sb.size(); ++i) {
            if (!(sb.tips[i] <= x)) continue;
            const auto& s = sb.addresses[i];
            if (compare_height(s, lo) == std::strong_ordering::greater &&
                compare_height(s, hi) == std::strong_ordering::less) {
                leg.contacts.push_back(certify_contact(s, x, 0, build.levels_built,
                                                       "witness-pair"));
            }
        }
    };
    // Hairs crossing the partial run that ends on the target hair.
    auto walked_contact_mixed = [&](double x, const Rat& r) {
        const bool hair_above = compare_height(hp.s, r) == std::strong_ordering::greater;
        for (std::size_t i = 0; i < sb.size(); ++i) {
            if (!(sb.tips[i] <= x)) continue;
            const auto& s = sb.addresses[i];
            if (s == hp.s) continue;
            const auto vs_r = compare_height(s, r);
            const auto vs_hair = s.lex_cmp(hp.s);  // order embedding: lex = height order
            const bool between = hair_above
                ? (vs_r == std::strong_ordering::greater &&
                   vs_hair == std::strong_ordering::less)
                : (vs_r == std::strong_ordering::less &&
                   vs_hair == std::strong_ordering::greater);
            if (between)
                leg.contacts.push_back(certify_contact(s, x, 0, build.levels_built,
                                                       "witness-pair"));
        }
    };
    for (std::size_t i = 0; i + 1 < leg.vertices.size(); ++i) {
        const auto& u = leg.vertices[i];
        const auto& v = leg.vertices[i + 1];
        if (u.x != v.x) continue;
        if (u.y.index() == 0 && v.y.index() == 0) {
            walked_contact(u.x, std::min(std::get<Rat>(u.y), std::get<Rat>(v.y)),
                           std::max(std::get<Rat>(u.y), std::get<Rat>(v.y)));
        } else if (u.y.index() == 0) {
            walked_contact_mixed(u.x, std::get<Rat>(u.y));
        }
    }
    // The endpoint itself (and with it the whole on-hair run, which only has
    // larger potentials) carries the double-square certificate.
    const auto kcert = static_cast<std::uint64_t>(std::max(5, kmax));
    auto cert = certify_escape(ModelPoint::make(hp.t, hp.s), kcert);
    if (!cert.passed)
        throw Error("path: hair endpoint not certified at this depth");
    BrushContact endpoint;
    endpoint.s = hp.s;
    endpoint.t = hp.t;
    endpoint.method = "double-square";
    for (const auto& ch : cert.checks) endpoint.checks.push_back({ch.k, ch.pass});
    endpoint.certified = cert.passed;
    leg.contacts.push_back(std::move(endpoint));
    // The crossing point on the final right edge shares the hair with larger
    // potential; record its witness-pair certification too.
    leg.contacts.push_back(
        certify_contact(hp.s, b_final, 0, build.levels_built, "witness-pair"));
    return leg;
}

PlanarPoint leg_corner(const HairLeg& leg) {
    const auto& v = leg.vertices.front();
    return PlanarPoint{v.x, std::get<Rat>(v.y)};
}

void append_route(Route& route, const std::vector<RouteVertex>& vs) {
    for (const auto& v : vs) push_vertex(route.vertices, v);
}

}  // namespace

double route_vertex_height(const RouteVertex& v) {
    if (v.y.index() == 0) return rat_to_double(std::get<Rat>(v.y));
    return approx_height(std::get<ExternalAddress>(v.y));
}

Route path_between(const PathEndpoint& e0, const PathEndpoint& e1,
                   const SubBrush& sb, int kmax) {
    Route route;
    const auto* p0 = std::get_if<PlanarPoint>(&e0);
    const auto* p1 = std::get_if<PlanarPoint>(&e1);
    const auto* h0 = std::get_if<HairPoint>(&e0);
    const auto* h1 = std::get_if<HairPoint>(&e1);

    // Coincident endpoints: a single-vertex path.
    if (p0 && p1 && p0->x == p1->x && p0->y == p1->y) {
        route.kind = "trivial";
        route.vertices.push_back({p0->x, p0->y});
        return route;
    }
    if (h0 && h1 && h0->t == h1->t && h0->s == h1->s) {
        route.kind = "trivial";
        route.vertices.push_back({h0->t, h0->s});
        const auto kcert = static_cast<std::uint64_t>(std::max(5, kmax));
        auto cert = certify_escape(ModelPoint::make(h0->t, h0->s), kcert);
        if (!cert.passed) throw Error("path: endpoint not certified at this depth");
        BrushContact c;
        c.s = h0->s;
        c.t = h0->t;
        c.method = "double-square";
        for (const auto& ch : cert.checks) c.checks.push_back({ch.k, ch.pass});
        c.certified = true;
        route.contacts.push_back(std::move(c));
        return route;
    }

    if (p0 && p1) {
        route.kind = "complement-complement";
        append_route(route, route_complement(sb, *p0, *p1));
        return route;
    }

    if (p0 && h1) {
        route.kind = "complement-escaping";
        auto leg = hair_leg(sb, *h1, kmax);
        append_route(route, route_complement(sb, *p0, leg_corner(leg)));
        append_route(route, leg.vertices);
        route.contacts = std::move(leg.contacts);
        for (const auto& c : route.contacts)
            if (!c.certified)
                throw Error("path: uncertified brush contact on route (address " +
                            c.s.str() + ")");
        return route;
    }

    if (h0 && p1) {
        auto rev = path_between(e1, e0, sb, kmax);
        route.kind = "complement-escaping";
        route.contacts = std::move(rev.contacts);
        route.vertices.assign(rev.vertices.rbegin(), rev.vertices.rend());
        return route;
    }

    // escaping-escaping: both legs join at a waypoint left of every tip.
    route.kind = "escaping-escaping";
    auto leg0 = hair_leg(sb, *h0, kmax);
    auto leg1 = hair_leg(sb, *h1, kmax);
    const PlanarPoint c0 = leg_corner(leg0);
    const PlanarPoint c1 = leg_corner(leg1);
    std::vector<RouteVertex> first(leg0.vertices.rbegin(), leg0.vertices.rend());
    append_route(route, first);
    append_route(route, route_complement(sb, c0, c1));
    append_route(route, leg1.vertices);
    route.contacts = std::move(leg0.contacts);
    for (auto& c : leg1.contacts) route.contacts.push_back(std::move(c));
    for (const auto& c : route.contacts)
        if (!c.certified)
            throw Error("path: uncertified brush contact on route (address " +
                        c.s.str() + ")");
    return route;
}

}  // namespace expbrush
