#include "expbrush/curve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace expbrush {

namespace {

Rat seg_lo_y(const CurveVertex& u, const CurveVertex& v) { return std::min(u.y, v.y); }
Rat seg_hi_y(const CurveVertex& u, const CurveVertex& v) { return std::max(u.y, v.y); }

// Sup displacement of the corner-fixing boundary walk that carries a left
// edge of height h around a box of width w: reached where the walk leaves
// the bottom edge, at distance hypot(w, w*h/perimeter).
double walk_deviation(double w, double h) {
    const double p = h + 2.0 * w;
    return std::hypot(w, w * h / p);
}

}  // namespace

Polyline seed_curve(const Rect& seed) {
    Polyline g;
    g.level = 0;
    g.v.push_back({seed.b, seed.c});
    g.v.push_back({seed.b, seed.d});
    return g;
}

RefineResult refine_curve(const Polyline& g_prev, const BoxFamily& fam, int offset) {
    RefineResult res;
    res.stats.level = fam.level;
    res.stats.box_count = fam.boxes.size();
    res.stats.bound_sqrt2_w = std::sqrt(2.0) * fam.width;
    const double lk = static_cast<double>(offset + fam.level);
    res.stats.bound_five = 5.0 / (lk * lk);
    res.curve.level = fam.level;
    res.curve.cauchy_bound = g_prev.cauchy_bound;

    if (g_prev.v.size() < 2) throw PreconditionError("refine_curve: degenerate curve");

    // No refinement step may meet a box interior except across a full left
    // edge; audit the incoming curve against the whole family first.
    for (std::size_t si = 0; si + 1 < g_prev.v.size(); ++si) {
        const auto& u = g_prev.v[si];
        const auto& v = g_prev.v[si + 1];
        for (const auto& box : fam.boxes) {
            bool interior;
            if (u.x == v.x) {
                interior = box.a < u.x && u.x < box.b &&
                           std::max(seg_lo_y(u, v), box.c) < std::min(seg_hi_y(u, v), box.d);
            } else {
                const double xlo = std::min(u.x, v.x), xhi = std::max(u.x, v.x);
                interior = box.c < u.y && u.y < box.d &&
                           std::max(xlo, box.a) < std::min(xhi, box.b);
            }
            if (interior)
                throw Error("refine_curve: curve crosses a box interior away from its left edge");
        }
    }

    std::vector<bool> consumed(fam.boxes.size(), false);
    auto& out = res.curve.v;
    auto push = [&out](const CurveVertex& v) {
        if (out.empty() || !(out.back() == v)) out.push_back(v);
    };

    for (std::size_t si = 0; si + 1 < g_prev.v.size(); ++si) {
        const auto& u = g_prev.v[si];
        const auto& v = g_prev.v[si + 1];
        push(u);
        if (!(u.x == v.x) || u.x != fam.left_edge || fam.boxes.empty()) continue;
        const bool up = v.y > u.y;
        const Rat ylo = seg_lo_y(u, v);
        const Rat yhi = seg_hi_y(u, v);

        // Boxes whose left edge lies inside this run, in travel order.
        std::vector<std::size_t> hit;
        for (std::size_t bi = 0; bi < fam.boxes.size(); ++bi) {
            const auto& box = fam.boxes[bi];
            if (box.c >= ylo && box.d <= yhi) {
                hit.push_back(bi);
            } else if (std::max(box.c, ylo) < std::min(box.d, yhi)) {
                throw Error("refine_curve: box left edge only partially on the curve");
            }
        }
        std::sort(hit.begin(), hit.end(), [&](std::size_t i, std::size_t j) {
            return up ? fam.boxes[i].c < fam.boxes[j].c : fam.boxes[i].c > fam.boxes[j].c;
        });
        for (std::size_t bi : hit) {
            if (consumed[bi]) throw Error("refine_curve: box traversed twice");
            consumed[bi] = true;
            const auto& box = fam.boxes[bi];
            if (up) {
                push({box.a, box.c});
                push({box.b, box.c});
                push({box.b, box.d});
                push({box.a, box.d});
            } else {
                push({box.a, box.d});
                push({box.b, box.d});
                push({box.b, box.c});
                push({box.a, box.c});
            }
            const double h = rat_to_double(box.d - box.c);
            res.stats.max_dev = std::max(res.stats.max_dev, walk_deviation(fam.width, h));
        }
    }
    push(g_prev.v.back());

    for (std::size_t bi = 0; bi < fam.boxes.size(); ++bi)
        if (!consumed[bi])
            throw Error("refine_curve: box not reached by the curve (level " +
                        std::to_string(fam.level) + ", index " + std::to_string(bi) + ")");
    return res;
}

double cauchy_tail_bound(int kmax, int l) {
    const int terms = 200000;
    double s = 5.0 / static_cast<double>(l + kmax + terms);  // integral tail
    for (int j = kmax + terms; j > kmax; --j) {
        const double m = static_cast<double>(l + j);
        s += 5.0 / (m * m);
    }
    return s;
}

CurveBuild build_curve(const SubBrush& sb, int kmax, int l, const Rect& seed) {
    CurveBuild out;
    out.chain.seed = seed;
    out.chain.offset = l;
    out.chain.families.push_back(seed_family(seed, sb));
    out.curve = seed_curve(seed);
    out.snapshots.push_back(out.curve);
    for (int k = 1; k <= kmax; ++k) {
        auto fam = next_family(out.chain.families.back(), sb, k, l);
        const bool empty = fam.boxes.empty();
        out.chain.families.push_back(fam);
        if (empty) {
            out.chain.terminated_early = true;
            break;
        }
        auto res = refine_curve(out.curve, fam, l);
        out.curve = std::move(res.curve);
        out.snapshots.push_back(out.curve);
        out.stats.push_back(res.stats);
        out.levels_built = k;
    }
    // A level with no boxes ends the construction for good: the curve is
    // exact.  Otherwise the unbuilt levels contribute the series tail.
    out.cauchy_tail = out.chain.terminated_early ? 0.0 : cauchy_tail_bound(kmax, l);
    out.curve.cauchy_bound = out.cauchy_tail;
    for (std::size_t gi = 0; gi < out.snapshots.size(); ++gi)
        out.snapshots[gi].cauchy_bound =
            out.chain.terminated_early && gi + 1 == out.snapshots.size()
                ? 0.0
                : cauchy_tail_bound(static_cast<int>(gi), l);
    return out;
}

namespace {

struct XSeg {
    std::size_t id = 0;
    bool vertical = false;
    Rat x1, x2;  // x1 <= x2 (equal for vertical)
    Rat y1, y2;  // y1 <= y2 (equal for horizontal)
};

std::vector<XSeg> loop_segments(const std::vector<CurveVertex>& loop) {
    const std::size_t n = loop.size();
    std::vector<XSeg> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& u = loop[i];
        const auto& v = loop[(i + 1) % n];
        XSeg s;
        s.id = i;
        if (u.x == v.x && u.y == v.y)
            throw PreconditionError("loop has a zero-length segment");
        if (u.x == v.x) {
            s.vertical = true;
            s.x1 = s.x2 = rat_from_double(u.x);
            s.y1 = std::min(u.y, v.y);
            s.y2 = std::max(u.y, v.y);
        } else if (u.y == v.y) {
            s.vertical = false;
            s.y1 = s.y2 = u.y;
            s.x1 = rat_from_double(std::min(u.x, v.x));
            s.x2 = rat_from_double(std::max(u.x, v.x));
        } else {
            throw PreconditionError("loop segment is not axis-parallel");
        }
        segs.push_back(std::move(s));
    }
    return segs;
}

bool adjacent_in_loop(std::size_t i, std::size_t j, std::size_t n) {
    const std::size_t d = i < j ? j - i : i - j;
    return d == 1 || d == n - 1;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(
    const std::vector<CurveVertex>& loop) {
    const auto segs = loop_segments(loop);
    const std::size_t n = segs.size();

    // Collinear pairs: group by the shared coordinate, sort by span, and
    // test neighbors.  Non-adjacent segments may not touch at all; adjacent
    // collinear segments may share only their common vertex.
    auto scan_collinear = [&](bool vertical)
        -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::map<Rat, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < n; ++i)
            if (segs[i].vertical == vertical)
                groups[vertical ? segs[i].x1 : segs[i].y1].push_back(i);
        for (auto& [coord, ids] : groups) {
            (void)coord;
            for (std::size_t a = 0; a < ids.size(); ++a) {
                for (std::size_t b = a + 1; b < ids.size(); ++b) {
                    const auto& s = segs[ids[a]];
                    const auto& t = segs[ids[b]];
                    const Rat lo = vertical ? std::max(s.y1, t.y1) : std::max(s.x1, t.x1);
                    const Rat hi = vertical ? std::min(s.y2, t.y2) : std::min(s.x2, t.x2);
                    if (lo > hi) continue;  // disjoint
                    if (adjacent_in_loop(ids[a], ids[b], n) && lo == hi)
                        continue;  // shared vertex only
                    return std::make_pair(std::min(ids[a], ids[b]),
                                          std::max(ids[a], ids[b]));
                }
            }
        }
        return std::nullopt;
    };
    if (auto r = scan_collinear(true)) return r;
    if (auto r = scan_collinear(false)) return r;

    // Vertical against horizontal: sweep over x with an active set of
    // horizontal segments keyed by y.  At equal x, horizontals open before
    // verticals are tested and close after, so endpoint touches are seen.
    enum class Kind { Open = 0, Vertical = 1, Close = 2 };
    struct Event {
        Rat x;
        Kind kind;
        std::size_t idx;
    };
    std::vector<Event> events;
    for (std::size_t i = 0; i < n; ++i) {
        if (segs[i].vertical) {
            events.push_back({segs[i].x1, Kind::Vertical, i});
        } else {
            events.push_back({segs[i].x1, Kind::Open, i});
            events.push_back({segs[i].x2, Kind::Close, i});
        }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.x != b.x) return a.x < b.x;
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    });
    std::multimap<Rat, std::size_t> active;  // y -> horizontal segment id
    for (const auto& ev : events) {
        const auto& s = segs[ev.idx];
        if (ev.kind == Kind::Open) {
            active.emplace(s.y1, ev.idx);
        } else if (ev.kind == Kind::Close) {
            auto range = active.equal_range(s.y1);
            for (auto it = range.first; it != range.second; ++it) {
                if (it->second == ev.idx) {
                    active.erase(it);
                    break;
                }
            }
        } else {
            for (auto it = active.lower_bound(s.y1);
                 it != active.end() && it->first <= s.y2; ++it) {
                const std::size_t h = it->second;
                if (adjacent_in_loop(ev.idx, h, n)) continue;  // meet at shared vertex
                return std::make_pair(std::min(ev.idx, h), std::max(ev.idx, h));
            }
        }
    }
    return std::nullopt;
}

bool point_in_loop(const std::vector<CurveVertex>& loop, const Rat& x, const Rat& y) {
    const auto segs = loop_segments(loop);
    bool inside = false;
    for (const auto& s : segs) {
        if (!s.vertical) continue;
        if (s.x1 > x && s.y1 <= y && y < s.y2) inside = !inside;
    }
    return inside;
}

JordanCurve assemble_jordan(const Polyline& arc, const Rect& seed) {
    if (arc.v.size() < 2) throw PreconditionError("assemble_jordan: arc too short");
    const CurveVertex lo{seed.b, seed.c};
    const CurveVertex hi{seed.b, seed.d};
    if (!(arc.v.front() == lo) || !(arc.v.back() == hi))
        throw PreconditionError(
            "assemble_jordan: arc endpoints must be the seed's right corners");

    JordanCurve jc;
    jc.seed = seed;
    jc.arc = arc;
    jc.loop = arc.v;
    jc.loop.push_back({seed.a, seed.d});
    jc.loop.push_back({seed.a, seed.c});

    if (auto hitpair = find_self_intersection(jc.loop))
        throw CurveNotSimple(hitpair->first, hitpair->second);

    // Orientation from the exact shoelace sum; winding of the seed center is
    // that orientation when the center is enclosed.
    Rat area2 = 0;
    const std::size_t m = jc.loop.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& u = jc.loop[i];
        const auto& v = jc.loop[(i + 1) % m];
        area2 += rat_from_double(u.x) * v.y - rat_from_double(v.x) * u.y;
    }
    const Rat cx = (rat_from_double(seed.a) + rat_from_double(seed.b)) / 2;
    const Rat cy = (seed.c + seed.d) / 2;
    if (point_in_loop(jc.loop, cx, cy))
        jc.winding = area2 > 0 ? 1 : -1;
    else
        jc.winding = 0;
    return jc;
}

int pick_level_offset(double budget) {
    if (!(budget > 0)) throw DomainError("pick_level_offset: budget must be > 0");
    const int terms = 512;
    // One shared staircase: sq_width[m-1] = growth_inv_iter(m^2, 1).
    std::vector<double> sq_width;
    double u = 1.0;
    std::uint64_t n = 0;
    auto extend_to = [&](std::size_t m_max) {
        while (sq_width.size() < m_max) {
            const std::uint64_t m = sq_width.size() + 1;
            for (; n < m * m; ++n) u = std::log1p(u);
            sq_width.push_back(u);
        }
    };
    for (int l = 0; l <= 2000; ++l) {
        extend_to(static_cast<std::size_t>(l) + terms);
        double sum = 3.0 / static_cast<double>(l + terms);  // tail over k > terms
        for (int k = terms; k >= 1; --k) sum += sq_width[l + k - 1];
        if (sum < budget) return l;
    }
    throw DomainError("pick_level_offset: budget unreachable");
}

LocalizedBuild localized_curve(double x0, const Rat& y0, double eps,
                               const SubBrush& sb, int kmax) {
    if (!(eps > 0)) throw DomainError("localized_curve: eps must be > 0");
    const double half = eps / 4.0;
    Rect seed;
    seed.a = x0 - half;
    seed.b = x0 + half;
    seed.c = y0 - rat_from_double(half);
    seed.d = y0 + rat_from_double(half);

    // Dodge the sub-brush: top/bottom edges may not sit on a hair height, and
    // no hair may cross the left edge.  Bounds only ever move toward y0.
    for (std::size_t pass = 0; pass <= sb.size() + 1; ++pass) {
        bool dirty = false;
        for (std::size_t i = 0; i < sb.size(); ++i) {
            const auto& s = sb.addresses[i];
            if (compare_height(s, seed.c) == std::strong_ordering::equal) {
                seed.c = (seed.c + y0) / 2;
                dirty = true;
            }
            if (compare_height(s, seed.d) == std::strong_ordering::equal) {
                seed.d = (seed.d + y0) / 2;
                dirty = true;
            }
            if (sb.tips[i] <= seed.a &&
                compare_height(s, seed.c) == std::strong_ordering::greater &&
                compare_height(s, seed.d) == std::strong_ordering::less) {
                // Hair through the left edge: pull the nearer bound past it.
                if (compare_height(s, y0) == std::strong_ordering::greater)
                    seed.d = rational_between(s, y0);
                else
                    seed.c = rational_between(s, y0);
                dirty = true;
            }
        }
        if (!dirty) break;
        if (pass == sb.size() + 1)
            throw DomainError("localized_curve: cannot fit a clean seed at this eps");
    }

    LocalizedBuild out;
    out.eps = eps;
    out.offset = pick_level_offset(eps / 2.0);
    out.build = build_curve(sb, kmax, out.offset, seed);
    out.jordan = assemble_jordan(out.build.curve, seed);
    return out;
}

}  // namespace expbrush
