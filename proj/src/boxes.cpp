#include "expbrush/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace expbrush {

namespace {

bool height_in_closed(const ExternalAddress& s, const Rat& lo, const Rat& hi) {
    return compare_height(s, lo) != std::strong_ordering::less &&
           compare_height(s, hi) != std::strong_ordering::greater;
}

std::string box_str(const Box& b) {
    std::ostringstream os;
    os.precision(17);
    os << "level " << b.level << " [" << b.a << ", " << b.b << "] x ["
       << rat_to_string(b.c) << ", " << rat_to_string(b.d) << "]";
    return os.str();
}

}  // namespace

double level_width(int k, int l) {
    if (k < 1 || l < 0) throw DomainError("level_width: k >= 1 and l >= 0");
    const auto n = static_cast<std::uint64_t>(l + k);
    return growth_inv_iter(n * n, 1.0);
}

BoxFamily seed_family(const Rect& rect, const SubBrush& sb) {
    if (!(rect.a < rect.b) || !(rect.c < rect.d))
        throw DomainError("seed rectangle is degenerate");
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const auto& s = sb.addresses[i];
        const bool reaches_left = sb.tips[i] <= rect.a;
        const bool reaches_right = sb.tips[i] <= rect.b;
        if (reaches_right && (compare_height(s, rect.c) == std::strong_ordering::equal ||
                              compare_height(s, rect.d) == std::strong_ordering::equal))
            throw DomainError("seed top/bottom edge meets hair of address " + s.str());
        if (reaches_left && height_in_closed(s, rect.c, rect.d))
            throw DomainError("seed left edge meets hair of address " + s.str());
    }
    BoxFamily fam;
    fam.level = 0;
    fam.width = rect.b - rect.a;
    fam.left_edge = rect.a;
    fam.right_edge = rect.b;
    Box seed;
    seed.a = rect.a;
    seed.b = rect.b;
    seed.c = rect.c;
    seed.d = rect.d;
    seed.level = 0;
    fam.boxes.push_back(std::move(seed));
    return fam;
}

BoxFamily next_family(const BoxFamily& prev, const SubBrush& sb, int k, int l) {
    if (k != prev.level + 1)
        throw PreconditionError("next_family: level must extend the previous family");
    const double w = level_width(k, l);
    const double bprime = prev.right_edge;

    BoxFamily fam;
    fam.level = k;
    fam.width = w;
    fam.left_edge = bprime;
    fam.right_edge = bprime + w;

    // K: sub-brush points on the right edges of the previous family.
    struct Crossing {
        std::size_t addr;
        int parent;
    };
    std::vector<Crossing> crossings;
    for (std::size_t i = 0; i < sb.size(); ++i) {
        if (!(sb.tips[i] <= bprime)) continue;
        for (std::size_t p = 0; p < prev.boxes.size(); ++p) {
            if (height_in_closed(sb.addresses[i], prev.boxes[p].c, prev.boxes[p].d)) {
                crossings.push_back({i, static_cast<int>(p)});
                break;  // previous boxes are disjoint: at most one parent
            }
        }
    }
    if (crossings.empty()) return fam;

    // Vertical cut set: previous box endpoints plus the depth-2(l+k)^2
    // cylinder endpoints of every crossing address.
    const auto n = static_cast<std::size_t>(l + k);
    const std::size_t cylinder_depth = 2 * n * n;
    std::vector<Rat> cuts;
    for (const auto& b : prev.boxes) {
        cuts.push_back(b.c);
        cuts.push_back(b.d);
    }
    for (const auto& cr : crossings) {
        const auto iv = embed_point(sb.addresses[cr.addr], cylinder_depth);
        cuts.push_back(iv.lo);
        cuts.push_back(iv.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const Rat wr = rat_from_double(w);
    for (std::size_t gi = 0; gi + 1 < cuts.size(); ++gi) {
        const Rat& ga = cuts[gi];
        const Rat& gb = cuts[gi + 1];
        // Occupants: crossings with height inside this gap.
        std::vector<std::size_t> occupants;
        int parent = -1;
        for (const auto& cr : crossings) {
            const auto& s = sb.addresses[cr.addr];
            if (compare_height(s, ga) == std::strong_ordering::greater &&
                compare_height(s, gb) == std::strong_ordering::less) {
                occupants.push_back(cr.addr);
                parent = cr.parent;
            }
        }
        if (occupants.empty()) continue;
        // Split to the level width, then box only the occupied pieces.
        Rat pieces = 1;
        while ((gb - ga) / pieces > wr) pieces *= 2;
        const Rat step = (gb - ga) / pieces;
        for (Rat j = 0; j < pieces; ++j) {
            const Rat pa = ga + j * step;
            const Rat pb = ga + (j + 1) * step;
            int witness = -1;
            for (std::size_t occ : occupants) {
                const auto& s = sb.addresses[occ];
                if (compare_height(s, pa) == std::strong_ordering::greater &&
                    compare_height(s, pb) == std::strong_ordering::less) {
                    witness = static_cast<int>(occ);
                    break;
                }
            }
            if (witness < 0) continue;
            Box box;
            box.a = bprime;
            box.b = fam.right_edge;
            box.c = pa;
            box.d = pb;
            box.level = k;
            box.parent = parent;
            box.witness = witness;
            fam.boxes.push_back(std::move(box));
        }
    }

    std::sort(fam.boxes.begin(), fam.boxes.end(),
              [](const Box& x, const Box& y) { return x.c < y.c; });

    // Disjointness: where two boxes share a horizontal edge, pull the lower
    // box's top strictly below it, past every hair the box contains.
    for (std::size_t i = 0; i + 1 < fam.boxes.size(); ++i) {
        Box& lo = fam.boxes[i];
        const Box& hi = fam.boxes[i + 1];
        if (lo.d < hi.c) continue;
        // Highest occupant of the lower box = lexicographically largest
        // crossing address inside it (the embedding preserves order).
        int top_addr = -1;
        for (const auto& cr : crossings) {
            const auto& s = sb.addresses[cr.addr];
            if (compare_height(s, lo.c) == std::strong_ordering::greater &&
                compare_height(s, lo.d) == std::strong_ordering::less) {
                if (top_addr < 0 ||
                    sb.addresses[cr.addr].lex_cmp(sb.addresses[top_addr]) ==
                        std::strong_ordering::greater)
                    top_addr = static_cast<int>(cr.addr);
            }
        }
        if (top_addr < 0)
            throw Error("next_family: touching box without occupant");
        lo.d = rational_between(sb.addresses[top_addr], lo.d);
    }
    return fam;
}

FamilyChain build_chain(const SubBrush& sb, int kmax, int l, const Rect& seed) {
    if (kmax < 0) throw DomainError("build_chain: kmax must be >= 0");
    if (l < 0) throw DomainError("build_chain: level offset must be >= 0");
    FamilyChain chain;
    chain.seed = seed;
    chain.offset = l;
    chain.families.push_back(seed_family(seed, sb));
    for (int k = 1; k <= kmax; ++k) {
        auto fam = next_family(chain.families.back(), sb, k, l);
        const bool empty = fam.boxes.empty();
        chain.families.push_back(std::move(fam));
        if (empty) {
            chain.terminated_early = true;
            break;
        }
    }
    return chain;
}

ValidationReport validate_families(const FamilyChain& chain, const SubBrush& sb) {
    ValidationReport rep;
    rep.conditions.resize(8);
    for (int i = 0; i < 8; ++i) rep.conditions[i].id = i + 1;
    auto fail = [&](int id, const std::string& witness) {
        auto& c = rep.conditions[id - 1];
        if (c.pass) {
            c.pass = false;
            c.witness = witness;
        }
        rep.pass = false;
    };

    for (std::size_t ki = 1; ki < chain.families.size(); ++ki) {
        const auto& fam = chain.families[ki];
        const auto& prev = chain.families[ki - 1];
        const int k = static_cast<int>(ki);
        const double w = level_width(k, chain.offset);
        const std::size_t n = static_cast<std::size_t>(chain.offset + k);
        const std::size_t cylinder_depth = 2 * n * n;

        for (const auto& box : fam.boxes) {
            // (1) orientation and side types (c, d are exact by construction).
            if (!(box.a < box.b) || !(box.c < box.d) || !std::isfinite(box.a) ||
                !std::isfinite(box.b))
                fail(1, box_str(box) + ": degenerate");
            // (2) horizontal width: bit-identical to the shared level width.
            if (box.a != prev.right_edge || box.b != prev.right_edge + w ||
                fam.width != w)
                fail(2, box_str(box) + ": width != growth_inv_iter(" +
                            std::to_string(n * n) + ", 1)");
            // (3) vertical extent bounded by the level width, exactly.
            if (box.d - box.c > rat_from_double(w))
                fail(3, box_str(box) + ": taller than the level width");
            // (4) the left edge lies in a previous box's right edge.
            bool on_parent = false;
            for (const auto& pb : prev.boxes) {
                if (box.a == pb.b && box.c >= pb.c && box.d <= pb.d) {
                    on_parent = true;
                    break;
                }
            }
            if (!on_parent) fail(4, box_str(box) + ": left edge not on a parent right edge");
            // (5) the left edge meets the sub-brush.
            bool meets = false;
            for (std::size_t i = 0; i < sb.size(); ++i) {
                if (sb.tips[i] <= box.a &&
                    height_in_closed(sb.addresses[i], box.c, box.d)) {
                    meets = true;
                    break;
                }
            }
            if (!meets) fail(5, box_str(box) + ": left edge misses the sub-brush");
            // (7) all sub-brush heights inside [c,d] share the depth-2(l+k)^2
            // prefix.
            std::vector<std::size_t> inside;
            for (std::size_t i = 0; i < sb.size(); ++i)
                if (height_in_closed(sb.addresses[i], box.c, box.d)) inside.push_back(i);
            for (std::size_t i = 1; i < inside.size(); ++i) {
                if (sb.addresses[inside[0]].truncated(cylinder_depth) !=
                    sb.addresses[inside[i]].truncated(cylinder_depth)) {
                    fail(7, box_str(box) + ": addresses " +
                                sb.addresses[inside[0]].str() + " and " +
                                sb.addresses[inside[i]].str() +
                                " differ before depth " + std::to_string(cylinder_depth));
                    break;
                }
            }
        }

        // (6) pairwise disjoint (closed boxes).
        for (std::size_t i = 0; i < fam.boxes.size(); ++i) {
            for (std::size_t j = i + 1; j < fam.boxes.size(); ++j) {
                const auto& x = fam.boxes[i];
                const auto& y = fam.boxes[j];
                const bool horiz = x.a <= y.b && y.a <= x.b;
                const bool vert = x.c <= y.d && y.c <= x.d;
                if (horiz && vert)
                    fail(6, box_str(x) + " intersects " + box_str(y));
            }
        }

        // (8) every sub-brush point on a previous right edge is boxed.
        for (const auto& pb : prev.boxes) {
            for (std::size_t i = 0; i < sb.size(); ++i) {
                if (!(sb.tips[i] <= pb.b)) continue;
                if (!height_in_closed(sb.addresses[i], pb.c, pb.d)) continue;
                bool covered = false;
                for (const auto& box : fam.boxes) {
                    if (box.a == pb.b &&
                        height_in_closed(sb.addresses[i], box.c, box.d)) {
                        covered = true;
                        break;
                    }
                }
                if (!covered)
                    fail(8, "address " + sb.addresses[i].str() + " on right edge of " +
                                box_str(pb) + " is not covered at level " +
                                std::to_string(k));
            }
        }
    }
    rep.note =
        "conditions quantified over the declared sub-brush (finite stand-in "
        "for the full brush); coverage (8) relative to other address choices "
        "is not decided here";
    return rep;
}

}  // namespace expbrush
