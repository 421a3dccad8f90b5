#include "expbrush/brush.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace expbrush {

ModelPoint step(const ModelPoint& x) {
    const double c = kTwoPi * std::abs(static_cast<double>(x.s.entry(0)));
    return ModelPoint{growth_minus(x.t, c), x.s.shifted()};
}

OrbitTrace orbit_lower_bounds(const ModelPoint& x, std::size_t n) {
    OrbitTrace trace;
    trace.potentials.reserve(n + 1);
    trace.potentials.push_back(x.t);
    ModelPoint cur = x;
    for (std::size_t i = 1; i <= n; ++i) {
        try {
            cur = step(cur);
        } catch (const OrbitLeftDomain&) {
            trace.failed_index = i;
            return trace;
        }
        trace.potentials.push_back(cur.t);
    }
    return trace;
}

double tip(const ExternalAddress& s, std::size_t depth) {
    if (depth < 1) throw DomainError("tip: depth must be >= 1");
    double r = 0.0;
    for (std::size_t i = depth; i-- > 0;) {
        const double c = kTwoPi * std::abs(static_cast<double>(s.entry(i)));
        r = std::max(0.0, growth_inv(r + c));
    }
    return r;
}

bool in_julia(const ModelPoint& x, std::size_t depth) {
    return orbit_lower_bounds(x, depth).ok();
}

bool in_julia_via_tip(const ModelPoint& x, std::size_t depth) {
    if (depth < 1) return true;
    return x.t.to_double() >= tip(x.s, depth);
}

SubBrush make_sub_brush(std::vector<ExternalAddress> addresses, std::size_t depth) {
    if (depth < 1) throw DomainError("sub-brush depth must be >= 1");
    // Dedup lexicographically equal addresses.
    std::sort(addresses.begin(), addresses.end(),
              [](const ExternalAddress& a, const ExternalAddress& b) {
                  return a.lex_cmp(b) == std::strong_ordering::less;
              });
    addresses.erase(std::unique(addresses.begin(), addresses.end()),
                    addresses.end());
    SubBrush sb;
    sb.depth = depth;
    sb.addresses = std::move(addresses);
    sb.tips.reserve(sb.addresses.size());
    for (const auto& a : sb.addresses) sb.tips.push_back(tip(a, depth));
    return sb;
}

TowerScalar growth_pow_of_one(std::uint64_t k) {
    return growth_iter(k, TowerScalar::from_double(1.0));
}

EscapeCertificate certify_escape(const ModelPoint& x, std::uint64_t kmax) {
    if (kmax < 5) throw PreconditionError("certify_escape: kmax must be >= 5");
    const std::size_t need = static_cast<std::size_t>(2 * kmax * kmax);
    const auto trace = orbit_lower_bounds(x, need);
    if (!trace.ok())
        throw PreconditionError("certify_escape: not in the brush to depth " +
                                std::to_string(need) + " (left domain at step " +
                                std::to_string(*trace.failed_index) + ")");
    EscapeCertificate cert{x, kmax, {}, true};
    for (std::uint64_t k = 5; k <= kmax; ++k) {
        const auto& bound = trace.potentials[static_cast<std::size_t>(2 * k * k)];
        TowerScalar required = growth_pow_of_one(k * k);
        const bool pass = bound >= required;
        cert.passed = cert.passed && pass;
        cert.checks.push_back(EscapeCheck{k, bound, std::move(required), pass});
    }
    return cert;
}

bool check_forward_stretch(const ModelPoint& x, const ModelPoint& y, std::size_t n) {
    if (!(x.s == y.s))
        throw PreconditionError("check_forward_stretch: addresses differ");
    if (!(x.t < y.t))
        throw PreconditionError("check_forward_stretch: requires T(y) > T(x)");
    const auto ty = orbit_lower_bounds(y, n);
    if (!ty.ok() || !in_julia(x, n))
        throw PreconditionError("check_forward_stretch: points must stay in the brush");
    const double eps = y.t.to_double() - x.t.to_double();
    const TowerScalar required = growth_iter(n, TowerScalar::from_double(eps));
    return ty.potentials[n] >= required;
}

}  // namespace expbrush
