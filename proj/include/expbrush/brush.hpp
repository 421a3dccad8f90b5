#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "expbrush/address.hpp"
#include "expbrush/tower.hpp"

namespace expbrush {

// 2*pi rounded to nearest double; used consistently for the strip width.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// A point of the model space: potential t >= 0 and an external address.
struct ModelPoint {
    TowerScalar t;
    ExternalAddress s;

    static ModelPoint make(double t, ExternalAddress s) {
        return ModelPoint{TowerScalar::from_double(t), std::move(s)};
    }
};

// One application of the model dynamics: (t, s) -> (growth(t) - 2pi|s0|,
// shift(s)).  Throws OrbitLeftDomain when the new potential is negative.
ModelPoint step(const ModelPoint& x);

// Certified lower bounds on the potentials of the first n iterates.
// potentials[i] bounds the potential of iterate i (potentials[0] = t).  When
// the orbit leaves [0, inf), failed_index is the first bad iterate and the
// list stops before it.
struct OrbitTrace {
    std::vector<TowerScalar> potentials;
    std::optional<std::size_t> failed_index;
    bool ok() const { return !failed_index.has_value(); }
};
OrbitTrace orbit_lower_bounds(const ModelPoint& x, std::size_t n);

// Minimal potential whose orbit under the address s keeps nonnegative
// potentials for `depth` steps, by the backward recursion
//   r_depth = 0,  r_i = max(0, growth_inv(r_{i+1} + 2pi|s_i|)).
// Nondecreasing in depth and a lower bound for the true hair tip.
double tip(const ExternalAddress& s, std::size_t depth);

// Membership in the depth-limited brush, via the orbit route.
bool in_julia(const ModelPoint& x, std::size_t depth);
// Same question via the tip route; the two agree up to rounding slack.
bool in_julia_via_tip(const ModelPoint& x, std::size_t depth);

// A finite, user-declared stand-in for the brush: addresses with their
// depth-limited tips.
struct SubBrush {
    std::vector<ExternalAddress> addresses;
    std::size_t depth = 1;
    std::vector<double> tips;  // parallel to addresses

    std::size_t size() const { return addresses.size(); }
};
SubBrush make_sub_brush(std::vector<ExternalAddress> addresses, std::size_t depth);

// Double-square escape certificate: for each k in [5, kmax] check that the
// certified lower bound on the potential of iterate 2k^2 is at least
// growth^{k^2}(1).  A passing certificate pins the potential above
// growth^k(1) on every window [2(k-1)^2, 2k^2].
struct EscapeCheck {
    std::uint64_t k;
    TowerScalar bound;     // lower bound on potential at iterate 2k^2
    TowerScalar required;  // growth^{k^2}(1)
    bool pass;
};
struct EscapeCertificate {
    ModelPoint point;
    std::uint64_t kmax;
    std::vector<EscapeCheck> checks;
    bool passed;  // all checks pass
};
// Precondition: x stays in the depth-2*kmax^2 brush (else PreconditionError)
// and kmax >= 5.
EscapeCertificate certify_escape(const ModelPoint& x, std::uint64_t kmax);

// Property-test hook for the forward stretching inequality: with equal
// addresses and T(y) > T(x), the certified bound on the potential of the
// n-th iterate of y must reach growth^n(T(y) - T(x)).
bool check_forward_stretch(const ModelPoint& x, const ModelPoint& y, std::size_t n);

// growth^{k}(1) in tower form (shared by certificates and tests).
TowerScalar growth_pow_of_one(std::uint64_t k);

}  // namespace expbrush
