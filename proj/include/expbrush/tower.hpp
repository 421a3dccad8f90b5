#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "expbrush/errors.hpp"

namespace expbrush {

// The one-step growth map of the model dynamics and its inverse.
// growth(t) = e^t - 1 on [0, inf); growth_inv(t) = ln(t + 1).
double growth(double t);      // throws NeedsTower when e^t overflows a double
double growth_inv(double t);  // throws DomainError for t < 0

// n-fold composition of growth_inv, evaluated in plain doubles.  Strictly
// decreasing in n for t > 0; growth_inv_iter(n, 1) ~ 2/n for large n.
double growth_inv_iter(std::uint64_t n, double t);

// Sum of growth_inv_iter(k*k, 1) for k = 1..kmax.  Converges below pi^2/2.
double inv_square_partial_sum(std::uint64_t kmax);

// A nonnegative scalar stored as growth^level(mantissa), which survives
// iterated exponentiation far past double range.  Canonical form:
//   level == 0  =>  mantissa in [0, 1)  (value < 1), or value stored as-is
//                   when it fits below 1 after normalization,
//   level  > 0  =>  mantissa in [ln 2, 1)  (so value >= 1 and the level
//                   bands partition [1, inf): lexicographic comparison of
//                   (level, mantissa) agrees with the real ordering).
//
// Every mantissa produced by this module is a certified LOWER bound of the
// exact real it tracks: all transcendental evaluations are nudged one ulp
// down (glibc's expm1/log1p are within 1 ulp of correctly rounded).  Since
// the growth map is increasing, a lower-bound mantissa with exact level
// bookkeeping is a lower bound on the value, which is the direction escape
// certificates need.
class TowerScalar {
public:
    TowerScalar() : level_(0), mantissa_(0.0) {}

    static TowerScalar from_double(double v);           // v >= 0, finite
    static TowerScalar make(std::uint64_t level, double mantissa);

    std::uint64_t level() const { return level_; }
    double mantissa() const { return mantissa_; }

    // Value as a double; +inf when out of double range.
    double to_double() const;

    bool is_zero() const { return level_ == 0 && mantissa_ == 0.0; }

    std::strong_ordering compare(const TowerScalar& other) const;

    std::string str() const;  // "F^L(m)" rendering for reports

private:
    TowerScalar(std::uint64_t level, double mantissa)
        : level_(level), mantissa_(mantissa) {}
    void canonicalize();

    std::uint64_t level_;
    double mantissa_;
};

inline bool operator==(const TowerScalar& a, const TowerScalar& b) {
    return a.compare(b) == std::strong_ordering::equal;
}
inline bool operator<(const TowerScalar& a, const TowerScalar& b) {
    return a.compare(b) == std::strong_ordering::less;
}
inline bool operator<=(const TowerScalar& a, const TowerScalar& b) {
    return a.compare(b) != std::strong_ordering::greater;
}
inline bool operator>=(const TowerScalar& a, const TowerScalar& b) {
    return a.compare(b) != std::strong_ordering::less;
}

// One growth step in tower form: a certified lower bound on growth(u) - c.
// c must be >= 0.  While growth(u) fits in a double the result is the plain
// double value rounded down; past double range the subtraction is discarded
// only after verifying growth(u) - growth(u - slack) >= c for the fixed
// mantissa slack 2^-40 (the discarded c is then provably covered by the
// slack).  Throws OrbitLeftDomain(0) when the exact result would be negative.
TowerScalar growth_minus(const TowerScalar& u, double c);

// growth applied once / n times in tower form (growth_minus with c = 0, so
// equal inputs take bit-identical paths wherever they appear).
TowerScalar growth_step(const TowerScalar& u);
TowerScalar growth_iter(std::uint64_t n, const TowerScalar& u);

}  // namespace expbrush
