#include "expbrush/tower.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace expbrush {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// Mantissa decrement used when a subtraction is absorbed past double range.
constexpr double kMantissaSlack = 0x1p-40;

// Round a libm result down by one ulp so stored mantissas never exceed the
// exact value (assumes the libm result is within 1 ulp of correctly rounded).
// Zero stays zero: expm1/log1p are exact there.
inline double round_down(double x) {
    if (x <= 0.0 || !std::isfinite(x)) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double lb_expm1(double x) { return round_down(std::expm1(x)); }
inline double lb_log1p(double x) { return round_down(std::log1p(x)); }

}  // namespace

double growth(double t) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth: t must be >= 0");
    double r = std::expm1(t);
    if (!std::isfinite(r)) throw NeedsTower("growth overflow: route through TowerScalar");
    return r;
}

double growth_inv(double t) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth_inv: t must be >= 0");
    return std::log1p(t);
}

double growth_inv_iter(std::uint64_t n, double t) {
    if (t < 0.0 || std::isnan(t)) throw DomainError("growth_inv_iter: t must be >= 0");
    double v = t;
    for (std::uint64_t i = 0; i < n && v > 0.0; ++i) v = std::log1p(v);
    return v;
}

double inv_square_partial_sum(std::uint64_t kmax) {
    if (kmax < 1) throw DomainError("inv_square_partial_sum: kmax must be >= 1");
    double sum = 0.0;
    double v = 1.0;
    std::uint64_t n = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        const std::uint64_t target = k * k;
        for (; n < target; ++n) v = std::log1p(v);
        sum += v;
    }
    return sum;
}

void TowerScalar::canonicalize() {
    // Promote: fold mantissa >= 1 into the level.
    while (mantissa_ >= 1.0) {
        mantissa_ = lb_log1p(mantissa_);
        ++level_;
    }
    // Demote: a level with mantissa < ln 2 represents a value < 1 one level
    // down; unfold until the represented value and the level band agree.
    while (level_ > 0 && mantissa_ < kLn2) {
        mantissa_ = lb_expm1(mantissa_);
        --level_;
    }
}

TowerScalar TowerScalar::from_double(double v) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError("TowerScalar: value must be finite and >= 0");
    TowerScalar t(0, v);
    t.canonicalize();
    return t;
}

TowerScalar TowerScalar::make(std::uint64_t level, double mantissa) {
    if (!(mantissa >= 0.0) || !std::isfinite(mantissa))
        throw DomainError("TowerScalar: mantissa must be finite and >= 0");
    TowerScalar t(level, mantissa);
    t.canonicalize();
    return t;
}

double TowerScalar::to_double() const {
    double v = mantissa_;
    for (std::uint64_t i = 0; i < level_; ++i) {
        v = lb_expm1(v);
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    }
    return v;
}

std::strong_ordering TowerScalar::compare(const TowerScalar& other) const {
    if (level_ != other.level_)
        return level_ < other.level_ ? std::strong_ordering::less
                                     : std::strong_ordering::greater;
    if (mantissa_ < other.mantissa_) return std::strong_ordering::less;
    if (mantissa_ > other.mantissa_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string TowerScalar::str() const {
    std::ostringstream os;
    os.precision(17);
    if (level_ == 0) {
        os << mantissa_;
    } else {
        os << "F^" << level_ << "(" << mantissa_ << ")";
    }
    return os.str();
}

namespace {

// Verify that absorbing c into the fixed mantissa slack is sound:
//   growth^(L+1)(m) - growth^(L+1)(m - slack) >= c.
// The difference D_j = growth^j(m) - growth^j(m - slack) satisfies
//   D_{j+1} = e^{B_j} * (e^{D_j} - 1)  with  B_j = growth^j(m - slack),
// which is nondecreasing in j, so it is evaluated (rounded down) until it
// clears c or the level budget runs out.
bool slack_covers(std::uint64_t level, double m, double c) {
    double b = m - kMantissaSlack;
    double d = kMantissaSlack;
    for (std::uint64_t j = 0; j <= level; ++j) {
        if (d >= c) return true;
        if (b > 700.0) {
            // e^b alone exceeds e^700; d >= e^700 * 2^-40 dwarfs any
            // admissible c.
            return c <= 1e250;
        }
        double eb = round_down(std::exp(b));
        d = round_down(eb * round_down(std::expm1(d)));
        if (std::isinf(d)) return true;
        b = lb_expm1(b);
    }
    return d >= c;
}

}  // namespace

TowerScalar growth_minus(const TowerScalar& u, double c) {
    if (c < 0.0 || std::isnan(c)) throw DomainError("growth_minus: c must be >= 0");
    if (c == 0.0) {
        // Exact level increment; no subtraction to account for.
        if (u.level() == 0) {
            return TowerScalar::from_double(lb_expm1(u.mantissa()));
        }
        return TowerScalar::make(u.level() + 1, u.mantissa());
    }
    const double v = u.to_double();
    if (std::isfinite(v)) {
        const double g = std::expm1(v);
        if (std::isfinite(g)) {
            // The subtraction rounds to nearest; nudge once more so the
            // result stays a lower bound.
            const double r = round_down(round_down(g) - c);
            if (r < 0.0) throw OrbitLeftDomain(0);
            return TowerScalar::from_double(r);
        }
    }
    // growth(u) is past double range (so >= DBL_MAX >> c); drop c against the
    // mantissa slack once the drop is verified to cover it.
    if (!slack_covers(u.level(), u.mantissa(), c))
        throw DomainError("growth_minus: cannot certify subtraction of " +
                          std::to_string(c) + " at level " +
                          std::to_string(u.level()));
    return TowerScalar::make(u.level() + 1, u.mantissa() - kMantissaSlack);
}

TowerScalar growth_step(const TowerScalar& u) { return growth_minus(u, 0.0); }

TowerScalar growth_iter(std::uint64_t n, const TowerScalar& u) {
    TowerScalar v = u;
    std::uint64_t i = 0;
    // Small-regime steps cost one expm1 each; once the value clears 1 the
    // remaining iterations are exact level increments.
    for (; i < n && v.level() == 0; ++i) v = growth_step(v);
    if (i < n) v = TowerScalar::make(v.level() + (n - i), v.mantissa());
    return v;
}

}  // namespace expbrush
