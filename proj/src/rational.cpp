#include "expbrush/rational.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace expbrush {

Rat rat_from_double(double v) {
    if (!std::isfinite(v)) throw DomainError("rat_from_double: value not finite");
    if (v == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa an exact integer.
    auto num = static_cast<std::int64_t>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(num);
    if (exp > 0) {
        r *= Rat(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Rat rat_parse(const std::string& text) {
    if (text.empty()) throw DomainError("rat_parse: empty string");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw DomainError("rat_parse: zero denominator");
            return Rat(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(BigInt(text));
        // Decimal literal: digits after the dot become a power-of-ten
        // denominator.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const auto places = text.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw DomainError("rat_parse: malformed number '" + text + "'");
        BigInt num(digits);
        BigInt den = 1;
        for (std::size_t i = 0; i < places; ++i) den *= 10;
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw DomainError("rat_parse: cannot parse '" + text + "': " + e.what());
    }
}

}  // namespace expbrush
