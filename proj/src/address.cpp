#include "expbrush/address.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace expbrush {

namespace {

constexpr std::size_t kCompareDepthCap = 1 << 14;

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // strip spaces
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) throw DomainError("address: empty entry in '" + text + "'");
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw DomainError("address: bad integer '" + item + "'");
        }
    }
    return out;
}

}  // namespace

ExternalAddress::ExternalAddress(std::vector<long long> prefix,
                                 std::vector<long long> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (prefix_.empty()) throw DomainError("address: prefix must be nonempty");
}

ExternalAddress ExternalAddress::parse(const std::string& text) {
    const auto bar = text.find('|');
    if (bar == std::string::npos) {
        auto p = parse_int_list(text);
        if (p.empty()) throw DomainError("address: empty prefix in '" + text + "'");
        return ExternalAddress(std::move(p));
    }
    auto p = parse_int_list(text.substr(0, bar));
    auto per = parse_int_list(text.substr(bar + 1));
    if (p.empty()) throw DomainError("address: empty prefix in '" + text + "'");
    if (per.empty()) throw DomainError("address: empty period in '" + text + "'");
    return ExternalAddress(std::move(p), std::move(per));
}

std::string ExternalAddress::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) os << ",";
        os << prefix_[i];
    }
    if (!period_.empty()) {
        os << "|";
        for (std::size_t i = 0; i < period_.size(); ++i) {
            if (i) os << ",";
            os << period_[i];
        }
    }
    return os.str();
}

long long ExternalAddress::entry(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    if (period_.empty()) return 0;
    return period_[(i - prefix_.size()) % period_.size()];
}

std::size_t ExternalAddress::decision_bound(const ExternalAddress& other) const {
    const std::size_t p1 = period_.empty() ? 1 : period_.size();
    const std::size_t p2 = other.period_.empty() ? 1 : other.period_.size();
    return std::max(prefix_.size(), other.prefix_.size()) + std::lcm(p1, p2);
}

std::strong_ordering ExternalAddress::lex_cmp(const ExternalAddress& other) const {
    const std::size_t bound = decision_bound(other);
    for (std::size_t i = 0; i < bound; ++i) {
        const long long a = entry(i);
        const long long b = other.entry(i);
        if (a != b) return a < b ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

bool operator==(const ExternalAddress& a, const ExternalAddress& b) {
    return a.lex_cmp(b) == std::strong_ordering::equal;
}

ExternalAddress ExternalAddress::shifted() const {
    if (prefix_.size() > 1) {
        return ExternalAddress(
            std::vector<long long>(prefix_.begin() + 1, prefix_.end()), period_);
    }
    if (period_.empty()) return ExternalAddress({0});
    std::vector<long long> rotated(period_.begin() + 1, period_.end());
    rotated.push_back(period_.front());
    return ExternalAddress({period_.front()}, std::move(rotated));
}

std::vector<long long> ExternalAddress::truncated(std::size_t depth) const {
    std::vector<long long> out;
    out.reserve(depth);
    for (std::size_t i = 0; i < depth; ++i) out.push_back(entry(i));
    return out;
}

Rat embed_q(const Rat& t) {
    if (t >= 0) return Rat(1, 2) + t / (2 * (1 + t));
    return Rat(1, 2) + t / (2 * (1 - t));
}

RationalInterval cylinder_interval(const std::vector<long long>& prefix) {
    if (prefix.empty()) throw DomainError("cylinder_interval: empty prefix");
    // Back-to-front: the tail beyond the prefix spans all of address space,
    // whose q-image is the full (0,1); each outer entry shifts and re-maps.
    Rat lo = 0, hi = 1;
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        lo += *it;
        hi += *it;
        if (std::next(it) != prefix.rend()) {
            lo = embed_q(lo);
            hi = embed_q(hi);
        }
    }
    return RationalInterval{lo, hi};
}

RationalInterval embed_point(const ExternalAddress& s, std::size_t depth) {
    if (depth < 1) throw DomainError("embed_point: depth must be >= 1");
    return cylinder_interval(s.truncated(depth));
}

std::strong_ordering compare_height(const ExternalAddress& s, const Rat& r) {
    Rat rem = r;
    // Recurrence of (tail phase, remainder) once inside the tail means the
    // remainder is exactly the periodic fixed point, i.e. equality.
    std::map<std::pair<std::size_t, Rat>, bool> seen;
    const std::size_t d = s.prefix().size();
    const std::size_t plen = s.period().empty() ? 1 : s.period().size();
    for (std::size_t i = 0; i < kCompareDepthCap; ++i) {
        const long long e = s.entry(i);
        if (rem <= e) return std::strong_ordering::greater;  // h(s) > e >= r
        if (rem >= e + 1) return std::strong_ordering::less;
        if (i >= d) {
            auto key = std::make_pair((i - d) % plen, rem);
            if (!seen.emplace(std::move(key), true).second)
                return std::strong_ordering::equal;
        }
        // Invert one embedding step: rem in (e, e+1) -> q^{-1}(rem - e).
        const Rat u = rem - e;
        const Rat v = 2 * u - 1;
        rem = (v >= 0) ? Rat(v / (1 - v)) : Rat(v / (1 + v));
    }
    throw Error("compare_height: undecided at depth cap (pathological input)");
}

double approx_height(const ExternalAddress& s) {
    const auto iv = embed_point(s, 64);
    return rat_to_double((iv.lo + iv.hi) / 2);
}

Rat rational_between(const ExternalAddress& s, const Rat& bound) {
    const auto side = compare_height(s, bound);
    if (side == std::strong_ordering::equal)
        throw DomainError("rational_between: bound equals the height");
    for (std::size_t depth = 4; depth <= kCompareDepthCap; depth *= 2) {
        const auto iv = embed_point(s, depth);
        if (side == std::strong_ordering::less && iv.hi < bound) return iv.hi;
        if (side == std::strong_ordering::greater && iv.lo > bound) return iv.lo;
    }
    throw Error("rational_between: no separating rational at depth cap");
}

}  // namespace expbrush
