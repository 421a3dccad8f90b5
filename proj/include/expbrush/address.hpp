#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "expbrush/rational.hpp"

namespace expbrush {

// An integer sequence s0 s1 s2 ... with finite data: an explicit prefix
// followed by either all zeros or a repeating period block.
class ExternalAddress {
public:
    ExternalAddress() : prefix_{0} {}
    ExternalAddress(std::vector<long long> prefix, std::vector<long long> period = {});

    // "3,1,4" = prefix with zero tail; "1|2,3" = prefix "1", period "2,3".
    static ExternalAddress parse(const std::string& text);
    std::string str() const;

    long long entry(std::size_t i) const;
    const std::vector<long long>& prefix() const { return prefix_; }
    const std::vector<long long>& period() const { return period_; }
    bool zero_tail() const { return period_.empty(); }

    // Number of indices after which two addresses with these parameters are
    // provably equal when all compared entries agree.
    std::size_t decision_bound(const ExternalAddress& other) const;

    std::strong_ordering lex_cmp(const ExternalAddress& other) const;
    ExternalAddress shifted() const;  // drops s0, rotating the period

    // Truncation to the first `depth` entries, zero tail.
    std::vector<long long> truncated(std::size_t depth) const;

private:
    std::vector<long long> prefix_;  // nonempty
    std::vector<long long> period_;  // empty means zero tail
};

bool operator==(const ExternalAddress& a, const ExternalAddress& b);

struct RationalInterval {
    Rat lo;
    Rat hi;  // lo < hi
};

// The order embedding of address space into the real line.  Sequences map
// through h(s0 s1 ...) = s0 + q(h(s1 s2 ...)) with q(t) = 1/2 + t/(2(1+|t|)),
// which is strictly increasing, rational-preserving, and onto (0,1); a
// cylinder (all sequences with a fixed finite prefix) maps onto an open
// interval with rational endpoints, nested and ordered like the cylinders.
Rat embed_q(const Rat& t);

// Interval image of the cylinder with the given prefix (prefix nonempty).
RationalInterval cylinder_interval(const std::vector<long long>& prefix);

// Interval image of the depth-`depth` cylinder around s (depth >= 1).
// Increasing depth gives nested, shrinking intervals around the point image.
RationalInterval embed_point(const ExternalAddress& s, std::size_t depth);

// Exact comparison of the embedded height h(s) against a rational.  Decided
// by following the integer bands of the inverse embedding; equal is detected
// via recurrence of the (tail phase, remainder) state.
std::strong_ordering compare_height(const ExternalAddress& s, const Rat& r);

// Double approximation of h(s) (midpoint of a deep cylinder); rendering only.
double approx_height(const ExternalAddress& s);

// A rational strictly between h(s) and `bound` (which must not equal h(s)),
// found by refining the point cylinder.  Used to split box gaps exactly.
Rat rational_between(const ExternalAddress& s, const Rat& bound);

}  // namespace expbrush
