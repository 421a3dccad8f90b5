#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expbrush {

// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A plain-double evaluation overflowed; the caller must switch to tower form.
class NeedsTower : public Error {
public:
    explicit NeedsTower(const std::string& msg) : Error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A model orbit produced a negative potential: the point is not in the brush.
// step_index is the iterate at which the potential first went negative.
class OrbitLeftDomain : public Error {
public:
    explicit OrbitLeftDomain(std::size_t step_index)
        : Error("orbit left [0,inf) at step " + std::to_string(step_index)),
          step_index(step_index) {}
    std::size_t step_index;
};

// A stated precondition does not hold (reported distinctly from domain errors
// so property tests can tell "wrong answer" from "wrong question").
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// The closed-curve assembly found two properly crossing segments.
class CurveNotSimple : public Error {
public:
    CurveNotSimple(std::size_t i, std::size_t j)
        : Error("polyline self-intersection between segments " +
                std::to_string(i) + " and " + std::to_string(j)),
          seg_a(i), seg_b(j) {}
    std::size_t seg_a;
    std::size_t seg_b;
};

}  // namespace expbrush
