#pragma once

#include <stdexcept>
#include <string>

namespace finadd {

// Precondition violations: out-of-range indices, mismatched atom spaces,
// probabilities outside [0,1] where the operation demands it.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A query fell outside the determinable class of a limit law: the limit of
// the underlying sequence is not known to exist.
class UndeterminedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact computation would exceed a configured size cap.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A characteristic function vanished on the integration/branch path.
class SingularityError : public std::runtime_error {
public:
    SingularityError(const std::string& what, double argument)
        : std::runtime_error(what), argument_(argument) {}
    double argument() const noexcept { return argument_; }

private:
    double argument_;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace finadd
