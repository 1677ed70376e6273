#pragma once

#include <stdexcept>
#include <string>

namespace arrdual {

// Shared error hierarchy. Every failure mode raised by the library derives
// from Error so callers can catch the whole family at the CLI boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class RankError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// A matrix that fails the structural pair requirements (wrong shape, rank
// deficient).
class NotAPairError : public Error {
public:
    using Error::Error;
};

// A pair whose column functionals are proportional somewhere; carries the
// offending column indices (0-based) and the side on which they clash.
class InadmissibleError : public Error {
public:
    InadmissibleError(const std::string& what, int a, int b, bool on_dual)
        : Error(what), column_a(a), column_b(b), dual_side(on_dual) {}
    int column_a;
    int column_b;
    bool dual_side;
};

class VertexAtInfinityError : public Error {
public:
    using Error::Error;
};

class DegenerateParallelismError : public Error {
public:
    using Error::Error;
};

class ChartError : public Error {
public:
    using Error::Error;
};

class ConstructionFailureError : public Error {
public:
    using Error::Error;
};

class BijectionError : public Error {
public:
    using Error::Error;
};

class SingularEvaluationError : public Error {
public:
    using Error::Error;
};

class WeightDomainError : public Error {
public:
    using Error::Error;
};

class DualityViolationError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Quadrature did not reach the requested accuracy; carries what it achieved.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved_estimate)
        : Error(what), achieved(achieved_estimate) {}
    double achieved;
};

}  // namespace arrdual
