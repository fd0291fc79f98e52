#pragma once

#include <stdexcept>
#include <string>

namespace subgrad {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NonPositiveBase : public Error {
public:
    using Error::Error;
};

class EmptySetList : public Error {
public:
    using Error::Error;
};

class ZeroSubgradient : public Error {
public:
    using Error::Error;
};

class InfeasibleStart : public Error {
public:
    using Error::Error;
};

class MissingOptimalValue : public Error {
public:
    using Error::Error;
};

class MissingSubgradientBound : public Error {
public:
    using Error::Error;
};

class BadMultipliers : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class BadIndices : public Error {
public:
    using Error::Error;
};

}  // namespace subgrad
