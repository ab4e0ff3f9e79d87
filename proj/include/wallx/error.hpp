#pragma once

#include <stdexcept>
#include <string>

namespace wallx {

/// Base class for every error raised by the library. The CLI maps the
/// subclasses onto exit codes (see tools/wallx.cpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// An Euler class asked to divide by the zero weight.
class PoleAtZeroWeight : public Error {
public:
    using Error::Error;
};

/// The specialisation m -> lam3 annihilated a denominator.
class PoleAtSubstitution : public Error {
public:
    using Error::Error;
};

/// Every resampling attempt of an evaluation point hit a denominator zero.
class EvalDegenerate : public Error {
public:
    using Error::Error;
};

/// (wall, I0) pair outside the classified fixed-point table.
class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

class NonUnitDivisor : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A stability parameter too close to the accumulation line for the
/// requested wall resolution.
class Inconclusive : public Error {
public:
    using Error::Error;
};

class NotMultiplicityFree : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace wallx
