#pragma once

#include <stdexcept>
#include <string>

namespace kforest {

/** Base class for every failure this library reports. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Malformed graph text: bad header, bad edge line, self-loop, duplicate edge. */
class ParseError : public Error {
public:
    using Error::Error;
};

/** An operation that needs a connected graph was given a disconnected one. */
class DisconnectedError : public Error {
public:
    using Error::Error;
};

/** No path exists between the requested endpoints. */
class UnreachableError : public Error {
public:
    using Error::Error;
};

/** The requested tree count is unusable: out of range, or not a power of two
    where the bisection pipeline requires one. */
class UnsupportedKError : public Error {
public:
    using Error::Error;
};

/** The similarity matrix carries no usable signal (for example a graph whose
    pairwise distances are all equal, leaving every off-diagonal entry zero). */
class DegenerateSimilarityError : public Error {
public:
    using Error::Error;
};

/** The eigensolver could not produce a spectral direction: no strictly
    positive eigenvalue, or the iteration budget ran out. */
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/** A recursion branch was left with a single vertex before the final level,
    so the requested number of blocks cannot be reached. */
class BlockDeficitError : public Error {
public:
    using Error::Error;
};

/** Exhaustive search was asked for an instance above its hard size guard. */
class TooLargeError : public Error {
public:
    using Error::Error;
};

/** Rejection sampling failed to find an acceptable draw within its budget. */
class GenerationError : public Error {
public:
    using Error::Error;
};

/** A statistic is undefined for the given sample (for example zero variance). */
class DegenerateSampleError : public Error {
public:
    using Error::Error;
};

}  // namespace kforest
