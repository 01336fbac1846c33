#pragma once

#include <stdexcept>
#include <string>

namespace eutsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point set rejected by instance validation.
class ValidationError : public Error {
public:
    using Error::Error;
};

class TooSmall : public ValidationError {
public:
    explicit TooSmall(std::size_t n)
        : ValidationError("instance needs at least 3 points, got " + std::to_string(n)) {}
};

/// Two points share coordinates. Labels are 1-based.
class DuplicatePoint : public ValidationError {
public:
    DuplicatePoint(int first, int second)
        : ValidationError("duplicate point: labels " + std::to_string(first) + " and " +
                          std::to_string(second)),
          first(first), second(second) {}
    int first;
    int second;
};

/// Three points lie on a common line. Labels are 1-based.
class CollinearTriple : public ValidationError {
public:
    CollinearTriple(int a, int b, int c)
        : ValidationError("collinear triple: labels " + std::to_string(a) + ", " +
                          std::to_string(b) + ", " + std::to_string(c)),
          a(a), b(b), c(c) {}
    int a;
    int b;
    int c;
};

/// Geometry routine called on fewer points than it needs.
class DegenerateInstance : public Error {
public:
    using Error::Error;
};

/// A generator ran out of its draw budget.
class GenerationExhausted : public Error {
public:
    using Error::Error;
};

/// Malformed instance, tour, or config text. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

/// Exact oracle refused an instance beyond its size limit.
class TooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace eutsp
