#pragma once

#include <stdexcept>
#include <string>

namespace skygeo {

/// Base class for all skygeo errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed input file or record. Carries a human-readable location
/// ("line 7", "record 3") inside the message.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value violates a documented invariant (out-of-range latitude,
/// duplicate name, unknown config key, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Network-level failure talking to a remote backend: connection refused,
/// timeout, non-success HTTP status. Distinct from not-found results.
class TransportError : public Error {
public:
    using Error::Error;
};

/// A remote backend answered, but the payload did not match the expected
/// schema even after the retry budget was spent.
class MalformedResponseError : public Error {
public:
    using Error::Error;
};

/// Geometry with no defined answer (point on the rotation axis, centroid
/// collapsing to the axis).
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// An operation over a candidate list was given nothing to work with.
class NoCandidatesError : public Error {
public:
    using Error::Error;
};

/// Relative improvement was requested against a baseline of zero detections.
class UndefinedBaselineError : public Error {
public:
    using Error::Error;
};

}  // namespace skygeo
