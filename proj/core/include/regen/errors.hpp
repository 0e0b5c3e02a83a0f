#pragma once

#include <stdexcept>
#include <string>

namespace regen {

// Base for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// inv(0) or division by zero in GF(256).
struct DivisionByZero : Error {
    using Error::Error;
};

// Linear system has no unique solution (decode failure events land here).
struct SingularSystem : Error {
    using Error::Error;
};

// Bad parameters or malformed payload.
struct InvalidInput : Error {
    using Error::Error;
};

// Repair protocol called with the wrong number or shape of responses.
struct ProtocolViolation : Error {
    using Error::Error;
};

// Event log references an inactive or unknown node.
struct InvalidEvent : Error {
    using Error::Error;
};

// No alpha in (0, 1] makes the scenario feasible.
struct NoThreshold : Error {
    using Error::Error;
};

// Malformed trace or fragment file.
struct FormatError : Error {
    using Error::Error;
};

// Trace has no live-node time to average over.
struct EstimateUndefined : Error {
    using Error::Error;
};

// Requested unavailability target not reachable in the swept range.
struct Unreachable : Error {
    using Error::Error;
};

}  // namespace regen
