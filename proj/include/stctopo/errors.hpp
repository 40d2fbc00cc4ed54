#pragma once

#include <stdexcept>

namespace stctopo {

/// Invalid configuration or malformed input data. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem read/write failure. CLI exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An algorithm was run on a network that violates its stated
/// assumptions, e.g. CBTC on non-uniform exponents. CLI exit code 4.
struct AssumptionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No finite power connects the network.
struct UnconnectableNetwork : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node placement produced coincident points beyond the retry cap.
struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation requiring a connected input graph received a disconnected one.
struct DisconnectedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cover graph that must be connected is not; signals an algorithm bug.
struct DisconnectedCover : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested path endpoints lie in different components.
struct NoPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stctopo
