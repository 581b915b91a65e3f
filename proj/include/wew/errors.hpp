#pragma once

#include <stdexcept>
#include <string>

namespace wew {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A vector whose norm is below the zero-detection threshold.
struct ZeroVectorError : Error {
    explicit ZeroVectorError(const std::string& what = "vector is numerically zero") : Error(what) {}
};

// Cholesky failed: the matrix is not positive semidefinite within tolerance.
struct NotPsdError : Error {
    explicit NotPsdError(const std::string& what = "matrix is not positive semidefinite") : Error(what) {}
};

// The two channel vectors are (numerically) parallel, so zero-forcing
// directions do not exist.
struct CollinearChannelsError : Error {
    explicit CollinearChannelsError(const std::string& what = "channel vectors are collinear") : Error(what) {}
};

// The conic solver reported something a caller cannot recover from.
struct SolverFailure : Error {
    explicit SolverFailure(const std::string& what) : Error(what) {}
};

// Malformed message metadata in the network-coding pipeline.
struct ProtocolError : Error {
    explicit ProtocolError(const std::string& what) : Error(what) {}
};

// An uplink message longer than its downlink counterpart cannot be XOR-padded.
struct UplinkLongerThanDownlink : Error {
    explicit UplinkLongerThanDownlink(const std::string& what = "uplink message longer than downlink") : Error(what) {}
};

// Message lengths passed to a recovery step are inconsistent.
struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what = "message length mismatch") : Error(what) {}
};

// Power must be strictly positive before converting to dB.
struct NonPositivePower : Error {
    explicit NonPositivePower(const std::string& what = "power must be > 0 for dB conversion") : Error(what) {}
};

// Invalid or unknown configuration data.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace wew
