#pragma once

#include <stdexcept>
#include <string>

namespace gpckit {

struct ZeroPolynomial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateDenominator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedPoleStructure : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotBoostable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotMonic : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularNormalMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoStableHorizon : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CornerDominanceViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace gpckit
