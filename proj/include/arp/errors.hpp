#pragma once

#include <stdexcept>
#include <string>

namespace arp {

struct UnknownLabel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateVector : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientDirective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StabilizationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FactorNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAFactorImage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainStuck : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PatternMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidTable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonDeterministicInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace arp
