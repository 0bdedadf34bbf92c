#pragma once

#include <stdexcept>
#include <string>

namespace sm {

struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidFactor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct HeightTooLow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAChain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AliasingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotBandLimited : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ScheduleInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sm
