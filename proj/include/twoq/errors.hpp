#pragma once

#include <stdexcept>
#include <string>

namespace twoq {

// Error taxonomy shared by all modules. Each maps one failed precondition.

struct NonHermitianInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionOverflow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParamOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadRank : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadEntropy : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadShots : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MissingSettings : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace twoq
