#pragma once

#include <stdexcept>
#include <string>

namespace genrank {

// Raised for malformed arguments: bad shapes, unknown simplices, bad tours.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Diagnostic {
    std::string message;
};

}  // namespace genrank
