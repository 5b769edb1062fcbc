#pragma once

#include <stdexcept>
#include <string>

namespace parityrep {

// Exit-code taxonomy used by the CLI: validation 1, inapplicable method 2,
// resource limits 3. Contract violations are programming errors.

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct MethodInapplicableError : std::runtime_error {
    explicit MethodInapplicableError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace parityrep
