#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace caudex {

// Every engine error carries the module it came from; what() is
// "<module>: <message>" so CLI and library users see the same text.
class Error : public std::runtime_error {
public:
    Error(std::string module, const std::string& message)
        : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

    const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

} // namespace caudex
