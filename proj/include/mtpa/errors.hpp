#pragma once

#include <stdexcept>
#include <string>

namespace mtpa {

// Invalid user-supplied configuration (config file, CLI flags, distribution
// parameters). The CLI maps this to exit code 2; every other exception maps
// to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mtpa
