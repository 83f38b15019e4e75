#pragma once

#include <stdexcept>
#include <string>

namespace wfdtd {

// Invalid or inconsistent user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// NaN/Inf or divergence detected while stepping (CLI exit code 3).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wfdtd
