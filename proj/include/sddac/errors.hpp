#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sddac {

// Error categories map 1:1 onto CLI exit codes: 2 config, 3 instability, 4 io.

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstabilityError : std::runtime_error {
  std::size_t cycle;
  InstabilityError(const std::string& msg, std::size_t at)
      : std::runtime_error(msg), cycle(at) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sddac
