#pragma once

#include <stdexcept>
#include <string>

namespace vpplab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent profile / preset / config input.
struct ProfileError : Error {
  using Error::Error;
};

// Command issued against a device state that forbids it.
struct CommandError : Error {
  using Error::Error;
};

// Corrupt or schema-incompatible record stream.
struct RecordError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace vpplab
