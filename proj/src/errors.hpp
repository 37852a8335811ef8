#pragma once

#include <stdexcept>
#include <string>

namespace volkit {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad run configuration: unknown keys, out-of-range values, missing files
// named in the config.
struct ConfigError : Error {
  using Error::Error;
};

// Bad input data: malformed CSV records, invariant violations in loaded
// series, misaligned date ranges.
struct DataError : Error {
  using Error::Error;
};

// Caller broke a documented precondition (length mismatch, invalid
// parameter block, n_keep = 0, ...).
struct ContractError : Error {
  using Error::Error;
};

}  // namespace volkit
