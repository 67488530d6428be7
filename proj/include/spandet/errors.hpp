#pragma once

#include <stdexcept>
#include <string>

namespace spandet {

// Invalid input: malformed files, violated invariants, bad configuration.
// The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failure while running: non-finite loss, broken checkpoint, I/O trouble.
// The CLI maps these to exit code 3.
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spandet
