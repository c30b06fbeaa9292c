#pragma once

#include <stdexcept>
#include <string>

namespace imgm {

// Exit-code oriented error hierarchy: usage 2, validation 3, io 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : Error {
  using Error::Error;
};

// Bad data or inconsistent configuration: malformed input lines,
// out-of-range probabilities, matroid capacity violations, ...
struct ValidationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace imgm
