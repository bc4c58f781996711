#pragma once

#include <stdexcept>

namespace privm {

// A caller passed values outside a function's documented contract.
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input would blow past a hard memory or runtime guard.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// External data (a file, a row, a matrix) failed validation.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace privm
