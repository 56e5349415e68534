#pragma once

#include <stdexcept>

namespace sedosc {

// Precondition or invariant violation on user-supplied inputs.
// The CLI maps these to exit code 2; everything else is a runtime error (1).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sedosc
