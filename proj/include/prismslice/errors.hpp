#pragma once

#include <stdexcept>
#include <string>

namespace prismslice {

// Precondition violation by the caller.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModelMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown instead of returning a value whose precision would drop to zero.
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal invariant broken; an exact division that must succeed did not.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace prismslice
