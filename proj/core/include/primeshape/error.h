#ifndef PRIMESHAPE_ERROR_H_
#define PRIMESHAPE_ERROR_H_

#include <stdexcept>
#include <string>

namespace primeshape {

// Precondition or argument violation. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric search failed to converge or a rate is unreachable. The CLI maps
// this to exit code 3.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace primeshape

#endif  // PRIMESHAPE_ERROR_H_
