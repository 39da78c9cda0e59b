#pragma once

#include <stdexcept>
#include <string>

namespace cmkit {

/// An argument lies outside the domain of the requested function.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative or adaptive scheme failed to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural hypothesis (ordering, majorization, length) does not hold.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

[[noreturn]] inline void throw_domain(const std::string& where, const std::string& what) {
  throw domain_error(where + ": " + what);
}

}  // namespace detail
}  // namespace cmkit
