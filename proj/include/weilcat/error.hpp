#pragma once

#include <stdexcept>
#include <string>

namespace weilcat {

// Input violates a mathematical precondition or fails a category invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input could not be parsed (labels, files, records).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured size cap (polynomial degree, enumeration degree) was exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weilcat
