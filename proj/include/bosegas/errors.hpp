#ifndef BOSEGAS_ERRORS_HPP
#define BOSEGAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bosegas {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A requested object exceeds the configured size limits.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

// Invalid input: bad dimensions, broken invariants, malformed configs.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

// A numerical procedure failed to reach its target accuracy.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace bosegas

#endif
