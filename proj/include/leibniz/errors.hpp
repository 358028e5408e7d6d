#ifndef LEIBNIZ_ERRORS_HPP
#define LEIBNIZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace leibniz {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ChartMismatch : public Error {
public:
  using Error::Error;
};

class UnknownVariable : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
public:
  using Error::Error;
};

class NotDivisible : public Error {
public:
  using Error::Error;
};

/// Raised by structure_from_lambda when a tensor is not linear in the fiber.
class NotLinear : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

} // namespace leibniz

#endif
