#pragma once

#include <stdexcept>
#include <string>

namespace strokeopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape outside the diffeomorphism domain (shape norm >= 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The metric pulled back to the tangent plane lost positive definiteness.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class ZeroDisplacement : public Error {
 public:
  using Error::Error;
};

class ZeroControl : public Error {
 public:
  using Error::Error;
};

class PoleDegeneracy : public Error {
 public:
  using Error::Error;
};

class NotSimple : public Error {
 public:
  using Error::Error;
};

class ChartOverflow : public Error {
 public:
  using Error::Error;
};

class NoSignChange : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace strokeopt
