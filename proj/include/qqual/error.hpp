#pragma once

#include <stdexcept>
#include <string>

namespace qqual {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class UnlabelableError : public Error {
 public:
  using Error::Error;
};

// A metric whose formula is undefined for the given input (empty reference, zero length...).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qqual
