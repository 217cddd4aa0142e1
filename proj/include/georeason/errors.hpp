#pragma once

#include <stdexcept>
#include <string>

namespace georeason {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyMaskError : Error {
  using Error::Error;
};

struct DegenerateContourError : Error {
  using Error::Error;
};

struct MaskIoError : Error {
  using Error::Error;
};

struct GroupTooSmallError : Error {
  using Error::Error;
};

struct EmptyDatasetError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct EmptyBoundaryError : Error {
  using Error::Error;
};

struct UnknownTemplateError : Error {
  using Error::Error;
};

struct WorkerTimeoutError : Error {
  using Error::Error;
};

struct WorkerCrashedError : Error {
  WorkerCrashedError(const std::string& msg, int code) : Error(msg), exit_code(code) {}
  int exit_code;
};

struct BadResponseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace georeason
