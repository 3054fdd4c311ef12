#pragma once

#include <stdexcept>
#include <string>

namespace sri {

// Base class for every error the engine raises on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value fell outside its mathematical domain (non-positive price for a log
// return, confidence outside (0,1), invalid date, ...).
class DomainError : public Error {
  using Error::Error;
};

// Not enough observations to start a computation at all.
class InsufficientHistoryError : public Error {
  using Error::Error;
};

// Enough to start, but too few complete rows/pairs to finish.
class InsufficientDataError : public Error {
  using Error::Error;
};

// Series could not be placed on a common date index.
class AlignmentError : public Error {
  using Error::Error;
};

// Bad parameterization: mismatched lengths, invalid policy fields, broken
// config files, referenced paths that do not exist.
class ConfigError : public Error {
  using Error::Error;
};

// Malformed input file; the message carries file name and offending lines.
class IngestError : public Error {
  using Error::Error;
};

// Design matrix is rank deficient; message names the collinear columns.
class SingularDesignError : public Error {
  using Error::Error;
};

// Optimizer ran out of its iteration budget; message carries best objective
// and the remaining optimality gap estimate.
class SolverError : public Error {
  using Error::Error;
};

// Two routes that must agree algebraically did not. Indicates misalignment,
// unit mixing, or an implementation bug.
class InternalConsistencyError : public Error {
  using Error::Error;
};

// Option-chain quotes are inconsistent with the forward (negative variance).
class DegenerateChainError : public Error {
  using Error::Error;
};

class IoError : public Error {
  using Error::Error;
};

}  // namespace sri
