#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace podselect {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to an operation (bad n, window size, empty row set, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Bad or missing configuration: thresholds out of range, missing word lists.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A malformed input record. `line` is 1-based; 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Transcript that yields no tokenizable sentence.
class EmptyDocumentError : public Error {
 public:
  using Error::Error;
};

// Input too small for the requested model (e.g. fewer sentences than topics).
class InsufficientContentError : public Error {
 public:
  using Error::Error;
};

// Text with no tokens handed to the language heuristic.
class UndeterminableError : public Error {
 public:
  using Error::Error;
};

// Remote summarizer failed (non-2xx, timeout, connection refused) after
// exhausting its retries.
class BackendError : public Error {
 public:
  BackendError(const std::string& message, int attempts)
      : Error(message + " (after " + std::to_string(attempts) + " attempts)"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// Remote summarizer answered with a body that does not follow the contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace podselect
