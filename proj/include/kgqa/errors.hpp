#pragma once

#include <stdexcept>
#include <string>

namespace kgqa {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind { Usage, Data, Backend };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

// A question that matches none of the known templates.
class ClassificationError : public DataError {
 public:
  using DataError::DataError;
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what) : Error(ErrorKind::Backend, what) {}
};

// Table backend: a query token outside the model vocabulary.
class UnknownTokenError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Remote backend: connection failure or non-2xx status.
class TransportError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Remote backend: the response body is not the expected JSON shape.
class MalformedResponseError : public BackendError {
 public:
  using BackendError::BackendError;
};

// Remote backend: the reported distribution does not sum to one.
class NormalizationError : public BackendError {
 public:
  using BackendError::BackendError;
};

class DecodeError : public BackendError {
 public:
  using BackendError::BackendError;
};

}  // namespace kgqa
