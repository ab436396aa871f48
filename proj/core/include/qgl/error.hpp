#pragma once

#include <stdexcept>
#include <string>

namespace qgl {

enum class ErrorKind {
  InvalidInput,  // structurally bad data handed to a constructor or operation
  Parse,         // malformed or schema-violating serialized input
  Unsupported,   // valid input outside the supported model scope
  Numerical,     // a solve or decomposition could not be carried out
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qgl
