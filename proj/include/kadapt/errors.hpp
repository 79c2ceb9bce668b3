#pragma once

#include <stdexcept>
#include <string>

namespace kadapt {

// Raised when an operation would exceed a documented size/enumeration guard.
class GuardExceeded : public std::runtime_error {
public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed instance files or field-level schema violations.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kadapt
