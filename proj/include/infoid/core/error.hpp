#pragma once

#include <stdexcept>
#include <string>

namespace infoid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each module raises a CodedError over its own code enum so callers can
// branch on the condition without parsing messages.
template <typename Code>
class CodedError : public Error {
 public:
  CodedError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

}  // namespace infoid
