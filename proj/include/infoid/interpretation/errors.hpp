#pragma once

#include <cstddef>
#include <string>

#include "infoid/core/error.hpp"

namespace infoid {

enum class InterpretationErrc { NotDiscreteFormat, UnsupportedType, DecodeError, HtmlParseError };

class InterpretationError : public CodedError<InterpretationErrc> {
 public:
  // position is a byte offset for DecodeError and a 1-based line for HtmlParseError.
  InterpretationError(InterpretationErrc code, const std::string& what, std::size_t position = 0)
      : CodedError(code, what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace infoid
