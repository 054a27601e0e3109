#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infoid/interpretation/errors.hpp"

namespace infoid {

enum class Charset { Ascii, Latin1, Utf8 };

struct TypeTag {
  std::string media;  // "text/plain" or "text/html"
  Charset charset = Charset::Utf8;
};

// Accepts text/plain and text/html with an optional charset parameter
// (ascii, latin1, utf8 and their common aliases). text/plain defaults to
// ascii, text/html to utf8.
TypeTag parse_type_tag(std::string_view tag);

struct DecodedText {
  std::u32string text;
  std::vector<std::size_t> offsets;  // byte offset of each code point
};

DecodedText decode_bytes(std::string_view bytes, Charset charset);
// Throws UnsupportedType if a code point has no representation.
std::string encode_text(std::u32string_view text, Charset charset);

std::string utf8_encode(std::u32string_view text);
std::string charset_name(Charset c);

}  // namespace infoid
