#include "infoid/interpretation/text_decode.hpp"

#include <algorithm>
#include <cctype>

namespace infoid {

namespace {

std::string lower_trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string hex_byte(unsigned char b) {
  static const char* hex = "0123456789ABCDEF";
  return std::string{hex[b >> 4], hex[b & 0xf]};
}

}  // namespace

TypeTag parse_type_tag(std::string_view tag) {
  auto semi = tag.find(';');
  std::string media = lower_trim(tag.substr(0, semi));
  TypeTag t;
  if (media == "text/plain") {
    t.charset = Charset::Ascii;
  } else if (media == "text/html") {
    t.charset = Charset::Utf8;
  } else {
    throw InterpretationError(InterpretationErrc::UnsupportedType, "unsupported type tag '" + std::string(tag) + "'");
  }
  t.media = media;
  if (semi != std::string_view::npos) {
    std::string param = lower_trim(tag.substr(semi + 1));
    if (param.rfind("charset=", 0) != 0)
      throw InterpretationError(InterpretationErrc::UnsupportedType, "unsupported type tag '" + std::string(tag) + "'");
    std::string cs = param.substr(8);
    if (cs == "ascii" || cs == "us-ascii") t.charset = Charset::Ascii;
    else if (cs == "latin1" || cs == "iso-8859-1") t.charset = Charset::Latin1;
    else if (cs == "utf8" || cs == "utf-8") t.charset = Charset::Utf8;
    else throw InterpretationError(InterpretationErrc::UnsupportedType, "unsupported charset '" + cs + "'");
  }
  return t;
}

DecodedText decode_bytes(std::string_view bytes, Charset charset) {
  DecodedText out;
  auto fail = [&](std::size_t at, const std::string& why) {
    throw InterpretationError(InterpretationErrc::DecodeError,
                              "byte offset " + std::to_string(at) + ": " + why + " (0x" +
                                  hex_byte(static_cast<unsigned char>(bytes[at])) + ")",
                              at);
  };
  for (std::size_t i = 0; i < bytes.size();) {
    auto b = static_cast<unsigned char>(bytes[i]);
    if (charset == Charset::Latin1 || (charset == Charset::Ascii && b < 0x80) || (charset == Charset::Utf8 && b < 0x80)) {
      out.text.push_back(b);
      out.offsets.push_back(i);
      ++i;
      continue;
    }
    if (charset == Charset::Ascii) fail(i, "byte outside ASCII");
    int len = b >= 0xF0 ? 4 : b >= 0xE0 ? 3 : b >= 0xC0 ? 2 : 0;
    if (len == 0 || b > 0xF4) fail(i, "invalid UTF-8 lead byte");
    if (i + len > bytes.size()) fail(i, "truncated UTF-8 sequence");
    char32_t cp = b & (0x7F >> len);
    for (int k = 1; k < len; ++k) {
      auto c = static_cast<unsigned char>(bytes[i + k]);
      if ((c & 0xC0) != 0x80) fail(i + k, "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (c & 0x3F);
    }
    static const char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len]) fail(i, "overlong UTF-8 sequence");
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail(i, "UTF-8 sequence encodes an invalid code point");
    out.text.push_back(cp);
    out.offsets.push_back(i);
    i += len;
  }
  return out;
}

std::string utf8_encode(std::u32string_view text) {
  std::string out;
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

std::string encode_text(std::u32string_view text, Charset charset) {
  if (charset == Charset::Utf8) return utf8_encode(text);
  char32_t limit = charset == Charset::Ascii ? 0x80 : 0x100;
  std::string out;
  for (char32_t cp : text) {
    if (cp >= limit)
      throw InterpretationError(InterpretationErrc::UnsupportedType,
                                "code point not representable in " + charset_name(charset));
    out += static_cast<char>(cp);
  }
  return out;
}

std::string charset_name(Charset c) {
  switch (c) {
    case Charset::Ascii: return "ascii";
    case Charset::Latin1: return "latin1";
    case Charset::Utf8: return "utf8";
  }
  return "utf8";
}

}  // namespace infoid
