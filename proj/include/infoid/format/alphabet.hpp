#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "infoid/format/types.hpp"

namespace infoid {

class FormatRegistry;

// The effective symbol types of a format after merges and case folding, with
// the code point mapping used by decoders and the lexicon.
class Alphabet {
 public:
  Alphabet(const FormatRegistry& registry, const InformationFormat& format);

  // Effective id for a member type id of one of the format's sets.
  std::optional<std::string> effective(std::string_view type_id) const;
  std::optional<std::string> type_for_code_point(char32_t cp) const;
  std::optional<char32_t> code_point_for(std::string_view effective_id) const;
  // Member type whose glyph draws the effective type.
  std::optional<std::string> render_type(std::string_view effective_id) const;
  bool is_separator(std::string_view effective_id) const;
  bool contains(std::string_view effective_id) const { return types_.count(std::string(effective_id)) != 0; }
  const std::set<std::string>& types() const { return types_; }
  bool case_sensitive() const { return case_sensitive_; }

  // Lowercases Latin letters when the format ignores case.
  char32_t fold(char32_t cp) const;

 private:
  bool case_sensitive_ = true;
  std::map<std::string, std::string> effective_;
  std::map<char32_t, std::string> by_code_point_;
  std::map<std::string, char32_t> code_point_of_;
  std::map<std::string, std::string> render_;
  std::set<std::string> separators_;
  std::set<std::string> types_;
};

char32_t latin_upper(char32_t cp);
char32_t latin_lower(char32_t cp);

}  // namespace infoid
