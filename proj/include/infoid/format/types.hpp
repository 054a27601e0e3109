#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoid/core/bitmap.hpp"
#include "infoid/core/error.hpp"

namespace infoid {

enum class FormatErrc { SyntaxError, UnresolvedReference, UnknownFormat, DuplicateDefinition, InvalidDefinition };

class FormatError : public CodedError<FormatErrc> {
 public:
  FormatError(FormatErrc code, const std::string& what, int line = 0)
      : CodedError(code, line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline constexpr std::string_view kSpaceType = "SPACE";

struct SymbolType {
  std::string id;
  std::string display_name;
  std::string set_id;
  std::optional<char32_t> code_point;
  bool separator = false;  // arrangement feature; has no glyph

  friend bool operator==(const SymbolType&, const SymbolType&) = default;
};

struct SymbolTypeSet {
  std::string id;
  std::vector<SymbolType> members;

  const SymbolType* find(std::string_view type_id) const;
  friend bool operator==(const SymbolTypeSet&, const SymbolTypeSet&) = default;
};

struct StyleFlags {
  bool bold = false;
  bool italic = false;
  bool underline = false;

  friend bool operator==(const StyleFlags&, const StyleFlags&) = default;
};

struct SymbolFont {
  std::string id;
  std::string family;
  int size_pt = 0;
  int cell_height = 0;
  int ascent = 0;  // rows above the baseline
  std::vector<std::string> type_set_ids;
  std::map<std::string, GlyphBitmap> glyphs;
  StyleFlags style;

  const GlyphBitmap* glyph(std::string_view type_id) const;
  friend bool operator==(const SymbolFont&, const SymbolFont&) = default;
};

enum class Direction { LeftToRightTopToBottom, Boustrophedon };

std::string_view direction_name(Direction d);

struct ArrangementRuleSet {
  std::string id;
  Direction direction = Direction::LeftToRightTopToBottom;
  int inter_glyph_gap_px = 2;
  int inter_word_gap_min_px = 6;
  int inter_line_gap_min_px = 4;
  std::optional<int> paragraph_blank_lines = 1;
  int line_height_px = 12;
  int baseline_px = 9;
  int margin_px = 4;

  int line_pitch() const { return line_height_px + inter_line_gap_min_px; }
  friend bool operator==(const ArrangementRuleSet&, const ArrangementRuleSet&) = default;
};

struct MeaningfulFlags {
  bool font_family = false;
  bool bold = false;
  bool italic = false;
  bool underline = false;
  bool size_pt = false;
  bool case_sensitive = false;
  bool word_separators = false;
  bool paragraphs = false;
  bool link_targets = false;
  bool dom_elements = false;

  // Names as written in definition files, in declaration order.
  std::vector<std::string> names() const;
  // Returns false for an unknown name.
  bool set(std::string_view name);
  friend bool operator==(const MeaningfulFlags&, const MeaningfulFlags&) = default;
};

// Sources collapse into one merged type; it is drawn with the last source's glyph.
struct MergeDeclaration {
  std::string merged;
  std::vector<std::string> sources;

  friend bool operator==(const MergeDeclaration&, const MergeDeclaration&) = default;
};

struct InformationFormat {
  std::string id;
  std::vector<std::string> type_set_ids;
  std::vector<std::string> font_ids;
  std::optional<std::string> rules_id;
  MeaningfulFlags meaningful;
  std::vector<MergeDeclaration> merges;
  std::optional<std::string> default_font;

  bool is_discrete() const { return !type_set_ids.empty() && !font_ids.empty() && rules_id.has_value(); }
  friend bool operator==(const InformationFormat&, const InformationFormat&) = default;
};

}  // namespace infoid
