#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoid/core/rational.hpp"
#include "infoid/format/alphabet.hpp"
#include "infoid/format/types.hpp"

namespace infoid {

struct DisjointnessViolation {
  std::string type_id;
  std::string set_a;
  std::string set_b;
  friend bool operator==(const DisjointnessViolation&, const DisjointnessViolation&) = default;
};

// Two (type, font) glyphs that are bit-identical at the checked resolution.
// Entries are normalized so that (type_a, font_a) < (type_b, font_b).
struct GlyphCollision {
  std::string type_a;
  std::string font_a;
  std::string type_b;
  std::string font_b;
  friend bool operator==(const GlyphCollision&, const GlyphCollision&) = default;
  friend auto operator<=>(const GlyphCollision&, const GlyphCollision&) = default;
};

struct ValidationReport {
  Rational resolution;
  std::vector<DisjointnessViolation> disjointness;
  std::vector<GlyphCollision> collisions;
  // Same type drawn identically by fonts that differ in a style attribute the
  // format marks meaningful, so the attribute cannot be read back.
  std::vector<GlyphCollision> style_collisions;
  std::vector<std::string> layout_issues;

  bool valid() const {
    return disjointness.empty() && collisions.empty() && style_collisions.empty() && layout_issues.empty();
  }
  bool collides(std::string_view type_a, std::string_view type_b) const;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Glyph as seen at a resolution: tight ink crop laid on the scan grid at
// offset zero and scaled to ceil(w*r) x ceil(h*r), plus the rounded offset of
// its top row from the baseline.
struct GlyphSignature {
  Bitmap bitmap;
  int top_offset = 0;
  friend bool operator==(const GlyphSignature&, const GlyphSignature&) = default;
};

GlyphSignature glyph_signature(const GlyphBitmap& glyph, int ascent, const Rational& resolution);

class FormatRegistry {
 public:
  FormatRegistry() = default;

  // Registry preloaded with the shipped definitions.
  static FormatRegistry with_builtins();

  // Registers every section of a definition document atomically and returns
  // the formats it declares, in document order.
  std::vector<InformationFormat> parse_format_definition(std::string_view text);

  const InformationFormat& get_format(std::string_view id) const;
  const SymbolFont& get_font(std::string_view id) const;
  const SymbolTypeSet& get_type_set(std::string_view id) const;
  const ArrangementRuleSet& get_rules(std::string_view id) const;
  bool has_format(std::string_view id) const { return formats_.count(std::string(id)) != 0; }
  bool has_font(std::string_view id) const { return fonts_.count(std::string(id)) != 0; }

  std::vector<std::string> format_ids() const;

  ValidationReport validate_format(std::string_view format_id,
                                   std::optional<Rational> at_resolution = std::nullopt) const;

  // Self-contained definition text for one format; derived fonts are written
  // out glyph by glyph.
  std::string serialize_format_definition(std::string_view format_id) const;

  Alphabet alphabet(std::string_view format_id) const;
  // Rules of a discrete format.
  const ArrangementRuleSet& rules_for(const InformationFormat& format) const;

 private:
  friend class DefinitionBuilder;
  std::map<std::string, SymbolTypeSet, std::less<>> type_sets_;
  std::map<std::string, SymbolFont, std::less<>> fonts_;
  std::map<std::string, ArrangementRuleSet, std::less<>> rules_;
  std::map<std::string, InformationFormat, std::less<>> formats_;
};

// Raw text of the shipped definition files.
std::vector<std::string_view> builtin_definitions();

}  // namespace infoid
