#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infoid/core/bitmap.hpp"
#include "infoid/core/error.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

enum class ProjectionErrc {
  MissingGlyph,
  StructureUndefined,
  StructureAmbiguous,
  UnsupportedType,
  EmptyIntersection,
  LayoutError,
  InvalidArgument,
  CarrierSyntax,
};

using ProjectionError = CodedError<ProjectionErrc>;

struct PlacedGlyph {
  GlyphBitmap glyph;
  int x = 0;
  int y = 0;
  StyleAttrs style;
  // Oracle bookkeeping only; recognition never sees it.
  std::string source_type_id;
  std::string font_id;
  friend bool operator==(const PlacedGlyph&, const PlacedGlyph&) = default;
};

struct InformationCarrier {
  std::string id;
  int width = 0;
  int height = 0;
  std::vector<PlacedGlyph> glyphs;
  std::vector<Region> deterioration;
  std::optional<std::string> used_format;
  std::optional<std::string> intended_format;
  std::optional<std::string> derived_from;
  friend bool operator==(const InformationCarrier&, const InformationCarrier&) = default;
};

// Line-delimited placement records:
//   CARRIER <id> <width> <height>
//   USED <formatId> | INTENDED <formatId> | DERIVED <carrierId>
//   GLYPH <x> <y> <rows joined by '/'> <sourceTypeId> <fontId> <k=v,...|->
//   DAMAGE <x> <y> <w> <h>
void write_carrier_file(std::ostream& out, const InformationCarrier& c);
std::string to_carrier_file(const InformationCarrier& c);
InformationCarrier read_carrier_file(std::istream& in);

}  // namespace infoid
