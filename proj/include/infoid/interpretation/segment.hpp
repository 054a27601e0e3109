#pragma once

#include <vector>

#include "infoid/format/types.hpp"
#include "infoid/projection/projection.hpp"

namespace infoid {

enum class GapClass { IntraWord, InterWord, LineBreak, ParagraphBreak };

std::string gap_class_name(GapClass g);

// Pixel box in impression coordinates; gap_after classifies what follows it
// in reading order.
struct GlyphBox {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  GapClass gap_after = GapClass::IntraWord;
  friend bool operator==(const GlyphBox&, const GlyphBox&) = default;
};

struct ArrangedLine {
  double baseline_y = 0;  // impression pixels
  int slot = 0;           // line slot on the carrier grid
  std::vector<GlyphBox> boxes;  // reading order
};

struct SymbolArrangement {
  std::vector<ArrangedLine> lines;
};

// Row profile inside the margins gives line bands, which are assigned to the
// rules' line grid; column profile inside a line gives glyph boxes. A skipped
// grid slot between lines is a paragraph break.
SymbolArrangement segment(const SensoryImpression& impression, const ArrangementRuleSet& rules);

}  // namespace infoid
