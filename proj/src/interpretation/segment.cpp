#include "infoid/interpretation/segment.hpp"

#include <algorithm>
#include <cmath>

namespace infoid {

std::string gap_class_name(GapClass g) {
  switch (g) {
    case GapClass::IntraWord: return "intra-word";
    case GapClass::InterWord: return "inter-word";
    case GapClass::LineBreak: return "line-break";
    case GapClass::ParagraphBreak: return "paragraph-break";
  }
  return "intra-word";
}

SymbolArrangement segment(const SensoryImpression& impression, const ArrangementRuleSet& rules) {
  const Raster& r = impression.pixels;
  const Rational& s = impression.resolution_scale;
  const double sd = s.to_double();
  const int margin = static_cast<int>(s.floor_mul(rules.margin_px));
  const int x0 = margin, x1 = r.width - margin, y0 = margin, y1 = r.height - margin;
  SymbolArrangement out;
  if (x0 >= x1 || y0 >= y1) return out;

  auto nonblank = [&](int x, int y) { return r.at(x, y) > 0.0; };

  struct Band {
    int top, bottom;  // inclusive
    int slot;
  };
  std::vector<Band> bands;
  const int pitch = rules.line_pitch();
  for (int y = y0; y < y1;) {
    bool any = false;
    for (int x = x0; x < x1 && !any; ++x) any = nonblank(x, y);
    if (!any) {
      ++y;
      continue;
    }
    int top = y;
    while (y < y1) {
      bool row = false;
      for (int x = x0; x < x1 && !row; ++x) row = nonblank(x, y);
      if (!row) break;
      ++y;
    }
    int bottom = y - 1;
    double mid = (top + bottom + 1) / 2.0 / sd - rules.margin_px;
    int slot = static_cast<int>(std::floor(mid / pitch));
    if (!bands.empty() && bands.back().slot == slot) {
      bands.back().bottom = bottom;
    } else {
      bands.push_back({top, bottom, slot});
    }
  }

  const double word_gap = (rules.inter_glyph_gap_px + rules.inter_word_gap_min_px) / 2.0 * sd;
  for (std::size_t li = 0; li < bands.size(); ++li) {
    const Band& b = bands[li];
    ArrangedLine line;
    line.slot = b.slot;
    line.baseline_y = (rules.margin_px + static_cast<double>(b.slot) * pitch + rules.baseline_px) * sd;
    for (int x = x0; x < x1;) {
      auto col = [&](int cx) {
        for (int y = b.top; y <= b.bottom; ++y)
          if (nonblank(cx, y)) return true;
        return false;
      };
      if (!col(x)) {
        ++x;
        continue;
      }
      int left = x;
      while (x < x1 && col(x)) ++x;
      GlyphBox box;
      box.x = left;
      box.width = x - left;
      int top = b.bottom, bottom = b.top;
      for (int y = b.top; y <= b.bottom; ++y)
        for (int cx = left; cx < x; ++cx)
          if (nonblank(cx, y)) {
            top = std::min(top, y);
            bottom = std::max(bottom, y);
          }
      box.y = top;
      box.height = bottom - top + 1;
      line.boxes.push_back(box);
    }
    bool reversed = rules.direction == Direction::Boustrophedon && li % 2 == 1;
    if (reversed) std::reverse(line.boxes.begin(), line.boxes.end());
    for (std::size_t k = 0; k + 1 < line.boxes.size(); ++k) {
      const GlyphBox& a = line.boxes[k];
      const GlyphBox& n = line.boxes[k + 1];
      int gap = reversed ? a.x - (n.x + n.width) : n.x - (a.x + a.width);
      line.boxes[k].gap_after = gap >= word_gap ? GapClass::InterWord : GapClass::IntraWord;
    }
    if (!line.boxes.empty()) {
      bool para = li + 1 < bands.size() && bands[li + 1].slot - b.slot > 1;
      line.boxes.back().gap_after = para ? GapClass::ParagraphBreak : GapClass::LineBreak;
    }
    out.lines.push_back(std::move(line));
  }
  return out;
}

}  // namespace infoid
