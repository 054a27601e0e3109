#include "infoid/projection/projection.hpp"

#include <algorithm>

#include "infoid/interpretation/digital.hpp"
#include "infoid/structure/text_layout.hpp"

namespace infoid {

PhysicalProjectionMethod daylight_scan(Rational scale) { return {"daylight", scale, false}; }

PhysicalProjectionMethod infrared_scan(Rational scale) { return {"infrared", scale, true}; }

namespace {

bool style_flag(const StyleAttrs& s, const char* key) {
  auto it = s.find(key);
  return it != s.end() && it->second == "1";
}

const SymbolFont& pick_font(const StyleAttrs& style, const SymbolFont& base, const InformationFormat& format,
                            const FormatRegistry& registry) {
  if (style.empty()) return base;
  for (const auto& [k, v] : style)
    if (v.find('|') != std::string::npos)
      throw ProjectionError(ProjectionErrc::StructureAmbiguous, "style '" + k + "' has alternatives " + v);
  auto fam = style.find("fontFamily");
  auto size = style.find("sizePt");
  std::string family = fam != style.end() ? fam->second : base.family;
  StyleFlags want{style_flag(style, "bold"), style_flag(style, "italic"), style_flag(style, "underline")};
  auto matches = [&](const SymbolFont& f) {
    return f.family == family && f.style == want && (size == style.end() || std::to_string(f.size_pt) == size->second);
  };
  if (matches(base)) return base;
  for (const auto& id : format.font_ids) {
    const SymbolFont& f = registry.get_font(id);
    if (matches(f)) return f;
  }
  std::string desc = family;
  if (want.bold) desc += " bold";
  if (want.italic) desc += " italic";
  if (want.underline) desc += " underline";
  if (size != style.end()) desc += " " + size->second + "pt";
  throw ProjectionError(ProjectionErrc::MissingGlyph, "no font of format " + format.id + " for style " + desc);
}

struct Token {
  bool space = false;
  const GlyphBitmap* glyph = nullptr;
  const SymbolFont* font = nullptr;
  std::string type;
  StyleAttrs style;
  int ink_lo = 0;
  int ink_hi = 0;
};

}  // namespace

InformationCarrier write_carrier(const SymbolStructure& structure, const InformationFormat& format, const SymbolFont& font,
                                 int page_width_px, const FormatRegistry& registry, std::string carrier_id) {
  if (page_width_px < 0) throw ProjectionError(ProjectionErrc::InvalidArgument, "negative page width");
  if (structure.status == StructureStatus::Undefined || structure.has_undefined())
    throw ProjectionError(ProjectionErrc::StructureUndefined, "cannot write an undefined structure");
  for (const auto& child : structure.root.children)
    if (const auto* c = child.container(); c && c->kind == "page" && structure.root.children.size() > 1)
      throw ProjectionError(ProjectionErrc::LayoutError, "multi-page structures need more than one carrier surface");

  const ArrangementRuleSet& rules = registry.rules_for(format);
  Alphabet alpha = registry.alphabet(format.id);
  auto lines = flatten_to_lines(structure.root);

  std::vector<std::vector<Token>> laid;
  for (const auto& line : lines) {
    std::vector<Token> toks;
    for (const auto& occ : line.items) {
      if (occ.is_ambiguous())
        throw ProjectionError(ProjectionErrc::StructureAmbiguous, "occurrence with alternatives cannot be written");
      Token t;
      t.type = occ.type();
      if (alpha.is_separator(t.type)) {
        t.space = true;
        toks.push_back(std::move(t));
        continue;
      }
      auto render = alpha.render_type(t.type);
      const SymbolFont& f = pick_font(occ.style, font, format, registry);
      const GlyphBitmap* g = render ? f.glyph(*render) : nullptr;
      if (!g) throw ProjectionError(ProjectionErrc::MissingGlyph, "no glyph for " + t.type + " in font " + f.id);
      auto cols = ink_columns(*g);
      t.glyph = g;
      t.font = &f;
      t.style = occ.style;
      t.ink_lo = cols ? cols->first : 0;
      t.ink_hi = cols ? cols->second : g->width - 1;
      toks.push_back(std::move(t));
    }
    laid.push_back(std::move(toks));
  }

  InformationCarrier c;
  c.id = std::move(carrier_id);
  c.used_format = format.id;
  const int pitch = rules.line_pitch();
  int slot = 0;
  int max_right = 0;
  int max_bottom = 0;
  for (std::size_t li = 0; li < laid.size(); ++li) {
    if (li > 0) {
      ++slot;
      if (lines[li].new_paragraph) slot += rules.paragraph_blank_lines.value_or(0);
    }
    auto& toks = laid[li];
    if (rules.direction == Direction::Boustrophedon && li % 2 == 1) std::reverse(toks.begin(), toks.end());
    const int slot_top = rules.margin_px + slot * pitch;
    int pen = rules.margin_px;
    bool first = true;
    bool after_space = false;
    for (const auto& t : toks) {
      if (t.space) {
        after_space = true;
        continue;
      }
      if (!first) pen += after_space ? rules.inter_word_gap_min_px : rules.inter_glyph_gap_px;
      PlacedGlyph pg;
      pg.glyph = *t.glyph;
      pg.x = pen - t.ink_lo;
      pg.y = slot_top + rules.baseline_px - t.font->ascent;
      if (pg.x < 0 || pg.y < 0) throw ProjectionError(ProjectionErrc::LayoutError, "glyph falls outside the margin box");
      pg.style = t.style;
      pg.source_type_id = t.type;
      pg.font_id = t.font->id;
      pen = pg.x + t.ink_hi + 1;
      max_right = std::max(max_right, pg.x + pg.glyph.width);
      max_bottom = std::max(max_bottom, pg.y + pg.glyph.height);
      c.glyphs.push_back(std::move(pg));
      first = false;
      after_space = false;
    }
  }
  int text_bottom = laid.empty() ? rules.margin_px : rules.margin_px + slot * pitch + rules.line_height_px;
  c.width = std::max(page_width_px, max_right + rules.margin_px);
  c.height = std::max(text_bottom, max_bottom) + rules.margin_px;
  return c;
}

SensoryImpression physical_project(const InformationCarrier& carrier, const PhysicalProjectionMethod& method,
                                   std::string impression_id) {
  if (!(Rational(0, 1) < method.resolution_scale))
    throw ProjectionError(ProjectionErrc::InvalidArgument, "resolution scale must be positive");
  Raster full(carrier.width, carrier.height);
  for (const auto& g : carrier.glyphs)
    for (int y = 0; y < g.glyph.height; ++y)
      for (int x = 0; x < g.glyph.width; ++x) {
        int px = g.x + x, py = g.y + y;
        if (g.glyph.at(x, y) && px >= 0 && py >= 0 && px < full.width && py < full.height) full.at(px, py) = kInk;
      }
  if (!method.reveals_corrupted) {
    for (const auto& r : carrier.deterioration)
      for (int y = std::max(0, r.y); y < std::min(full.height, r.y + r.height); ++y)
        for (int x = std::max(0, r.x); x < std::min(full.width, r.x + r.width); ++x) full.at(x, y) = kUnreadable;
  }
  SensoryImpression imp;
  imp.id = impression_id.empty() ? carrier.id + "@" + method.id : std::move(impression_id);
  imp.resolution_scale = method.resolution_scale;
  if (method.resolution_scale == Rational(1, 1)) {
    imp.pixels = std::move(full);
  } else {
    imp.pixels = scale_raster(full, method.resolution_scale);
  }
  return imp;
}

SensoryImpression digital_project(const DigitalObject& obj, const InformationFormat& format, const SymbolFont& font,
                                  int page_width_px, const Rational& scale, const FormatRegistry& registry,
                                  std::string impression_id) {
  SymbolStructure s = digital_interpret(obj, format, registry);
  InformationCarrier c = write_carrier(s, format, font, page_width_px, registry, obj.id);
  PhysicalProjectionMethod screen{"screen", scale, false};
  return physical_project(c, screen, impression_id.empty() ? obj.id + "@screen" : std::move(impression_id));
}

InformationCarrier corrupt(const InformationCarrier& carrier, const Region& rect, std::string new_id) {
  int x0 = std::max(0, rect.x), y0 = std::max(0, rect.y);
  int x1 = std::min(carrier.width, rect.x + rect.width), y1 = std::min(carrier.height, rect.y + rect.height);
  if (rect.width <= 0 || rect.height <= 0 || x0 >= x1 || y0 >= y1)
    throw ProjectionError(ProjectionErrc::EmptyIntersection, "rectangle does not intersect the carrier");
  InformationCarrier out = carrier;
  out.id = new_id.empty() ? carrier.id + "'" : std::move(new_id);
  out.derived_from = carrier.id;
  out.deterioration.push_back(Region{x0, y0, x1 - x0, y1 - y0});
  return out;
}

}  // namespace infoid
