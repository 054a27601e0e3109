#include "infoid/format/types.hpp"

namespace infoid {

const SymbolType* SymbolTypeSet::find(std::string_view type_id) const {
  for (const auto& t : members)
    if (t.id == type_id) return &t;
  return nullptr;
}

const GlyphBitmap* SymbolFont::glyph(std::string_view type_id) const {
  auto it = glyphs.find(std::string(type_id));
  return it == glyphs.end() ? nullptr : &it->second;
}

std::string_view direction_name(Direction d) {
  return d == Direction::Boustrophedon ? "boustrophedon" : "left-to-right-top-to-bottom";
}

std::vector<std::string> MeaningfulFlags::names() const {
  std::vector<std::string> out;
  if (font_family) out.emplace_back("fontFamily");
  if (bold) out.emplace_back("bold");
  if (italic) out.emplace_back("italic");
  if (underline) out.emplace_back("underline");
  if (size_pt) out.emplace_back("sizePt");
  if (case_sensitive) out.emplace_back("caseSensitive");
  if (word_separators) out.emplace_back("wordSeparators");
  if (paragraphs) out.emplace_back("paragraphs");
  if (link_targets) out.emplace_back("linkTargets");
  if (dom_elements) out.emplace_back("domElements");
  return out;
}

bool MeaningfulFlags::set(std::string_view name) {
  if (name == "fontFamily") font_family = true;
  else if (name == "bold") bold = true;
  else if (name == "italic") italic = true;
  else if (name == "underline") underline = true;
  else if (name == "sizePt") size_pt = true;
  else if (name == "caseSensitive") case_sensitive = true;
  else if (name == "wordSeparators") word_separators = true;
  else if (name == "paragraphs") paragraphs = true;
  else if (name == "linkTargets") link_targets = true;
  else if (name == "domElements") dom_elements = true;
  else return false;
  return true;
}

}  // namespace infoid
