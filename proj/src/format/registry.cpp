#include "infoid/format/registry.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

namespace infoid {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    auto part = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!part.empty()) out.push_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

struct GlyphBlock {
  std::string type;
  std::vector<std::string> rows;
  int line = 0;
};

struct Section {
  std::string kind;
  std::string id;
  int line = 0;
  std::vector<Entry> entries;
  std::vector<GlyphBlock> glyphs;

  const Entry* get(std::string_view key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"typeset", {"type", "separator"}},
      {"font", {"family", "sizePt", "cellHeight", "ascent", "covers", "styles", "derive", "transform"}},
      {"rules",
       {"direction", "interGlyphGapPx", "interWordGapMinPx", "interLineGapMinPx", "paragraphBlankLines",
        "lineHeightPx", "baselinePx", "marginPx"}},
      {"format", {"typesets", "fonts", "rules", "meaningful", "merge", "defaultFont"}},
  };
  return keys;
}

bool repeatable(std::string_view key) { return key == "type" || key == "separator" || key == "merge"; }

std::vector<Section> parse_sections(std::string_view text) {
  std::vector<Section> sections;
  GlyphBlock* open_glyph = nullptr;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string line = trim(raw);

    if (open_glyph) {
      if (line == "}") {
        if (open_glyph->rows.empty()) throw FormatError(FormatErrc::SyntaxError, "empty glyph block", lineno);
        open_glyph = nullptr;
        continue;
      }
      if (line.empty() || line.find_first_not_of(".#") != std::string::npos)
        throw FormatError(FormatErrc::SyntaxError, "glyph rows may only contain '.' and '#'", lineno);
      open_glyph->rows.push_back(line);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError(FormatErrc::SyntaxError, "unterminated section header", lineno);
      auto words = split_words(std::string_view(line).substr(1, line.size() - 2));
      if (words.size() != 2 || !allowed_keys().count(words[0]))
        throw FormatError(FormatErrc::SyntaxError, "expected [typeset|font|rules|format <id>]", lineno);
      sections.push_back(Section{words[0], words[1], lineno, {}, {}});
      continue;
    }
    if (sections.empty()) throw FormatError(FormatErrc::SyntaxError, "content before first section", lineno);
    Section& sec = sections.back();

    if (line.rfind("glyph ", 0) == 0) {
      auto words = split_words(line);
      if (sec.kind != "font" || words.size() != 3 || words[2] != "{")
        throw FormatError(FormatErrc::SyntaxError, "expected 'glyph <typeId> {' inside a font", lineno);
      sec.glyphs.push_back(GlyphBlock{words[1], {}, lineno});
      open_glyph = &sec.glyphs.back();
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(FormatErrc::SyntaxError, "expected 'key = value'", lineno);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!allowed_keys().at(sec.kind).count(key))
      throw FormatError(FormatErrc::SyntaxError, "unknown key '" + key + "' in " + sec.kind + " section", lineno);
    if (!repeatable(key) && sec.get(key))
      throw FormatError(FormatErrc::SyntaxError, "duplicate key '" + key + "'", lineno);
    if (value.empty()) throw FormatError(FormatErrc::SyntaxError, "empty value for '" + key + "'", lineno);
    sec.entries.push_back(Entry{key, value, lineno});
  }
  if (open_glyph) throw FormatError(FormatErrc::SyntaxError, "unterminated glyph block", open_glyph->line);
  return sections;
}

int parse_int(const Entry& e) {
  int v = 0;
  auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc() || p != e.value.data() + e.value.size())
    throw FormatError(FormatErrc::SyntaxError, "'" + e.key + "' expects an integer", e.line);
  return v;
}

std::optional<char32_t> parse_code_point(const std::string& tok, int line) {
  if (tok == "-") return std::nullopt;
  if (tok.size() < 3 || tok.compare(0, 2, "U+") != 0)
    throw FormatError(FormatErrc::SyntaxError, "expected U+XXXX or '-'", line);
  unsigned v = 0;
  auto [p, ec] = std::from_chars(tok.data() + 2, tok.data() + tok.size(), v, 16);
  if (ec != std::errc() || p != tok.data() + tok.size() || v > 0x10FFFF)
    throw FormatError(FormatErrc::SyntaxError, "bad code point '" + tok + "'", line);
  return static_cast<char32_t>(v);
}

std::string code_point_text(const std::optional<char32_t>& cp) {
  if (!cp) return "-";
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(*cp));
  return buf;
}

// Font-wide bitmap transforms used to derive cuts from a base font.
void apply_transform(SymbolFont& f, const std::string& text, int line) {
  auto words = split_words(text);
  if (words.empty()) throw FormatError(FormatErrc::SyntaxError, "empty transform", line);
  const std::string& op = words[0];
  auto arg = [&]() {
    int v = -1;
    if (words.size() != 2 || std::from_chars(words[1].data(), words[1].data() + words[1].size(), v).ec != std::errc() ||
        v < 0)
      throw FormatError(FormatErrc::SyntaxError, "'" + op + "' expects a row/column index", line);
    return v;
  };
  if (op == "duprow") {
    int n = arg();
    if (n >= f.cell_height) throw FormatError(FormatErrc::InvalidDefinition, "duprow index outside the cell", line);
    for (auto& [id, g] : f.glyphs) {
      Bitmap out(g.width, g.height + 1);
      for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < g.width; ++x) out.set(x, y, g.at(x, y <= n ? y : y - 1));
      g = std::move(out);
    }
    ++f.cell_height;
    if (n < f.ascent) ++f.ascent;
  } else if (op == "dupcol") {
    int n = arg();
    for (auto& [id, g] : f.glyphs) {
      int c = std::min(n, g.width - 1);
      Bitmap out(g.width + 1, g.height);
      for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < out.width; ++x) out.set(x, y, g.at(x <= c ? x : x - 1, y));
      g = std::move(out);
    }
  } else if (op == "bold" && words.size() == 1) {
    for (auto& [id, g] : f.glyphs) {
      Bitmap out(g.width + 1, g.height);
      for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < out.width; ++x)
          out.set(x, y, (x < g.width && g.at(x, y)) || (x > 0 && g.at(x - 1, y)));
      g = std::move(out);
    }
    f.style.bold = true;
  } else if (op == "italic" && words.size() == 1) {
    for (auto& [id, g] : f.glyphs) {
      auto shift = [&](int y) { return (g.height - 1 - y) / 3; };
      Bitmap out(g.width + shift(0), g.height);
      // A pixel covers the columns between its row's shift and the next
      // row's, so slanted strokes stay connected.
      for (int y = 0; y < g.height; ++y) {
        int lo = y + 1 < g.height ? shift(y + 1) : shift(y);
        for (int x = 0; x < g.width; ++x)
          if (g.at(x, y))
            for (int s = lo; s <= shift(y); ++s) out.set(x + s, y, true);
      }
      g = std::move(out);
    }
    f.style.italic = true;
  } else if (op == "underline" && words.size() == 1) {
    for (auto& [id, g] : f.glyphs) {
      auto cols = ink_columns(g);
      if (!cols) continue;
      for (int x = cols->first; x <= cols->second; ++x) g.set(x, g.height - 1, true);
    }
    f.style.underline = true;
  } else {
    throw FormatError(FormatErrc::SyntaxError, "unknown transform '" + text + "'", line);
  }
}

}  // namespace

// Turns parsed sections into registry entries, resolving names against the
// sections of the same document first and the registry second.
class DefinitionBuilder {
 public:
  DefinitionBuilder(const FormatRegistry& reg, std::vector<Section> sections)
      : reg_(reg), sections_(std::move(sections)) {
    for (const auto& s : sections_) {
      auto key = s.kind + " " + s.id;
      if (!by_key_.emplace(key, &s).second)
        throw FormatError(FormatErrc::DuplicateDefinition, s.kind + " '" + s.id + "' defined twice", s.line);
      bool exists = (s.kind == "typeset" && reg_.type_sets_.count(s.id)) || (s.kind == "font" && reg_.fonts_.count(s.id)) ||
                    (s.kind == "rules" && reg_.rules_.count(s.id)) || (s.kind == "format" && reg_.formats_.count(s.id));
      if (exists) throw FormatError(FormatErrc::DuplicateDefinition, s.kind + " '" + s.id + "' already registered", s.line);
    }
  }

  void build() {
    for (const auto& s : sections_) {
      if (s.kind == "typeset") type_set(s.id);
      else if (s.kind == "rules") rules(s.id);
    }
    for (const auto& s : sections_)
      if (s.kind == "font") font(s.id, s.line);
    for (const auto& s : sections_)
      if (s.kind == "format") format(s);
  }

  void commit(FormatRegistry& reg) {
    for (auto& [id, v] : sets_) reg.type_sets_.emplace(id, std::move(v));
    for (auto& [id, v] : fonts_) reg.fonts_.emplace(id, std::move(v));
    for (auto& [id, v] : rules_) reg.rules_.emplace(id, std::move(v));
    for (auto& [id, v] : formats_) reg.formats_.emplace(id, v);
  }

  std::vector<InformationFormat> formats_in_order() const {
    std::vector<InformationFormat> out;
    for (const auto& s : sections_)
      if (s.kind == "format") out.push_back(formats_.at(s.id));
    return out;
  }

 private:
  const Section* section(const std::string& kind, const std::string& id) const {
    auto it = by_key_.find(kind + " " + id);
    return it == by_key_.end() ? nullptr : it->second;
  }

  const SymbolTypeSet* find_set(const std::string& id) {
    if (section("typeset", id)) return &type_set(id);
    auto it = reg_.type_sets_.find(id);
    return it == reg_.type_sets_.end() ? nullptr : &it->second;
  }

  const SymbolTypeSet& type_set(const std::string& id) {
    if (auto it = sets_.find(id); it != sets_.end()) return it->second;
    const Section& s = *section("typeset", id);
    SymbolTypeSet set{id, {}};
    for (const auto& e : s.entries) {
      auto words = split_words(e.value);
      if (words.size() < 2) throw FormatError(FormatErrc::SyntaxError, "expected '<typeId> U+XXXX [name]'", e.line);
      SymbolType t;
      t.id = words[0];
      t.code_point = parse_code_point(words[1], e.line);
      auto name_at = e.value.find(words[1]) + words[1].size();
      t.display_name = words.size() > 2 ? trim(std::string_view(e.value).substr(name_at)) : words[0];
      t.set_id = id;
      t.separator = e.key == "separator";
      if (set.find(t.id))
        throw FormatError(FormatErrc::InvalidDefinition, "type '" + t.id + "' listed twice in set '" + id + "'", e.line);
      set.members.push_back(std::move(t));
    }
    if (set.members.empty()) throw FormatError(FormatErrc::InvalidDefinition, "type set '" + id + "' is empty", s.line);
    return sets_.emplace(id, std::move(set)).first->second;
  }

  const ArrangementRuleSet& rules(const std::string& id) {
    if (auto it = rules_.find(id); it != rules_.end()) return it->second;
    const Section& s = *section("rules", id);
    ArrangementRuleSet r;
    r.id = id;
    auto need = [&](const char* key) -> const Entry& {
      const Entry* e = s.get(key);
      if (!e) throw FormatError(FormatErrc::SyntaxError, std::string("rules '") + id + "' missing '" + key + "'", s.line);
      return *e;
    };
    const Entry& dir = need("direction");
    if (dir.value == "left-to-right-top-to-bottom") r.direction = Direction::LeftToRightTopToBottom;
    else if (dir.value == "boustrophedon") r.direction = Direction::Boustrophedon;
    else throw FormatError(FormatErrc::SyntaxError, "unknown direction '" + dir.value + "'", dir.line);
    r.inter_glyph_gap_px = parse_int(need("interGlyphGapPx"));
    r.inter_word_gap_min_px = parse_int(need("interWordGapMinPx"));
    r.inter_line_gap_min_px = parse_int(need("interLineGapMinPx"));
    const Entry& pbl = need("paragraphBlankLines");
    r.paragraph_blank_lines = pbl.value == "none" ? std::nullopt : std::optional<int>(parse_int(pbl));
    r.line_height_px = parse_int(need("lineHeightPx"));
    r.baseline_px = parse_int(need("baselinePx"));
    r.margin_px = parse_int(need("marginPx"));
    auto bad = [&](const std::string& msg) { throw FormatError(FormatErrc::InvalidDefinition, "rules '" + id + "': " + msg, s.line); };
    if (r.inter_glyph_gap_px < 0) bad("interGlyphGapPx must be >= 0");
    if (r.inter_word_gap_min_px < 1) bad("interWordGapMinPx must be >= 1");
    if (r.inter_word_gap_min_px <= r.inter_glyph_gap_px) bad("interWordGapMinPx must exceed interGlyphGapPx");
    if (r.inter_line_gap_min_px < 1) bad("interLineGapMinPx must be >= 1");
    if (r.paragraph_blank_lines && *r.paragraph_blank_lines < 1) bad("paragraphBlankLines must be >= 1 or none");
    if (r.line_height_px < 1) bad("lineHeightPx must be >= 1");
    if (r.baseline_px < 0 || r.baseline_px > r.line_height_px) bad("baselinePx must lie within the line");
    if (r.margin_px < 0) bad("marginPx must be >= 0");
    return rules_.emplace(id, std::move(r)).first->second;
  }

  const SymbolFont* find_font(const std::string& id, int line) {
    if (section("font", id)) return &font(id, line);
    auto it = reg_.fonts_.find(id);
    return it == reg_.fonts_.end() ? nullptr : &it->second;
  }

  const SymbolFont& font(const std::string& id, int ref_line) {
    if (auto it = fonts_.find(id); it != fonts_.end()) return it->second;
    if (in_progress_.count(id)) throw FormatError(FormatErrc::InvalidDefinition, "font '" + id + "' derives from itself", ref_line);
    in_progress_.insert(id);
    const Section& s = *section("font", id);
    SymbolFont f;
    const Entry* derive = s.get("derive");
    if (derive) {
      const SymbolFont* base = find_font(derive->value, derive->line);
      if (!base) throw FormatError(FormatErrc::UnresolvedReference, "unknown font '" + derive->value + "'", derive->line);
      f = *base;
      if (const Entry* t = s.get("transform"))
        for (const auto& step : split_list(t->value)) apply_transform(f, step, t->line);
    } else if (s.get("transform")) {
      throw FormatError(FormatErrc::SyntaxError, "'transform' needs 'derive'", s.get("transform")->line);
    }
    f.id = id;
    auto need = [&](const char* key) -> const Entry* {
      const Entry* e = s.get(key);
      if (!e && !derive)
        throw FormatError(FormatErrc::SyntaxError, std::string("font '") + id + "' missing '" + key + "'", s.line);
      return e;
    };
    if (auto e = need("family")) f.family = e->value;
    if (auto e = need("sizePt")) f.size_pt = parse_int(*e);
    if (auto e = need("cellHeight")) f.cell_height = parse_int(*e);
    if (auto e = need("ascent")) f.ascent = parse_int(*e);
    if (auto e = need("covers")) f.type_set_ids = split_list(e->value);
    if (const Entry* e = s.get("styles")) {
      f.style = StyleFlags{};
      if (e->value != "none") {
        for (const auto& st : split_list(e->value)) {
          if (st == "bold") f.style.bold = true;
          else if (st == "italic") f.style.italic = true;
          else if (st == "underline") f.style.underline = true;
          else throw FormatError(FormatErrc::SyntaxError, "unknown style '" + st + "'", e->line);
        }
      }
    }
    for (const auto& g : s.glyphs) {
      Bitmap b;
      try {
        b = Bitmap::from_rows(g.rows);
      } catch (const std::invalid_argument& ex) {
        throw FormatError(FormatErrc::SyntaxError, ex.what(), g.line);
      }
      f.glyphs[g.type] = std::move(b);
    }

    auto bad = [&](const std::string& msg, int line) {
      throw FormatError(FormatErrc::InvalidDefinition, "font '" + id + "': " + msg, line);
    };
    if (f.size_pt < 1) bad("sizePt must be >= 1", s.line);
    if (f.cell_height < 1) bad("cellHeight must be >= 1", s.line);
    if (f.ascent < 1 || f.ascent > f.cell_height) bad("ascent must lie within the cell", s.line);
    if (f.type_set_ids.empty()) bad("covers no type set", s.line);
    std::set<std::string> covered;
    for (const auto& set_id : f.type_set_ids) {
      const SymbolTypeSet* set = find_set(set_id);
      if (!set) throw FormatError(FormatErrc::UnresolvedReference, "unknown type set '" + set_id + "'", s.line);
      for (const auto& t : set->members) {
        if (t.separator) continue;
        covered.insert(t.id);
        if (!f.glyph(t.id)) bad("no glyph for '" + t.id + "'", s.line);
      }
    }
    for (const auto& [tid, g] : f.glyphs) {
      if (!covered.count(tid)) throw FormatError(FormatErrc::UnresolvedReference, "glyph for unknown type '" + tid + "'", s.line);
      if (g.height != f.cell_height) bad("glyph '" + tid + "' height differs from cellHeight", s.line);
      if (g.empty_ink()) bad("glyph '" + tid + "' has no ink", s.line);
    }
    in_progress_.erase(id);
    return fonts_.emplace(id, std::move(f)).first->second;
  }

  void format(const Section& s) {
    InformationFormat fmt;
    fmt.id = s.id;
    const Entry* sets = s.get("typesets");
    if (!sets) throw FormatError(FormatErrc::SyntaxError, "format '" + s.id + "' missing 'typesets'", s.line);
    for (const auto& id : split_list(sets->value)) {
      if (!find_set(id)) throw FormatError(FormatErrc::UnresolvedReference, "unknown type set '" + id + "'", sets->line);
      fmt.type_set_ids.push_back(id);
    }
    if (const Entry* e = s.get("fonts")) {
      for (const auto& id : split_list(e->value)) {
        if (!find_font(id, e->line)) throw FormatError(FormatErrc::UnresolvedReference, "unknown font '" + id + "'", e->line);
        fmt.font_ids.push_back(id);
      }
    }
    if (const Entry* e = s.get("rules")) {
      if (!section("rules", e->value) && !reg_.rules_.count(e->value))
        throw FormatError(FormatErrc::UnresolvedReference, "unknown rules '" + e->value + "'", e->line);
      fmt.rules_id = e->value;
    }
    if (const Entry* e = s.get("meaningful")) {
      if (e->value != "none")
        for (const auto& flag : split_list(e->value))
          if (!fmt.meaningful.set(flag)) throw FormatError(FormatErrc::SyntaxError, "unknown flag '" + flag + "'", e->line);
    }
    std::set<std::string> members;
    for (const auto& id : fmt.type_set_ids)
      for (const auto& t : find_set(id)->members) members.insert(t.id);
    for (const auto& e : s.entries) {
      if (e.key != "merge") continue;
      auto words = split_words(e.value);
      if (words.size() < 3) throw FormatError(FormatErrc::SyntaxError, "expected 'merge = <merged> <src> <src>...'", e.line);
      MergeDeclaration m{words[0], {words.begin() + 1, words.end()}};
      for (const auto& src : m.sources)
        if (!members.count(src)) throw FormatError(FormatErrc::UnresolvedReference, "unknown merge source '" + src + "'", e.line);
      fmt.merges.push_back(std::move(m));
    }
    if (const Entry* e = s.get("defaultFont")) {
      if (std::find(fmt.font_ids.begin(), fmt.font_ids.end(), e->value) == fmt.font_ids.end())
        throw FormatError(FormatErrc::UnresolvedReference, "default font '" + e->value + "' is not one of the format's fonts", e->line);
      fmt.default_font = e->value;
    }
    formats_.emplace(s.id, std::move(fmt));
  }

  const FormatRegistry& reg_;
  std::vector<Section> sections_;
  std::map<std::string, const Section*> by_key_;
  std::map<std::string, SymbolTypeSet> sets_;
  std::map<std::string, SymbolFont> fonts_;
  std::map<std::string, ArrangementRuleSet> rules_;
  std::map<std::string, InformationFormat> formats_;
  std::set<std::string> in_progress_;
};

FormatRegistry FormatRegistry::with_builtins() {
  static const FormatRegistry loaded = [] {
    FormatRegistry r;
    for (auto text : builtin_definitions()) r.parse_format_definition(text);
    return r;
  }();
  return loaded;
}

std::vector<InformationFormat> FormatRegistry::parse_format_definition(std::string_view text) {
  DefinitionBuilder b(*this, parse_sections(text));
  b.build();
  b.commit(*this);
  return b.formats_in_order();
}

const InformationFormat& FormatRegistry::get_format(std::string_view id) const {
  auto it = formats_.find(id);
  if (it == formats_.end()) throw FormatError(FormatErrc::UnknownFormat, "unknown format '" + std::string(id) + "'");
  return it->second;
}

const SymbolFont& FormatRegistry::get_font(std::string_view id) const {
  auto it = fonts_.find(id);
  if (it == fonts_.end()) throw FormatError(FormatErrc::UnresolvedReference, "unknown font '" + std::string(id) + "'");
  return it->second;
}

const SymbolTypeSet& FormatRegistry::get_type_set(std::string_view id) const {
  auto it = type_sets_.find(id);
  if (it == type_sets_.end()) throw FormatError(FormatErrc::UnresolvedReference, "unknown type set '" + std::string(id) + "'");
  return it->second;
}

const ArrangementRuleSet& FormatRegistry::get_rules(std::string_view id) const {
  auto it = rules_.find(id);
  if (it == rules_.end()) throw FormatError(FormatErrc::UnresolvedReference, "unknown rules '" + std::string(id) + "'");
  return it->second;
}

const ArrangementRuleSet& FormatRegistry::rules_for(const InformationFormat& format) const {
  if (!format.rules_id) throw FormatError(FormatErrc::InvalidDefinition, "format '" + format.id + "' has no arrangement rules");
  return get_rules(*format.rules_id);
}

std::vector<std::string> FormatRegistry::format_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, f] : formats_) out.push_back(id);
  return out;
}

Alphabet FormatRegistry::alphabet(std::string_view format_id) const { return Alphabet(*this, get_format(format_id)); }

bool ValidationReport::collides(std::string_view type_a, std::string_view type_b) const {
  for (const auto& c : collisions)
    if ((c.type_a == type_a && c.type_b == type_b) || (c.type_a == type_b && c.type_b == type_a)) return true;
  return false;
}

GlyphSignature glyph_signature(const GlyphBitmap& glyph, int ascent, const Rational& r) {
  auto crop = crop_to_ink(glyph);
  if (!crop) return {};
  // round half up of (y0 - ascent) * r
  std::int64_t twice = 2 * static_cast<std::int64_t>(crop->y0 - ascent) * r.num() + r.den();
  std::int64_t den = 2 * r.den();
  std::int64_t off = twice >= 0 ? twice / den : -((-twice + den - 1) / den);
  return GlyphSignature{scale_bitmap(crop->bitmap, r), static_cast<int>(off)};
}

ValidationReport FormatRegistry::validate_format(std::string_view format_id, std::optional<Rational> at_resolution) const {
  const InformationFormat& fmt = get_format(format_id);
  ValidationReport rep;
  rep.resolution = at_resolution.value_or(Rational(1, 1));
  if (!(Rational(0, 1) < rep.resolution)) throw FormatError(FormatErrc::InvalidDefinition, "resolution must be positive");

  std::map<std::string, std::string> owner;
  for (const auto& set_id : fmt.type_set_ids) {
    for (const auto& t : get_type_set(set_id).members) {
      auto [it, fresh] = owner.emplace(t.id, set_id);
      if (!fresh && it->second != set_id) rep.disjointness.push_back({t.id, it->second, set_id});
    }
  }

  Alphabet alpha(*this, fmt);
  struct Entry {
    std::string effective;
    std::string type;
    std::string font;
  };
  const MeaningfulFlags& m = fmt.meaningful;
  auto style_key = [&](const std::string& font_id) {
    const SymbolFont& f = get_font(font_id);
    return std::make_tuple(m.font_family ? f.family : std::string(), m.size_pt ? f.size_pt : 0,
                           m.bold && f.style.bold, m.italic && f.style.italic, m.underline && f.style.underline);
  };
  std::map<std::string, std::vector<Entry>> groups;
  for (const auto& font_id : fmt.font_ids) {
    const SymbolFont& f = get_font(font_id);
    for (const auto& [type, glyph] : f.glyphs) {
      auto eff = alpha.effective(type);
      if (!eff) continue;
      auto sig = glyph_signature(glyph, f.ascent, rep.resolution);
      std::string key = std::to_string(sig.bitmap.width) + "x" + std::to_string(sig.bitmap.height) + "@" +
                        std::to_string(sig.top_offset) + ":" + sig.bitmap.compact();
      groups[key].push_back({*eff, type, font_id});
    }
  }
  for (const auto& [key, entries] : groups) {
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        bool same_type = entries[i].effective == entries[j].effective;
        if (same_type && style_key(entries[i].font) == style_key(entries[j].font)) continue;
        GlyphCollision c{entries[i].type, entries[i].font, entries[j].type, entries[j].font};
        if (std::tie(c.type_b, c.font_b) < std::tie(c.type_a, c.font_a)) {
          std::swap(c.type_a, c.type_b);
          std::swap(c.font_a, c.font_b);
        }
        (same_type ? rep.style_collisions : rep.collisions).push_back(std::move(c));
      }
  }
  std::sort(rep.collisions.begin(), rep.collisions.end());
  std::sort(rep.style_collisions.begin(), rep.style_collisions.end());

  if (fmt.rules_id) {
    const ArrangementRuleSet& r = get_rules(*fmt.rules_id);
    for (const auto& font_id : fmt.font_ids) {
      const SymbolFont& f = get_font(font_id);
      if (f.ascent > r.baseline_px)
        rep.layout_issues.push_back("font " + font_id + ": ascent exceeds baselinePx of " + r.id);
      if (f.cell_height - f.ascent > r.line_height_px - r.baseline_px)
        rep.layout_issues.push_back("font " + font_id + ": descent exceeds the line below baselinePx of " + r.id);
      for (const auto& [type, glyph] : f.glyphs) {
        auto cols = ink_columns(glyph);
        if (!cols) continue;
        for (int x = cols->first; x <= cols->second; ++x) {
          bool any = false;
          for (int y = 0; y < glyph.height && !any; ++y) any = glyph.at(x, y);
          if (!any) {
            rep.layout_issues.push_back("font " + font_id + ": glyph " + type + " has a blank interior column");
            break;
          }
        }
      }
    }
  }
  return rep;
}

std::string FormatRegistry::serialize_format_definition(std::string_view format_id) const {
  const InformationFormat& fmt = get_format(format_id);
  std::ostringstream out;
  std::set<std::string> sets(fmt.type_set_ids.begin(), fmt.type_set_ids.end());
  for (const auto& font_id : fmt.font_ids)
    for (const auto& s : get_font(font_id).type_set_ids) sets.insert(s);
  for (const auto& set_id : sets) {
    out << "[typeset " << set_id << "]\n";
    for (const auto& t : get_type_set(set_id).members)
      out << (t.separator ? "separator" : "type") << " = " << t.id << ' ' << code_point_text(t.code_point) << ' '
          << t.display_name << '\n';
    out << '\n';
  }
  for (const auto& font_id : fmt.font_ids) {
    const SymbolFont& f = get_font(font_id);
    out << "[font " << f.id << "]\nfamily = " << f.family << "\nsizePt = " << f.size_pt << "\ncellHeight = " << f.cell_height
        << "\nascent = " << f.ascent << "\ncovers = ";
    for (std::size_t i = 0; i < f.type_set_ids.size(); ++i) out << (i ? ", " : "") << f.type_set_ids[i];
    std::vector<std::string> st;
    if (f.style.bold) st.emplace_back("bold");
    if (f.style.italic) st.emplace_back("italic");
    if (f.style.underline) st.emplace_back("underline");
    out << "\nstyles = ";
    if (st.empty()) out << "none";
    for (std::size_t i = 0; i < st.size(); ++i) out << (i ? ", " : "") << st[i];
    out << '\n';
    for (const auto& [type, g] : f.glyphs) {
      out << "glyph " << type << " {\n";
      for (const auto& row : g.rows()) out << row << '\n';
      out << "}\n";
    }
    out << '\n';
  }
  if (fmt.rules_id) {
    const ArrangementRuleSet& r = get_rules(*fmt.rules_id);
    out << "[rules " << r.id << "]\ndirection = " << direction_name(r.direction) << "\ninterGlyphGapPx = " << r.inter_glyph_gap_px
        << "\ninterWordGapMinPx = " << r.inter_word_gap_min_px << "\ninterLineGapMinPx = " << r.inter_line_gap_min_px
        << "\nparagraphBlankLines = " << (r.paragraph_blank_lines ? std::to_string(*r.paragraph_blank_lines) : "none")
        << "\nlineHeightPx = " << r.line_height_px << "\nbaselinePx = " << r.baseline_px << "\nmarginPx = " << r.margin_px
        << "\n\n";
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  out << "[format " << fmt.id << "]\ntypesets = " << join(fmt.type_set_ids) << '\n';
  if (!fmt.font_ids.empty()) out << "fonts = " << join(fmt.font_ids) << '\n';
  if (fmt.rules_id) out << "rules = " << *fmt.rules_id << '\n';
  auto names = fmt.meaningful.names();
  out << "meaningful = " << (names.empty() ? std::string("none") : join(names)) << '\n';
  for (const auto& m : fmt.merges) {
    out << "merge = " << m.merged;
    for (const auto& s : m.sources) out << ' ' << s;
    out << '\n';
  }
  if (fmt.default_font) out << "defaultFont = " << *fmt.default_font << '\n';
  return out.str();
}

}  // namespace infoid
