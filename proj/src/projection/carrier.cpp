#include "infoid/projection/carrier.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace infoid {

namespace {

std::string style_text(const StyleAttrs& s) {
  if (s.empty()) return "-";
  std::string out;
  for (const auto& [k, v] : s) {
    if (!out.empty()) out += ',';
    out += k + "=" + v;
  }
  return out;
}

StyleAttrs parse_style(const std::string& text, int line) {
  StyleAttrs s;
  if (text == "-") return s;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ProjectionError(ProjectionErrc::CarrierSyntax, "line " + std::to_string(line) + ": bad style '" + item + "'");
    s[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

}  // namespace

void write_carrier_file(std::ostream& out, const InformationCarrier& c) {
  out << "CARRIER " << c.id << ' ' << c.width << ' ' << c.height << '\n';
  if (c.used_format) out << "USED " << *c.used_format << '\n';
  if (c.intended_format) out << "INTENDED " << *c.intended_format << '\n';
  if (c.derived_from) out << "DERIVED " << *c.derived_from << '\n';
  for (const auto& g : c.glyphs)
    out << "GLYPH " << g.x << ' ' << g.y << ' ' << g.glyph.compact() << ' ' << g.source_type_id << ' '
        << (g.font_id.empty() ? "-" : g.font_id) << ' ' << style_text(g.style) << '\n';
  for (const auto& d : c.deterioration) out << "DAMAGE " << d.x << ' ' << d.y << ' ' << d.width << ' ' << d.height << '\n';
}

std::string to_carrier_file(const InformationCarrier& c) {
  std::ostringstream s;
  write_carrier_file(s, c);
  return s.str();
}

InformationCarrier read_carrier_file(std::istream& in) {
  InformationCarrier c;
  std::string line;
  int lineno = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw ProjectionError(ProjectionErrc::CarrierSyntax, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header && tag != "CARRIER") fail("expected CARRIER header");
    if (tag == "CARRIER") {
      if (header) fail("duplicate CARRIER header");
      if (!(ls >> c.id >> c.width >> c.height) || c.width < 0 || c.height < 0) fail("bad CARRIER header");
      header = true;
    } else if (tag == "USED" || tag == "INTENDED" || tag == "DERIVED") {
      std::string v;
      if (!(ls >> v)) fail("missing value");
      (tag == "USED" ? c.used_format : tag == "INTENDED" ? c.intended_format : c.derived_from) = v;
    } else if (tag == "GLYPH") {
      PlacedGlyph g;
      std::string rows, font, style;
      if (!(ls >> g.x >> g.y >> rows >> g.source_type_id >> font >> style)) fail("bad GLYPH record");
      try {
        g.glyph = Bitmap::from_compact(rows);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      g.font_id = font == "-" ? "" : font;
      g.style = parse_style(style, lineno);
      if (g.x < 0 || g.y < 0 || g.x + g.glyph.width > c.width || g.y + g.glyph.height > c.height)
        fail("glyph outside the carrier extent");
      c.glyphs.push_back(std::move(g));
    } else if (tag == "DAMAGE") {
      Region r;
      if (!(ls >> r.x >> r.y >> r.width >> r.height) || r.width <= 0 || r.height <= 0) fail("bad DAMAGE record");
      c.deterioration.push_back(r);
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing data");
  }
  if (!header) throw ProjectionError(ProjectionErrc::CarrierSyntax, "empty carrier file");
  return c;
}

}  // namespace infoid
