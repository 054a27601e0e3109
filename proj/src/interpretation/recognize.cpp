#include "infoid/interpretation/recognize.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "infoid/core/digest.hpp"
#include "infoid/structure/text_layout.hpp"

namespace infoid {

namespace {

struct Component {
  int x0, y0, x1, y1;  // inclusive bounds in impression pixels
  std::vector<std::pair<int, int>> pixels;
  bool unreadable = false;
};

std::vector<Component> components(const Raster& r) {
  std::vector<Component> out;
  std::vector<std::uint8_t> seen(r.px.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int sy = 0; sy < r.height; ++sy)
    for (int sx = 0; sx < r.width; ++sx) {
      if (seen[static_cast<std::size_t>(sy) * r.width + sx] || r.at(sx, sy) <= 0.0) continue;
      Component c{sx, sy, sx, sy, {}, false};
      stack.push_back({sx, sy});
      seen[static_cast<std::size_t>(sy) * r.width + sx] = 1;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        c.pixels.push_back({x, y});
        c.unreadable = c.unreadable || is_unreadable(r.at(x, y));
        c.x0 = std::min(c.x0, x);
        c.x1 = std::max(c.x1, x);
        c.y0 = std::min(c.y0, y);
        c.y1 = std::max(c.y1, y);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= r.width || ny >= r.height) continue;
            auto idx = static_cast<std::size_t>(ny) * r.width + nx;
            if (seen[idx] || r.at(nx, ny) <= 0.0) continue;
            seen[idx] = 1;
            stack.push_back({nx, ny});
          }
      }
      out.push_back(std::move(c));
    }
  return out;
}

struct AnalogComponent {
  AnalogPart part;
  const Component* component;
};

std::vector<AnalogComponent> analog_components(const SensoryImpression& imp, const std::vector<Component>& comps,
                                               const InformationFormat& format, const FormatRegistry& registry) {
  const Rational& s = imp.resolution_scale;
  int max_glyph_w = 0;
  for (const auto& fid : format.font_ids)
    for (const auto& [t, g] : registry.get_font(fid).glyphs) max_glyph_w = std::max(max_glyph_w, g.width);
  const int line_h = format.rules_id ? registry.get_rules(*format.rules_id).line_height_px : 0;
  const double sd = s.to_double();
  std::vector<AnalogComponent> out;
  for (const auto& c : comps) {
    if (c.unreadable) continue;
    int w = c.x1 - c.x0 + 1, h = c.y1 - c.y0 + 1;
    if (!(h > line_h * sd || w > max_glyph_w * sd + 1)) continue;
    AnalogPart part;
    auto to_carrier_lo = [&](int v) { return static_cast<int>(std::floor(v / sd)); };
    auto to_carrier_hi = [&](int v) { return static_cast<int>(std::ceil(v / sd)); };
    part.region.x = to_carrier_lo(c.x0);
    part.region.y = to_carrier_lo(c.y0);
    part.region.width = to_carrier_hi(c.x1 + 1) - part.region.x;
    part.region.height = to_carrier_hi(c.y1 + 1) - part.region.y;
    std::string payload = std::to_string(w) + "x" + std::to_string(h) + "\n";
    for (int y = c.y0; y <= c.y1; ++y)
      for (int x = c.x0; x <= c.x1; ++x) payload += static_cast<char>(std::lround(255.0 * imp.pixels.at(x, y)));
    part.payload_digest = sha256_hex(payload);
    out.push_back({part, &c});
  }
  std::sort(out.begin(), out.end(), [](const AnalogComponent& a, const AnalogComponent& b) {
    return a.part.region < b.part.region;
  });
  return out;
}

// A glyph crop as the scan grid shows it at one offset, with the exact
// position of its top ink row relative to the baseline, in impression pixels.
struct View {
  Bitmap bitmap;
  double top;
  friend bool operator==(const View&, const View&) = default;
};

struct Template {
  std::vector<View> views;
  std::string effective;
  const SymbolFont* font;
};

// The scan grid repeats every s.den() source pixels, so a glyph appears in at
// most den^2 ways. A crop whose top sits oy rows past a grid line starts its
// scan at (top_offset - oy) * s.
std::vector<View> scanned_views(const Bitmap& crop, int top_offset, const Rational& s) {
  std::vector<View> out;
  const int q = static_cast<int>(s.den());
  for (int oy = 0; oy < q; ++oy)
    for (int ox = 0; ox < q; ++ox) {
      Bitmap canvas(crop.width + ox + q, crop.height + oy + q);  // room for whole trailing cells
      for (int y = 0; y < crop.height; ++y)
        for (int x = 0; x < crop.width; ++x) canvas.set(x + ox, y + oy, crop.at(x, y));
      auto view = crop_to_ink(scale_bitmap(canvas, s));
      if (!view) continue;
      View v{view->bitmap, static_cast<double>(top_offset - oy) * s.num() / s.den() + view->y0};
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  return out;
}

std::string join_values(const std::set<std::string>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += '|';
    out += v;
  }
  return out;
}

}  // namespace

std::vector<AnalogPart> extract_analog_parts(const SensoryImpression& impression, const InformationFormat& format,
                                             const FormatRegistry& registry) {
  auto comps = components(impression.pixels);
  std::vector<AnalogPart> out;
  for (auto& a : analog_components(impression, comps, format, registry)) out.push_back(a.part);
  return out;
}

SymbolStructure recognize(const SensoryImpression& impression, const InformationFormat& format,
                          const FormatRegistry& registry) {
  if (!format.is_discrete())
    throw InterpretationError(InterpretationErrc::NotDiscreteFormat,
                              "format " + format.id + " lacks type sets, fonts or arrangement rules");
  const ArrangementRuleSet& rules = registry.rules_for(format);
  Alphabet alpha = registry.alphabet(format.id);
  const MeaningfulFlags& m = format.meaningful;
  const Rational& s = impression.resolution_scale;

  SymbolStructure out;
  out.format_id = format.id;

  // Analog regions are set aside before segmentation.
  auto comps = components(impression.pixels);
  auto analog = analog_components(impression, comps, format, registry);
  SensoryImpression text = impression;
  for (const auto& a : analog) {
    out.analog_parts.push_back(a.part);
    for (auto [x, y] : a.component->pixels) text.pixels.at(x, y) = kBlank;
  }

  std::vector<Template> templates;
  for (const auto& fid : format.font_ids) {
    const SymbolFont& f = registry.get_font(fid);
    for (const auto& [type, glyph] : f.glyphs) {
      auto eff = alpha.effective(type);
      if (!eff) continue;
      auto crop = crop_to_ink(glyph);
      if (!crop) continue;
      templates.push_back({scanned_views(crop->bitmap, crop->y0 - f.ascent, s), *eff, &f});
    }
  }

  SymbolArrangement arr = segment(text, rules);
  LineCollector lines;
  for (const auto& line : arr.lines) {
    for (const auto& box : line.boxes) {
      bool unreadable = false;
      Bitmap bits(box.width, box.height);
      for (int y = 0; y < box.height; ++y)
        for (int x = 0; x < box.width; ++x) {
          double v = text.pixels.at(box.x + x, box.y + y);
          unreadable = unreadable || is_unreadable(v);
          bits.set(x, y, is_ink(v));
        }
      auto crop = unreadable ? std::nullopt : crop_to_ink(bits);
      SymbolOccurrence occ;
      if (crop) {
        const Bitmap& b = crop->bitmap;
        const double top = box.y + crop->y0 - line.baseline_y;
        std::set<std::string> types, families, sizes, bold, italic, underline;
        for (const auto& t : templates) {
          if (std::none_of(t.views.begin(), t.views.end(),
                           [&](const View& v) { return v.bitmap == b && std::fabs(v.top - top) < 1e-9; }))
            continue;
          types.insert(t.effective);
          families.insert(t.font->family);
          sizes.insert(std::to_string(t.font->size_pt));
          bold.insert(t.font->style.bold ? "1" : "0");
          italic.insert(t.font->style.italic ? "1" : "0");
          underline.insert(t.font->style.underline ? "1" : "0");
        }
        if (!types.empty()) {
          StyleAttrs st;
          auto flag = [&](bool meaningful, const char* key, const std::set<std::string>& vals) {
            if (!meaningful) return;
            if (vals.size() > 1) st[key] = join_values(vals);
            else if (*vals.begin() == "1") st[key] = "1";
          };
          if (m.font_family) st["fontFamily"] = join_values(families);
          if (m.size_pt) st["sizePt"] = join_values(sizes);
          flag(m.bold, "bold", bold);
          flag(m.italic, "italic", italic);
          flag(m.underline, "underline", underline);
          occ = SymbolOccurrence::of({types.begin(), types.end()}, std::move(st));
        }
      }
      lines.add(occ);
      switch (box.gap_after) {
        case GapClass::IntraWord: break;
        case GapClass::InterWord: lines.add(SymbolOccurrence(std::string(kSpaceType))); break;
        case GapClass::LineBreak: lines.end_line(); break;
        case GapClass::ParagraphBreak: lines.paragraph_break(); break;
      }
    }
  }
  out.root = build_text_container(lines.finish(), m);
  out.refresh_status();
  return out;
}

}  // namespace infoid
