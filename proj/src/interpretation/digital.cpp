#include "infoid/interpretation/digital.hpp"

#include <cstdio>

#include "infoid/interpretation/text_decode.hpp"
#include "infoid/structure/text_layout.hpp"

namespace infoid {

namespace {

std::string code_point_label(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

// Style attributes the digital path can know without rendering: the
// format's default font stands in for fontFamily and sizePt.
StyleAttrs base_style(const InformationFormat& format, const FormatRegistry& registry) {
  StyleAttrs s;
  if (!format.default_font) return s;
  const SymbolFont& f = registry.get_font(*format.default_font);
  if (format.meaningful.font_family) s["fontFamily"] = f.family;
  if (format.meaningful.size_pt) s["sizePt"] = std::to_string(f.size_pt);
  return s;
}

SymbolOccurrence occurrence_for(char32_t cp, std::size_t offset, const Alphabet& alpha, const StyleAttrs& style) {
  auto type = alpha.type_for_code_point(cp);
  if (!type)
    throw InterpretationError(InterpretationErrc::DecodeError,
                              "byte offset " + std::to_string(offset) + ": no symbol type for " + code_point_label(cp),
                              offset);
  if (alpha.is_separator(*type)) return SymbolOccurrence(*type);
  return SymbolOccurrence(*type, style);
}

bool blank_line(std::u32string_view line) {
  for (char32_t c : line)
    if (c != U' ' && c != U'\t') return false;
  return true;
}

SymbolStructure plain_text(const DecodedText& d, const InformationFormat& format, const FormatRegistry& registry) {
  Alphabet alpha = registry.alphabet(format.id);
  StyleAttrs style = base_style(format, registry);

  struct Page {
    std::vector<TextLine> lines;
    bool leading_blank = true;   // first line of the page is blank or absent
    bool trailing_blank = true;  // last line of the page is blank or absent
  };
  std::vector<Page> pages(1);
  LineCollector lc;
  bool page_has_line = false;
  bool last_line_blank = true;

  auto finish_line = [&](std::size_t from, std::size_t to) {
    std::u32string_view line(d.text.data() + from, to - from);
    bool blank = blank_line(line);
    if (!page_has_line) pages.back().leading_blank = blank;
    page_has_line = true;
    last_line_blank = blank;
    if (blank) {
      lc.paragraph_break();
      return;
    }
    for (std::size_t k = from; k < to; ++k) {
      char32_t c = d.text[k];
      if (c == U'\t') c = U' ';
      lc.add(occurrence_for(c, d.offsets[k], alpha, style));
    }
    lc.end_line();
  };

  std::size_t start = 0;
  for (std::size_t k = 0; k <= d.text.size(); ++k) {
    bool end = k == d.text.size();
    char32_t c = end ? 0 : d.text[k];
    if (!end && c != U'\n' && c != U'\r' && c != U'\f') continue;
    if (!(end && start == k && page_has_line)) finish_line(start, k);
    if (c == U'\r' && k + 1 < d.text.size() && d.text[k + 1] == U'\n') ++k;
    if (c == U'\f') {
      pages.back().trailing_blank = last_line_blank;
      pages.back().lines = lc.finish();
      lc = LineCollector{};
      pages.emplace_back();
      page_has_line = false;
      last_line_blank = true;
    }
    start = k + 1;
  }
  pages.back().trailing_blank = last_line_blank;
  pages.back().lines = lc.finish();

  SymbolStructure s;
  s.format_id = format.id;
  if (pages.size() == 1) {
    s.root = build_text_container(pages.front().lines, format.meaningful);
  } else {
    s.root = Container("document");
    for (std::size_t p = 0; p < pages.size(); ++p) {
      s.root.children.emplace_back(build_text_container(pages[p].lines, format.meaningful, "page"));
      // A paragraph cut by a form feed belongs to both pages.
      if (p == 0 || !format.meaningful.paragraphs) continue;
      const Container& prev = *s.root.children[p - 1].container();
      const Container& cur = *s.root.children[p].container();
      if (pages[p - 1].trailing_blank || pages[p].leading_blank || prev.children.empty() || cur.children.empty()) continue;
      s.overlaps.push_back(Overlap{{p - 1, prev.children.size() - 1}, {p, 0}});
    }
  }
  s.refresh_status();
  return s;
}

class DomBuilder {
 public:
  DomBuilder(const InformationFormat& format, const FormatRegistry& registry, bool dom)
      : format_(format), alpha_(registry.alphabet(format.id)), base_(base_style(format, registry)), dom_(dom) {}

  Container element(const HtmlNode& n, StyleAttrs style) {
    Container c(n.tag);
    if (n.tag == "a" && format_.meaningful.link_targets) {
      auto href = n.attrs.find("href");
      if (href != n.attrs.end()) c.attrs["href"] = href->second;
    }
    children(n, c, style, n.tag == "pre");
    return c;
  }

 private:
  void children(const HtmlNode& n, Container& out, const StyleAttrs& style, bool pre) {
    for (const auto& child : n.children) {
      if (child.is_text()) {
        text(child, out, style, pre);
        continue;
      }
      if (child.tag == "b" || child.tag == "i" || child.tag == "u") {
        StyleAttrs inner = style;
        const MeaningfulFlags& m = format_.meaningful;
        if (child.tag == "b" && m.bold) inner["bold"] = "1";
        if (child.tag == "i" && m.italic) inner["italic"] = "1";
        if (child.tag == "u" && m.underline) inner["underline"] = "1";
        children(child, out, inner, pre);
        continue;
      }
      out.children.emplace_back(element(child, style));
    }
  }

  void text(const HtmlNode& t, Container& out, const StyleAttrs& style, bool pre) {
    for (char32_t c : t.text) {
      if (c == U'\r') continue;
      if (c == U'\n' && pre) {
        out.add_container("br");
        continue;
      }
      if (c == U'\t' || c == U'\n' || c == U'\f') c = U' ';
      auto type = alpha_.type_for_code_point(c);
      if (!type)
        throw InterpretationError(InterpretationErrc::DecodeError,
                                  "line " + std::to_string(t.line) + ": no symbol type for " + code_point_label(c), 0);
      if (alpha_.is_separator(*type)) {
        if (dom_ && !format_.meaningful.word_separators) continue;
        out.add(SymbolOccurrence(*type));
        continue;
      }
      StyleAttrs st = base_;
      st.insert(style.begin(), style.end());
      out.add(SymbolOccurrence(*type, std::move(st)));
    }
  }

  const InformationFormat& format_;
  Alphabet alpha_;
  StyleAttrs base_;
  bool dom_;
};

}  // namespace

SymbolStructure html_to_structure(const HtmlNode& root, const InformationFormat& format, const FormatRegistry& registry,
                                  bool dom) {
  DomBuilder b(format, registry, dom);
  SymbolStructure s;
  s.format_id = format.id;
  Container tree = b.element(root, {});
  if (dom) {
    s.root = std::move(tree);
  } else {
    s.root = build_text_container(flatten_to_lines(tree), format.meaningful);
  }
  s.refresh_status();
  return s;
}

SymbolStructure digital_interpret(const DigitalObject& obj, const InformationFormat& format, const FormatRegistry& registry) {
  TypeTag tag = parse_type_tag(obj.type_tag);
  DecodedText d = decode_bytes(obj.bytes, tag.charset);
  if (tag.media == "text/plain") return plain_text(d, format, registry);
  HtmlNode root = parse_html(d.text);
  normalize_whitespace(root);
  return html_to_structure(root, format, registry, format.meaningful.dom_elements);
}

}  // namespace infoid
