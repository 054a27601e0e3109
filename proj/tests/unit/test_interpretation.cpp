#include <doctest.h>

#include <functional>
#include <random>

#include "generators.hpp"
#include "infoid/interpretation/digital.hpp"
#include "infoid/interpretation/errors.hpp"
#include "infoid/interpretation/html.hpp"
#include "infoid/interpretation/recognize.hpp"
#include "infoid/interpretation/segment.hpp"
#include "infoid/interpretation/text_decode.hpp"
#include "infoid/projection/carrier.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/text_layout.hpp"

using namespace infoid;
using infoid::testing::random_text_structure;

namespace {

InterpretationErrc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InterpretationError& e) {
    return e.code();
  }
  FAIL("no error");
  return InterpretationErrc::DecodeError;
}

// Reference UTF-8 encoder, straight from the bit layout table.
std::string utf8_ref(char32_t c) {
  std::string o;
  if (c < 0x80) {
    o += static_cast<char>(c);
  } else if (c < 0x800) {
    o += static_cast<char>(0xC0 | (c >> 6));
    o += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    o += static_cast<char>(0xE0 | (c >> 12));
    o += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    o += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    o += static_cast<char>(0xF0 | (c >> 18));
    o += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    o += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    o += static_cast<char>(0x80 | (c & 0x3F));
  }
  return o;
}

SymbolStructure interpret(const std::string& bytes, const std::string& tag, const std::string& format,
                          const FormatRegistry& reg) {
  return digital_interpret(DigitalObject{"obj", bytes, tag}, reg.get_format(format), reg);
}

SymbolStructure scan_and_read(const SymbolStructure& s, const std::string& format, const std::string& font,
                              const FormatRegistry& reg, Rational scale = Rational(1, 1)) {
  const auto& fmt = reg.get_format(format);
  auto c = write_carrier(s, fmt, reg.get_font(font), 0, reg);
  return recognize(physical_project(c, daylight_scan(scale)), fmt, reg);
}

}  // namespace

TEST_CASE("type tags and charsets") {
  CHECK(parse_type_tag("text/plain").charset == Charset::Ascii);
  CHECK(parse_type_tag("text/html").charset == Charset::Utf8);
  CHECK(parse_type_tag("Text/Plain; charset=ISO-8859-1").charset == Charset::Latin1);
  CHECK(parse_type_tag("text/plain;charset=utf-8").charset == Charset::Utf8);
  CHECK(code_of([] { parse_type_tag("image/png"); }) == InterpretationErrc::UnsupportedType);
  CHECK(code_of([] { parse_type_tag("text/plain; charset=koi8-r"); }) == InterpretationErrc::UnsupportedType);
}

TEST_CASE("utf-8 decoding agrees with a reference encoder") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<std::uint32_t> cp(0, 0x10FFFF);
  for (int iter = 0; iter < 200; ++iter) {
    std::u32string text;
    std::string bytes;
    for (int i = 0; i < 20; ++i) {
      char32_t c;
      do c = cp(rng);
      while (c >= 0xD800 && c <= 0xDFFF);
      text.push_back(c);
      bytes += utf8_ref(c);
    }
    CHECK(utf8_encode(text) == bytes);
    auto d = decode_bytes(bytes, Charset::Utf8);
    CHECK(d.text == text);
    std::size_t off = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      CHECK(d.offsets[i] == off);
      off += utf8_ref(text[i]).size();
    }
  }
}

TEST_CASE("malformed bytes report their offset") {
  auto at = [](std::string bytes, Charset cs) -> std::size_t {
    try {
      decode_bytes(bytes, cs);
    } catch (const InterpretationError& e) {
      CHECK(e.code() == InterpretationErrc::DecodeError);
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(at("ab\xC3", Charset::Utf8) == 2);
  CHECK(at("a\xC0\xAF", Charset::Utf8) == 1);           // overlong
  CHECK(at("xy\xED\xA0\x80", Charset::Utf8) == 2);     // surrogate
  CHECK(at("\x80", Charset::Utf8) == 0);
  CHECK(at("abc\xE9", Charset::Ascii) == 3);
  CHECK(at("abc\xE9", Charset::Latin1) == std::string::npos);
  CHECK(decode_bytes("\xE9", Charset::Latin1).text == U"é");
  CHECK(code_of([] { encode_text(U"€", Charset::Latin1); }) == InterpretationErrc::UnsupportedType);
  CHECK(code_of([] { encode_text(U"é", Charset::Ascii); }) == InterpretationErrc::UnsupportedType);
}

TEST_CASE("plain text becomes paragraphs, lines and words") {
  auto reg = FormatRegistry::with_builtins();
  auto s = interpret("ab  cd\n\n\nef\ngh\n", "text/plain", "PLAIN_LATIN", reg);
  CHECK(s.status == StructureStatus::Complete);
  REQUIRE(s.root.children.size() == 2);
  const Container& p1 = *s.root.children[0].container();
  const Container& p2 = *s.root.children[1].container();
  CHECK(p1.kind == "paragraph");
  CHECK(p2.children.size() == 2);
  const Container& l1 = *p1.children[0].container();
  CHECK(l1.kind == "line");
  REQUIRE(l1.children.size() == 3);  // word SPACE word
  CHECK(l1.children[0].container()->kind == "word");
  CHECK(l1.children[1].occurrence()->type() == "SPACE");
  CHECK(display_text(s, reg.alphabet("PLAIN_LATIN")) == "ab cd\n\nef\ngh");

  // no paragraphs under the epigraphic format, and case folds
  auto e = interpret("ab\n\ncd\n", "text/plain", "LATIN_EPIGRAPHIC", reg);
  REQUIRE(e.root.children.size() == 2);
  CHECK(e.root.children[0].container()->kind == "line");
  CHECK(display_text(e, reg.alphabet("LATIN_EPIGRAPHIC")) == "AB\nCD");
}

TEST_CASE("unmapped characters fail with their byte offset") {
  auto reg = FormatRegistry::with_builtins();
  try {
    interpret("ok \xC3\xA9", "text/plain; charset=utf-8", "PLAIN_LATIN", reg);
    FAIL("decoded");
  } catch (const InterpretationError& e) {
    CHECK(e.code() == InterpretationErrc::DecodeError);
    CHECK(e.position() == 3);
  }
}

TEST_CASE("form feeds split pages and a cut paragraph overlaps both") {
  auto reg = FormatRegistry::with_builtins();
  auto s = interpret("one\ntwo\fthree\n", "text/plain", "PLAIN_LATIN", reg);
  REQUIRE(s.root.children.size() == 2);
  CHECK(s.root.children[0].container()->kind == "page");
  CHECK(s.root.children[1].container()->kind == "page");
  REQUIRE(s.overlaps.size() == 1);
  CHECK(s.overlaps[0].a == NodePath{0, 0});
  CHECK(s.overlaps[0].b == NodePath{1, 0});

  auto apart = interpret("one\n\n\fthree\n", "text/plain", "PLAIN_LATIN", reg);
  CHECK(apart.overlaps.empty());
}

TEST_CASE("html parse errors carry a line") {
  auto line_of = [](const std::u32string& text) -> std::size_t {
    try {
      parse_html(text);
    } catch (const InterpretationError& e) {
      CHECK(e.code() == InterpretationErrc::HtmlParseError);
      return e.position();
    }
    return 0;
  };
  CHECK(line_of(U"<html>\n<body>\n<p>x</b>\n</body></html>") == 3);
  CHECK(line_of(U"<html>\n<blink>x</blink></html>") == 2);
  CHECK(line_of(U"<html><body>") == 1);
  CHECK(line_of(U"<html></html><html></html>") == 1);
  CHECK(line_of(U"<!DOCTYPE html><!-- c --><html><body><p>x</p></body></html>") == 0);
}

TEST_CASE("html keeps its element tree when the format says so") {
  auto reg = FormatRegistry::with_builtins();
  std::string page = "<html><head><title>T</title></head><body><h1>Hi <b>you</b></h1>"
                     "<p>see <a href=\"x.html\">this</a></p></body></html>";
  auto dom = interpret(page, "text/html", "HTML_DOC", reg);
  CHECK(dom.root.kind == "html");
  REQUIRE(dom.root.children.size() == 2);
  const Container& body = *dom.root.children[1].container();
  CHECK(body.kind == "body");
  const Container& h1 = *body.children[0].container();
  CHECK(h1.kind == "h1");
  // "Hi " then bold "you"
  REQUIRE(h1.children.size() == 6);
  CHECK(h1.children[2].occurrence()->type() == "SPACE");
  CHECK(h1.children[3].occurrence()->style.at("bold") == "1");
  const Container& a = *body.children[1].container()->children[4].container();
  CHECK(a.kind == "a");
  CHECK(a.attrs.at("href") == "x.html");

  // Without domElements the page reads like its visible text.
  auto flat = interpret(page, "text/html", "PLAIN_LATIN", reg);
  auto text = interpret("T\n\nHi you\n\nsee this\n", "text/plain", "PLAIN_LATIN", reg);
  CHECK(flat.root == text.root);
}

TEST_CASE("html whitespace collapses outside pre") {
  auto reg = FormatRegistry::with_builtins();
  auto a = interpret("<html><body><p>  a \n\t b  </p><pre>\nx  y\nz</pre></body></html>", "text/html", "PLAIN_LATIN", reg);
  CHECK(display_text(a, reg.alphabet("PLAIN_LATIN")) == "a b\n\nx y\nz");
}

TEST_CASE("segmentation classifies the gaps") {
  auto reg = FormatRegistry::with_builtins();
  const auto& fmt = reg.get_format("PLAIN_LATIN");
  auto s = interpret("ab cd\n\nef\ng\n", "text/plain", "PLAIN_LATIN", reg);
  auto c = write_carrier(s, fmt, reg.get_font("MONO"), 0, reg);
  auto arr = segment(physical_project(c, daylight_scan()), reg.rules_for(fmt));
  std::vector<GapClass> gaps;
  std::vector<int> xs;
  for (const auto& l : arr.lines)
    for (const auto& b : l.boxes) {
      gaps.push_back(b.gap_after);
      xs.push_back(b.x);
    }
  using G = GapClass;
  CHECK(gaps == std::vector<G>{G::IntraWord, G::InterWord, G::IntraWord, G::ParagraphBreak, G::IntraWord, G::LineBreak,
                               G::LineBreak});
  REQUIRE(arr.lines.size() == 3);
  CHECK(arr.lines[0].slot == 0);
  CHECK(arr.lines[1].slot == 2);
  CHECK(arr.lines[2].slot == 3);
  // boxes start at the placed ink
  for (std::size_t i = 0; i < c.glyphs.size(); ++i)
    CHECK(xs[i] == c.glyphs[i].x + ink_columns(c.glyphs[i].glyph)->first);
}

TEST_CASE("recognition at full resolution returns the written structure") {
  auto reg = FormatRegistry::with_builtins();
  std::mt19937 rng(17);
  for (const char* fid : {"PLAIN_LATIN", "FONT_AWARE_LATIN", "LATIN_EPIGRAPHIC"}) {
    for (int iter = 0; iter < 30; ++iter) {
      CAPTURE(fid);
      CAPTURE(iter);
      auto s = random_text_structure(rng, reg, fid, 30);
      auto back = scan_and_read(s, fid, reg.get_format(fid).font_ids.front(), reg);
      CHECK(back.root == s.root);
      CHECK(back.status == StructureStatus::Complete);
    }
  }
}

TEST_CASE("damage turns exactly the touched glyph undefined") {
  auto reg = FormatRegistry::with_builtins();
  const auto& fmt = reg.get_format("PLAIN_LATIN");
  auto s = interpret("Damaged text here\n", "text/plain", "PLAIN_LATIN", reg);
  auto c = write_carrier(s, fmt, reg.get_font("MONO"), 0, reg);
  for (std::size_t k = 0; k < c.glyphs.size(); ++k) {
    const auto& g = c.glyphs[k];
    auto crop = crop_to_ink(g.glyph);
    auto worn = corrupt(c, Region{g.x + crop->x0, g.y + crop->y0, 1, 1});
    auto read = recognize(physical_project(worn, daylight_scan()), fmt, reg);
    CHECK(read.status == StructureStatus::Undefined);
    std::size_t seen = 0;
    NodePath p;
    for_each_occurrence(read.root, p, [&](const SymbolOccurrence& o, const NodePath&) {
      if (!o.is_undefined() && o.type() == "SPACE") return;
      CHECK(o.is_undefined() == (seen == k));
      if (seen != k) CHECK(o.type() == c.glyphs[seen].source_type_id);
      ++seen;
    });
    CHECK(seen == c.glyphs.size());
    // infrared looks through the damage
    CHECK(recognize(physical_project(worn, infrared_scan()), fmt, reg).root == s.root);
  }
}

TEST_CASE("low resolution merges the size demo pair") {
  auto reg = FormatRegistry::with_builtins();
  auto s = interpret("1l\n", "text/plain", "SIZE_DEMO", reg);
  auto read = scan_and_read(s, "SIZE_DEMO", "DEMO_12PT", reg, Rational(5, 11));
  std::vector<std::vector<std::string>> alts;
  NodePath p;
  for_each_occurrence(read.root, p, [&](const SymbolOccurrence& o, const NodePath&) { alts.push_back(o.alternatives); });
  std::vector<std::string> both{"DIGIT_1", "LATIN_L_LOWER"};
  CHECK(alts == std::vector<std::vector<std::string>>{both, both});
  CHECK(display_text(read, reg.alphabet("SIZE_DEMO")) == "{1|l}{1|l}");
  CHECK(scan_and_read(s, "SIZE_DEMO", "DEMO_12PT", reg).root == s.root);
  CHECK(scan_and_read(s, "SIZE_DEMO", "DEMO_11PT", reg).root == s.root);
}

TEST_CASE("large inked regions are set aside as analog parts") {
  auto reg = FormatRegistry::with_builtins();
  const auto& fmt = reg.get_format("PLAIN_LATIN");
  auto s = interpret("fig\n", "text/plain", "PLAIN_LATIN", reg);
  auto c = write_carrier(s, fmt, reg.get_font("MONO"), 0, reg);
  PlacedGlyph blob;
  blob.glyph = Bitmap(20, 30);
  for (auto& b : blob.glyph.bits) b = 1;
  blob.x = 60;
  blob.y = c.height;
  c.height += 40;
  c.width = std::max(c.width, 90);
  c.glyphs.push_back(blob);
  auto imp = physical_project(c, daylight_scan());
  auto parts = extract_analog_parts(imp, fmt, reg);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].region == Region{60, blob.y, 20, 30});
  CHECK(parts[0].payload_digest.has_value());
  auto read = recognize(imp, fmt, reg);
  CHECK(read.root == s.root);
  CHECK(read.analog_parts == parts);
}

TEST_CASE("recognition needs a discrete format") {
  auto reg = FormatRegistry::with_builtins();
  reg.parse_format_definition("[format BYTES_ONLY]\ntypesets = LATIN\n");
  SensoryImpression imp{"i", Raster(4, 4), Rational(1, 1)};
  CHECK(code_of([&] { recognize(imp, reg.get_format("BYTES_ONLY"), reg); }) == InterpretationErrc::NotDiscreteFormat);
}
