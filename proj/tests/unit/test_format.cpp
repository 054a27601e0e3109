#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "infoid/format/registry.hpp"

using namespace infoid;

namespace {

const char* kTiny = R"(
[format TINY]
typesets = TINYSET
fonts = TF
rules = TR
meaningful = caseSensitive, wordSeparators

[typeset TINYSET]
type = T_X U+0078 x
type = T_O U+006F o
separator = SPACE U+0020 space

[font TF]
family = TF
sizePt = 3
cellHeight = 3
ascent = 3
covers = TINYSET
glyph T_X {
#.#
.#.
#.#
}
glyph T_O {
###
#.#
###
}

[rules TR]
direction = left-to-right-top-to-bottom
interGlyphGapPx = 1
interWordGapMinPx = 3
interLineGapMinPx = 1
paragraphBlankLines = 1
lineHeightPx = 4
baselinePx = 3
marginPx = 1
)";

FormatErrc code_of(FormatRegistry& reg, const std::string& text) {
  try {
    reg.parse_format_definition(text);
  } catch (const FormatError& e) {
    return e.code();
  }
  FAIL("definition accepted: " << text);
  return FormatErrc::SyntaxError;
}

// Independent signature oracle: every target cell tests every source index
// for membership in its grid span by cross-multiplication.
bool in_span(std::int64_t j, std::int64_t x, const Rational& s) {
  std::int64_t p = s.num(), q = s.den();
  // lo = floor(j*q/p) is the unique x with x*p <= j*q < (x+1)*p
  bool is_lo = x * p <= j * q && j * q < (x + 1) * p;
  bool after_lo = j * q < x * p;
  bool before_hi = (x + 1) * p <= (j + 1) * q;
  return is_lo || (after_lo && before_hi);
}

GlyphSignature oracle_signature(const Bitmap& g, int ascent, const Rational& s) {
  int x0 = g.width, x1 = -1, y0 = g.height, y1 = -1;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      if (g.at(x, y)) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) return {};
  int w = x1 - x0 + 1, h = y1 - y0 + 1;
  int tw = static_cast<int>((w * s.num() + s.den() - 1) / s.den());
  int th = static_cast<int>((h * s.num() + s.den() - 1) / s.den());
  Bitmap out(tw, th);
  for (int ty = 0; ty < th; ++ty)
    for (int tx = 0; tx < tw; ++tx) {
      int ink = 0, total = 0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          if (in_span(tx, x, s) && in_span(ty, y, s)) {
            ++total;
            ink += g.at(x0 + x, y0 + y);
          }
      out.set(tx, ty, total > 0 && 2 * ink >= total);
    }
  long double top = std::floor(static_cast<long double>(2 * (y0 - ascent) * s.num() + s.den()) /
                               static_cast<long double>(2 * s.den()));
  return {out, static_cast<int>(top)};
}

// Brute-force pairwise collision list over every glyph of the format.
std::set<GlyphCollision> oracle_collisions(const FormatRegistry& reg, const std::string& format_id, const Rational& s) {
  const auto& fmt = reg.get_format(format_id);
  Alphabet alpha = reg.alphabet(format_id);
  struct G {
    std::string type, font, eff;
    GlyphSignature sig;
  };
  std::vector<G> all;
  for (const auto& fid : fmt.font_ids) {
    const auto& f = reg.get_font(fid);
    for (const auto& [t, g] : f.glyphs)
      if (auto e = alpha.effective(t)) all.push_back({t, fid, *e, oracle_signature(g, f.ascent, s)});
  }
  std::set<GlyphCollision> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].eff == all[j].eff || !(all[i].sig == all[j].sig)) continue;
      GlyphCollision c{all[i].type, all[i].font, all[j].type, all[j].font};
      if (std::tie(c.type_b, c.font_b) < std::tie(c.type_a, c.font_a)) {
        std::swap(c.type_a, c.type_b);
        std::swap(c.font_a, c.font_b);
      }
      out.insert(c);
    }
  return out;
}

}  // namespace

TEST_CASE("builtin formats load and validate at full resolution") {
  auto reg = FormatRegistry::with_builtins();
  for (const char* id : {"PLAIN_LATIN", "FONT_AWARE_LATIN", "HTML_DOC", "LATIN_EPIGRAPHIC", "SIZE_DEMO"}) {
    CAPTURE(id);
    REQUIRE(reg.has_format(id));
    auto rep = reg.validate_format(id);
    CHECK(rep.disjointness.empty());
    CHECK(rep.collisions.empty());
    CHECK(rep.layout_issues.empty());
  }
  CHECK(reg.get_format("PLAIN_LATIN").font_ids.size() == 15);
  std::set<std::string> families;
  for (const auto& fid : reg.get_format("PLAIN_LATIN").font_ids) families.insert(reg.get_font(fid).family);
  CHECK(families == std::set<std::string>{"MONO", "SANS", "SERIF"});
}

TEST_CASE("syntax errors carry the offending line") {
  FormatRegistry reg;
  try {
    reg.parse_format_definition("[typeset S]\ntype = A U+0041 A\nbogus = 1\n");
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.code() == FormatErrc::SyntaxError);
    CHECK(e.line() == 3);
  }
  CHECK(code_of(reg, "type = A U+0041 A\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[widget W]\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[typeset S\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[typeset S]\ntype = A U+0041 A\n[font F]\nfamily = F\nsizePt = 1\ncellHeight = 1\nascent = 1\n"
                     "covers = S\nglyph A {\n#\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[typeset S]\ntype = A U+0041 A\n[font F]\nfamily = F\nsizePt = 1\ncellHeight = 1\nascent = 1\n"
                     "covers = S\nglyph A {\nx\n}\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[typeset S]\ntype = A U+ZZ A\n") == FormatErrc::SyntaxError);
  CHECK(code_of(reg, "[format F]\nfonts = X\n") == FormatErrc::SyntaxError);
  CHECK(reg.format_ids().empty());
}

TEST_CASE("references resolve within a document regardless of order") {
  FormatRegistry reg;
  auto formats = reg.parse_format_definition(kTiny);
  REQUIRE(formats.size() == 1);
  CHECK(formats[0].id == "TINY");
  CHECK(reg.get_font("TF").glyphs.size() == 2);
  CHECK(reg.validate_format("TINY").valid());

  FormatRegistry other;
  CHECK(code_of(other, "[format F]\ntypesets = NOPE\n") == FormatErrc::UnresolvedReference);
  CHECK(code_of(other, "[font F]\nderive = NOPE\nfamily = F\n") == FormatErrc::UnresolvedReference);
}

TEST_CASE("a failing document registers nothing") {
  auto reg = FormatRegistry::with_builtins();
  auto before = reg.format_ids();
  std::string doc = "[typeset FRESH]\ntype = Z9 U+0039 9\n[format FRESH_FMT]\ntypesets = FRESH\nfonts = MISSING\n";
  CHECK(code_of(reg, doc) == FormatErrc::UnresolvedReference);
  CHECK(reg.format_ids() == before);
  CHECK_THROWS_AS(reg.get_type_set("FRESH"), FormatError);
  CHECK(code_of(reg, "[typeset FRESH]\ntype = Z9 U+0039 9\n[typeset LATIN]\ntype = Q U+0051 Q\n") ==
        FormatErrc::DuplicateDefinition);
  CHECK_THROWS_AS(reg.get_type_set("FRESH"), FormatError);
}

TEST_CASE("definitions that parse but make no sense are rejected") {
  FormatRegistry reg;
  std::string head = "[typeset S]\ntype = A U+0041 A\n[font F]\nfamily = F\nsizePt = 2\ncellHeight = 2\nascent = 2\ncovers = S\n";
  CHECK(code_of(reg, head + "glyph A {\n#\n}\n") == FormatErrc::InvalidDefinition);
  CHECK(code_of(reg, head + "glyph A {\n.\n.\n}\n") == FormatErrc::InvalidDefinition);
  CHECK(code_of(reg, head + "glyph A {\n#\n#\n}\nglyph B {\n#\n#\n}\n") == FormatErrc::UnresolvedReference);
  CHECK(code_of(reg, "[typeset S]\ntype = A U+0041 A\ntype = A U+0042 B\n") == FormatErrc::InvalidDefinition);
  CHECK(code_of(reg, "[font G]\nderive = G\nfamily = G\ntransform = bold\n") == FormatErrc::InvalidDefinition);
  CHECK_THROWS_AS(reg.get_format("NOPE"), FormatError);
  try {
    reg.get_format("NOPE");
  } catch (const FormatError& e) {
    CHECK(e.code() == FormatErrc::UnknownFormat);
  }
}

TEST_CASE("serialization reproduces every builtin format") {
  auto reg = FormatRegistry::with_builtins();
  for (const auto& id : reg.format_ids()) {
    CAPTURE(id);
    std::string text = reg.serialize_format_definition(id);
    FormatRegistry fresh;
    fresh.parse_format_definition(text);
    const auto& a = reg.get_format(id);
    const auto& b = fresh.get_format(id);
    CHECK(a == b);
    for (const auto& fid : a.font_ids) CHECK(reg.get_font(fid) == fresh.get_font(fid));
    for (const auto& sid : a.type_set_ids) CHECK(reg.get_type_set(sid) == fresh.get_type_set(sid));
    if (a.rules_id) CHECK(reg.get_rules(*a.rules_id) == fresh.get_rules(*a.rules_id));
    CHECK(fresh.serialize_format_definition(id) == text);
  }
}

TEST_CASE("alphabet folding and merges") {
  auto reg = FormatRegistry::with_builtins();
  auto plain = reg.alphabet("PLAIN_LATIN");
  CHECK(plain.case_sensitive());
  CHECK(plain.type_for_code_point(U'a') == std::optional<std::string>("LATIN_A_LOWER"));
  CHECK(plain.type_for_code_point(U'A') == std::optional<std::string>("LATIN_A_UPPER"));
  CHECK(plain.is_separator("SPACE"));
  CHECK_FALSE(plain.type_for_code_point(U'一'));

  auto epi = reg.alphabet("LATIN_EPIGRAPHIC");
  CHECK_FALSE(epi.case_sensitive());
  CHECK(epi.type_for_code_point(U'a') == std::optional<std::string>("LATIN_A_UPPER"));
  CHECK(epi.type_for_code_point(U'U') == std::optional<std::string>("UV"));
  CHECK(epi.type_for_code_point(U'v') == std::optional<std::string>("UV"));
  CHECK(epi.effective("LATIN_U_UPPER") == epi.effective("LATIN_V_UPPER"));
  CHECK(epi.render_type("UV") == std::optional<std::string>("LATIN_V_UPPER"));
  CHECK(epi.code_point_for("UV") == std::optional<char32_t>(U'V'));
  CHECK_FALSE(epi.contains("LATIN_U_UPPER"));
  CHECK(epi.fold(U'Q') == U'q');
  CHECK(plain.fold(U'Q') == U'Q');
}

TEST_CASE("overlapping type sets are reported") {
  FormatRegistry reg;
  reg.parse_format_definition(kTiny);
  reg.parse_format_definition(
      "[typeset DUP]\ntype = T_X U+0058 X\n[format TWO]\ntypesets = TINYSET, DUP\nfonts = TF\nrules = TR\n");
  auto rep = reg.validate_format("TWO");
  REQUIRE(rep.disjointness.size() == 1);
  CHECK(rep.disjointness[0] == DisjointnessViolation{"T_X", "TINYSET", "DUP"});
  CHECK_FALSE(rep.valid());
}

TEST_CASE("a planted collision is found") {
  FormatRegistry reg;
  std::string doc = kTiny;
  auto pos = doc.find("###\n#.#\n###");
  doc.replace(pos, 11, "#.#\n.#.\n#.#");
  reg.parse_format_definition(doc);
  auto rep = reg.validate_format("TINY");
  REQUIRE(rep.collisions.size() == 1);
  CHECK(rep.collides("T_X", "T_O"));
  CHECK(rep.collides("T_O", "T_X"));
}

TEST_CASE("glyph signature agrees with the brute-force oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 14), bit(0, 2), den(1, 12), asc(0, 14);
  for (int iter = 0; iter < 400; ++iter) {
    Bitmap g(dim(rng), dim(rng));
    for (auto& b : g.bits) b = bit(rng) == 0;
    int q = den(rng);
    std::uniform_int_distribution<int> num(1, 2 * q);
    Rational s(num(rng), q);
    int ascent = asc(rng);
    CAPTURE(s.str());
    CHECK(glyph_signature(g, ascent, s) == oracle_signature(g, ascent, s));
  }
}

TEST_CASE("collision lists agree with the brute-force oracle") {
  auto reg = FormatRegistry::with_builtins();
  for (const char* id : {"SIZE_DEMO", "LATIN_EPIGRAPHIC", "PLAIN_LATIN"}) {
    for (auto s : {Rational(1, 1), Rational(1, 2), Rational(2, 3)}) {
      CAPTURE(id);
      CAPTURE(s.str());
      auto rep = reg.validate_format(id, s);
      std::set<GlyphCollision> got(rep.collisions.begin(), rep.collisions.end());
      CHECK(got.size() == rep.collisions.size());
      CHECK(got == oracle_collisions(reg, id, s));
    }
  }
}

TEST_CASE("size demo collides up to half resolution and is monotone") {
  auto reg = FormatRegistry::with_builtins();
  bool seen_distinct = false;
  for (int k = 1; k <= 720; ++k) {
    Rational r(k, 720);
    bool collides = reg.validate_format("SIZE_DEMO", r).collides("DIGIT_1", "LATIN_L_LOWER");
    CAPTURE(k);
    CHECK(collides == (2 * k <= 720));
    if (!collides) seen_distinct = true;
    CHECK_FALSE((seen_distinct && collides));
  }
}

TEST_CASE("derived cuts follow their transforms") {
  auto reg = FormatRegistry::with_builtins();
  const auto& mono = reg.get_font("MONO");
  const auto& bold = reg.get_font("MONO_BOLD");
  const auto& under = reg.get_font("MONO_UNDERLINE");
  const auto& sans = reg.get_font("SANS");
  const auto& serif = reg.get_font("SERIF");
  CHECK(bold.style.bold);
  CHECK(under.style.underline);
  CHECK(reg.get_font("SERIF_ITALIC").style.italic);
  CHECK(sans.cell_height == mono.cell_height + 1);
  CHECK(serif.cell_height == mono.cell_height + 1);
  for (const auto& [t, g] : mono.glyphs) {
    CAPTURE(t);
    const auto& b = bold.glyphs.at(t);
    REQUIRE(b.width == g.width + 1);
    for (int y = 0; y < g.height; ++y)
      for (int x = 0; x < b.width; ++x) {
        bool left = x > 0 && g.at(x - 1, y);
        bool here = x < g.width && g.at(x, y);
        CHECK(b.at(x, y) == (left || here));
      }
    const auto& u = under.glyphs.at(t);
    auto cols = ink_columns(g);
    for (int x = cols->first; x <= cols->second; ++x) CHECK(u.at(x, g.height - 1));
    CHECK(serif.glyphs.at(t).width == g.width + 2);
  }
}

TEST_CASE("style collisions agree with the brute-force oracle") {
  auto reg = FormatRegistry::with_builtins();
  for (auto s : {Rational(1, 1), Rational(2, 3), Rational(1, 2)}) {
    CAPTURE(s.str());
    const auto& fmt = reg.get_format("FONT_AWARE_LATIN");
    std::set<GlyphCollision> expected;
    for (std::size_t i = 0; i < fmt.font_ids.size(); ++i)
      for (std::size_t j = i + 1; j < fmt.font_ids.size(); ++j) {
        const auto& a = reg.get_font(fmt.font_ids[i]);
        const auto& b = reg.get_font(fmt.font_ids[j]);
        // every cut of this format differs in family or a style flag
        for (const auto& [t, g] : a.glyphs) {
          if (!b.glyphs.count(t)) continue;
          if (!(oracle_signature(g, a.ascent, s) == oracle_signature(b.glyphs.at(t), b.ascent, s))) continue;
          GlyphCollision c{t, a.id, t, b.id};
          if (b.id < a.id) std::swap(c.font_a, c.font_b);
          expected.insert(c);
        }
      }
    auto rep = reg.validate_format("FONT_AWARE_LATIN", s);
    CHECK(std::set<GlyphCollision>(rep.style_collisions.begin(), rep.style_collisions.end()) == expected);
    if (s == Rational(1, 1)) CHECK(expected.empty());
  }
  // the same fonts carry no style distinction under the plain format
  CHECK(reg.validate_format("PLAIN_LATIN", Rational(1, 2)).style_collisions.empty());
}

TEST_CASE("a planted style collision is found") {
  FormatRegistry reg;
  std::string doc = kTiny;
  doc += "[font TF_UNDER]\nderive = TF\nfamily = TF\ntransform = underline\n";
  doc += "[format TINY_STYLED]\ntypesets = TINYSET\nfonts = TF, TF_UNDER\nrules = TR\nmeaningful = underline\n";
  reg.parse_format_definition(doc);
  // T_O already has ink on its last row, so underlining changes nothing
  auto rep = reg.validate_format("TINY_STYLED");
  REQUIRE(rep.style_collisions.size() == 1);
  CHECK(rep.style_collisions[0] == GlyphCollision{"T_O", "TF", "T_O", "TF_UNDER"});
  CHECK(rep.collisions.empty());
  CHECK_FALSE(rep.valid());
}
