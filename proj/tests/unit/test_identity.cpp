#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "generators.hpp"
#include "infoid/core/digest.hpp"
#include "infoid/identity/canonical.hpp"
#include "infoid/identity/identity.hpp"
#include "infoid/identity/migration.hpp"
#include "infoid/interpretation/digital.hpp"
#include "infoid/projection/carrier.hpp"
#include "infoid/projection/projection.hpp"

using namespace infoid;
using namespace infoid::testing;

namespace {

// Identity decided without the canonical form: overlaps are unordered pairs,
// analog parts count by region only.
bool oracle_same(const SymbolStructure& a, const SymbolStructure& b) {
  auto pairs = [](const SymbolStructure& s) {
    std::set<std::pair<NodePath, NodePath>> out;
    for (const auto& o : s.overlaps) out.insert(std::minmax(o.a, o.b));
    return out;
  };
  auto regions = [](const SymbolStructure& s) {
    std::set<Region> out;
    for (const auto& p : s.analog_parts) out.insert(p.region);
    return out;
  };
  return a.format_id == b.format_id && a.root == b.root && pairs(a) == pairs(b) && regions(a) == regions(b) &&
         a.status == b.status;
}

// One small random edit that changes identity.
SymbolStructure mutate(SymbolStructure s, std::mt19937& rng) {
  std::vector<Container*> containers;
  std::vector<SymbolOccurrence*> occs;
  std::function<void(Container&)> walk = [&](Container& c) {
    containers.push_back(&c);
    for (auto& ch : c.children) {
      if (auto* sub = ch.container()) walk(*sub);
      else occs.push_back(ch.occurrence());
    }
  };
  walk(s.root);
  int kind = std::uniform_int_distribution<int>(0, 4)(rng);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  if (kind == 0 || occs.empty()) {
    Container* c = containers[pick(containers.size())];
    c->attrs["mutated"] = c->attrs.count("mutated") ? c->attrs["mutated"] + "x" : "1";
  } else if (kind == 1) {
    SymbolOccurrence* o = occs[pick(occs.size())];
    auto alts = o->alternatives;
    alts.push_back("T_NEW");
    *o = SymbolOccurrence::of(alts, o->style);
  } else if (kind == 2) {
    SymbolOccurrence* o = occs[pick(occs.size())];
    o->style["bold"] = o->style.count("bold") ? "" : "1";
    if (o->style["bold"].empty()) o->style.erase("bold");
  } else if (kind == 3) {
    Container* c = containers[pick(containers.size())];
    c->kind += "_";
  } else {
    s.analog_parts.push_back({{999, 999, 1, 1}, std::nullopt});
  }
  s.refresh_status();
  return s;
}

}  // namespace

TEST_CASE("escaping round trips arbitrary bytes") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> byte(0, 255), len(0, 30);
  for (int iter = 0; iter < 500; ++iter) {
    std::string raw;
    for (int n = len(rng); n > 0; --n) raw += static_cast<char>(byte(rng));
    std::string esc = canonical_escape(raw);
    for (char c : esc) CHECK((c != ' ' && c != '\n' && c != '=' && c != ',' && c != '{' && c != '}'));
    CHECK(canonical_unescape(esc) == raw);
  }
  CHECK_THROWS_AS(canonical_unescape("%4"), IdentityError);
  CHECK_THROWS_AS(canonical_unescape("a b"), IdentityError);
}

TEST_CASE("canonical forms parse back to the same identity") {
  std::mt19937 rng(8);
  for (int iter = 0; iter < 300; ++iter) {
    auto s = random_free_structure(rng, 25);
    auto cf = canonicalize(s);
    CHECK(cf.digest == sha256_hex(cf.bytes));
    auto back = parse_canonical(cf.bytes);
    CHECK(canonicalize(back) == cf);
    CHECK(oracle_same(back, s));
  }
}

TEST_CASE("canonical form ignores order where order carries nothing") {
  SymbolStructure a;
  a.format_id = "F";
  auto& c = a.root.add_container("sec");
  c.attrs = {{"z", "1"}, {"a", "2"}};
  c.add(SymbolOccurrence::of({"T_B", "T_A"}, {{"y", "1"}, {"b", "0"}}));
  c.add(SymbolOccurrence("T_C"));
  a.overlaps = {{{0, 0}, {0, 1}}};
  a.analog_parts = {{{5, 5, 2, 2}, "aaaa"}, {{1, 1, 2, 2}, std::nullopt}};
  a.provenance.push_back({"/0/0", "word", "resolved", {"x"}});

  SymbolStructure b = a;
  b.overlaps = {{{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}};
  std::swap(b.analog_parts[0], b.analog_parts[1]);
  b.analog_parts[0].payload_digest = "bbbb";
  b.provenance.clear();
  CHECK(canonicalize(a) == canonicalize(b));
  CHECK(identical(a, b).value == Verdict::Identical);
  CHECK(canonicalize(a).bytes ==
        "ICSTRUCT 1 F\nNODE 0 document\nNODE 1 sec a=2 z=1\nOCC 2 {T_A,T_B} b=0 y=1\nOCC 2 {T_C}\n"
        "OVERLAP 0.0 0.1\nANALOG 1,1,2,2 -\nANALOG 5,5,2,2 -\nSTATUS Complete\n");
}

TEST_CASE("golden canonical forms") {
  auto reg = FormatRegistry::with_builtins();
  auto plain = digital_interpret(DigitalObject{"hi", slurp(fixture_path("canonical/hi.txt")), "text/plain"},
                                 reg.get_format("PLAIN_LATIN"), reg);
  CHECK(canonicalize(plain).bytes == slurp(fixture_path("canonical/hi_plain.canon")));
  auto html = digital_interpret(DigitalObject{"tiny", slurp(fixture_path("canonical/tiny.html")), "text/html"},
                                reg.get_format("HTML_DOC"), reg);
  CHECK(canonicalize(html).bytes == slurp(fixture_path("canonical/tiny_html.canon")));
}

TEST_CASE("identity is an equivalence that matches the oracle") {
  std::mt19937 rng(12);
  std::vector<SymbolStructure> pool;
  for (int i = 0; i < 30; ++i) {
    auto s = random_free_structure(rng, 12);
    s.format_id = "F";
    pool.push_back(s);
    pool.push_back(parse_canonical(canonicalize(s).bytes));
    pool.push_back(mutate(s, rng));
  }
  int comparisons = 0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) {
      auto v = identical(pool[i], pool[j]);
      bool undefined = pool[i].status == StructureStatus::Undefined || pool[j].status == StructureStatus::Undefined;
      if (undefined) {
        CHECK(v.value == Verdict::Undefined);
      } else {
        CHECK((v.value == Verdict::Identical) == oracle_same(pool[i], pool[j]));
        CHECK(v.value == identical(pool[j], pool[i]).value);
      }
      CHECK(v.diff.empty() == (canonicalize(pool[i]) == canonicalize(pool[j])));
      ++comparisons;
    }
  CHECK(comparisons >= 1000);
}

TEST_CASE("diffs name the changed attribute") {
  SymbolStructure a;
  a.format_id = "FONT_AWARE_LATIN";
  auto& line = a.root.add_container("line");
  line.add(SymbolOccurrence("LATIN_A_UPPER", {{"fontFamily", "MONO"}}));
  line.add(SymbolOccurrence("LATIN_B_UPPER", {{"fontFamily", "MONO"}}));
  SymbolStructure b = a;
  std::get<Container>(b.root.children[0].value).children[1].occurrence()->style["italic"] = "1";
  auto v = identical(a, b);
  CHECK(v.value == Verdict::Different);
  REQUIRE(v.diff.size() == 1);
  CHECK(v.diff[0] == DiffEntry{"/0/1#italic", "<absent>", "1"});

  SymbolStructure c = a;
  std::get<Container>(c.root.children[0].value).children.pop_back();
  auto vc = identical(a, c);
  REQUIRE(vc.diff.size() == 1);
  CHECK(vc.diff[0].path == "/0/1");
  CHECK(vc.diff[0].right == "<absent>");

  SymbolStructure d = a;
  d.format_id = "PLAIN_LATIN";
  try {
    identical(a, d);
    FAIL("compared");
  } catch (const IdentityError& e) {
    CHECK(e.code() == IdentityErrc::FormatMismatch);
  }
}

TEST_CASE("canonical syntax errors") {
  auto code = [](const std::string& text) {
    try {
      parse_canonical(text);
    } catch (const IdentityError& e) {
      return e.code();
    }
    return IdentityErrc::FormatMismatch;
  };
  CHECK(code("") == IdentityErrc::CanonicalSyntax);
  CHECK(code("ICSTRUCT 2 F\nNODE 0 d\nSTATUS Complete\n") == IdentityErrc::CanonicalSyntax);
  CHECK(code("ICSTRUCT 1 F\nNODE 0 d\n") == IdentityErrc::CanonicalSyntax);
  CHECK(code("ICSTRUCT 1 F\nNODE 0 d\nNODE 2 x\nSTATUS Complete\n") == IdentityErrc::CanonicalSyntax);
  CHECK(code("ICSTRUCT 1 F\nNODE 0 d\nSTATUS Finished\n") == IdentityErrc::CanonicalSyntax);
  CHECK(code("ICSTRUCT 1 F\nNODE 0 d\nSTATUS Complete\nNODE 1 x\n") == IdentityErrc::CanonicalSyntax);
}

TEST_CASE("incorporation") {
  auto reg = FormatRegistry::with_builtins();
  const auto& fmt = reg.get_format("PLAIN_LATIN");
  DigitalObject ascii{"a", "Same text\n", "text/plain"};
  DigitalObject utf8{"u", "Same text\n", "text/plain; charset=utf-8"};
  DigitalObject other{"o", "Same test\n", "text/plain"};
  auto s = digital_interpret(ascii, fmt, reg);
  CHECK(incorporates(utf8, s, fmt, reg));
  CHECK_FALSE(incorporates(other, s, fmt, reg));
  CHECK_FALSE(ascii == utf8);
}

TEST_CASE("migration chains report the first divergence") {
  auto reg = FormatRegistry::with_builtins();
  const auto& fmt = reg.get_format("PLAIN_LATIN");
  DigitalObject obj{"source", "Keep this text\n", "text/plain"};
  auto carrier = write_carrier(digital_interpret(obj, fmt, reg), fmt, reg.get_font("SERIF"), 0, reg, "print");
  auto scan = physical_project(carrier, daylight_scan());

  auto ok = verify_migration({obj, CarrierReading{carrier, daylight_scan()}, scan}, fmt, reg);
  CHECK(ok.verdict.value == Verdict::Identical);
  REQUIRE(ok.chain.size() == 3);
  CHECK(ok.chain[0].digest == ok.chain[2].digest);
  CHECK(ok.chain[1].artifact_id == "print");
  CHECK_FALSE(ok.first_divergence.has_value());

  auto worn = corrupt(carrier, Region{carrier.glyphs[0].x, 0, 2, carrier.height}, "worn");
  DigitalObject changed{"edit", "Keep that text\n", "text/plain"};
  auto bad = verify_migration({obj, changed, CarrierReading{worn, daylight_scan()}}, fmt, reg);
  CHECK(bad.verdict.value == Verdict::Different);
  CHECK(bad.first_divergence == std::optional<std::size_t>(1));
  CHECK_FALSE(bad.verdict.diff.empty());
  CHECK(bad.chain[2].status == StructureStatus::Undefined);

  auto undefined_first = verify_migration({obj, CarrierReading{worn, daylight_scan()}, changed}, fmt, reg);
  CHECK(undefined_first.verdict.value == Verdict::Undefined);
  CHECK(undefined_first.first_divergence == std::optional<std::size_t>(1));

  // infrared reads through the damage
  auto ir = verify_migration({obj, CarrierReading{worn, infrared_scan()}}, fmt, reg);
  CHECK(ir.verdict.value == Verdict::Identical);

  try {
    verify_migration({obj, DigitalObject{"bin", "\x01\x02", "application/octet-stream"}}, fmt, reg);
    FAIL("extracted");
  } catch (const MigrationError& e) {
    CHECK(e.index() == 1);
    CHECK(std::string(e.what()).rfind("chain step 2:", 0) == 0);
  }
}
