#include "infoid/structure/text_layout.hpp"

#include <set>

#include "infoid/interpretation/text_decode.hpp"

namespace infoid {

bool is_space(const SymbolOccurrence& occ) {
  return occ.alternatives.size() == 1 && occ.alternatives.front() == kSpaceType;
}

void LineCollector::add(const SymbolOccurrence& occ) {
  if (is_space(occ)) {
    if (cur_.items.empty() || is_space(cur_.items.back())) return;
    cur_.items.push_back(SymbolOccurrence(std::string(kSpaceType)));
    return;
  }
  cur_.items.push_back(occ);
}

void LineCollector::end_line() {
  while (!cur_.items.empty() && is_space(cur_.items.back())) cur_.items.pop_back();
  if (!cur_.items.empty()) {
    cur_.new_paragraph = pending_paragraph_ || lines_.empty();
    pending_paragraph_ = false;
    lines_.push_back(std::move(cur_));
  }
  cur_ = TextLine{};
}

void LineCollector::paragraph_break() {
  end_line();
  if (!lines_.empty()) pending_paragraph_ = true;
}

std::vector<TextLine> LineCollector::finish() {
  end_line();
  pending_paragraph_ = false;
  return std::move(lines_);
}

namespace {

bool is_block(const std::string& kind) {
  static const std::set<std::string> blocks = {"paragraph", "title", "h1", "h2", "h3", "h4",
                                               "h5",        "h6",    "p",  "pre", "page"};
  return blocks.count(kind) != 0;
}

void flatten(const Container& c, LineCollector& out) {
  for (const auto& child : c.children) {
    if (const auto* occ = child.occurrence()) {
      out.add(*occ);
      continue;
    }
    const Container& sub = *child.container();
    if (sub.kind == "br") {
      out.end_line();
      continue;
    }
    bool block = is_block(sub.kind);
    if (block) out.paragraph_break();
    flatten(sub, out);
    if (block) out.paragraph_break();
    else if (sub.kind == "line") out.end_line();
  }
}

}  // namespace

std::vector<TextLine> flatten_to_lines(const Container& root) {
  LineCollector out;
  flatten(root, out);
  return out.finish();
}

Container build_text_container(const std::vector<TextLine>& lines, const MeaningfulFlags& meaningful, std::string root_kind) {
  Container root(std::move(root_kind));
  Container* para = nullptr;
  for (const auto& line : lines) {
    if (line.items.empty()) continue;
    Container* parent = &root;
    if (meaningful.paragraphs) {
      if (!para || line.new_paragraph) para = &root.add_container("paragraph");
      parent = para;
    }
    Container& l = parent->add_container("line");
    Container* word = nullptr;
    for (const auto& occ : line.items) {
      if (is_space(occ)) {
        word = nullptr;
        if (meaningful.word_separators) l.add(SymbolOccurrence(std::string(kSpaceType)));
        continue;
      }
      if (!meaningful.word_separators) {
        l.add(occ);
        continue;
      }
      if (!word) word = &l.add_container("word");
      word->add(occ);
    }
  }
  return root;
}

std::string display_text(const SymbolStructure& s, const Alphabet& alphabet) {
  auto glyph = [&](const std::string& type) {
    auto cp = alphabet.code_point_for(type);
    return cp ? utf8_encode(std::u32string(1, *cp)) : "[" + type + "]";
  };
  std::string out;
  bool first = true;
  for (const auto& line : flatten_to_lines(s.root)) {
    if (!first) out += line.new_paragraph ? "\n\n" : "\n";
    first = false;
    for (const auto& occ : line.items) {
      if (occ.is_undefined()) {
        out += '?';
      } else if (!occ.is_ambiguous()) {
        out += glyph(occ.type());
      } else {
        out += '{';
        for (std::size_t i = 0; i < occ.alternatives.size(); ++i) out += (i ? "|" : "") + glyph(occ.alternatives[i]);
        out += '}';
      }
    }
  }
  return out;
}

}  // namespace infoid
