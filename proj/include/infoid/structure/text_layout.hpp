#pragma once

#include <vector>

#include <string>

#include "infoid/format/alphabet.hpp"
#include "infoid/format/types.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

// One visual line of occurrences. SPACE runs are collapsed to one SPACE
// occurrence and never lead or trail.
struct TextLine {
  bool new_paragraph = false;
  std::vector<SymbolOccurrence> items;
  friend bool operator==(const TextLine&, const TextLine&) = default;
};

// Incrementally collects occurrences into normalized lines.
class LineCollector {
 public:
  void add(const SymbolOccurrence& occ);
  void end_line();
  // The next non-empty line starts a paragraph.
  void paragraph_break();
  std::vector<TextLine> finish();

 private:
  std::vector<TextLine> lines_;
  TextLine cur_;
  bool pending_paragraph_ = false;
};

bool is_space(const SymbolOccurrence& occ);

// Reading-order lines of any structure. Block containers (paragraph, title,
// h1-h6, p, pre, page) separate paragraphs; line containers and br end a line;
// every other container is transparent.
std::vector<TextLine> flatten_to_lines(const Container& root);

// The text shape shared by decoders and the recognizer:
// root > [paragraph >] line > (word > occurrences | SPACE)*. Paragraph and
// word containers appear only when the format marks them meaningful.
Container build_text_container(const std::vector<TextLine>& lines, const MeaningfulFlags& meaningful,
                               std::string root_kind = "document");

// Reading-order text for reports: ambiguous occurrences print as {1|l},
// UNDEFINED as '?', paragraphs are separated by a blank line.
std::string display_text(const SymbolStructure& s, const Alphabet& alphabet);

}  // namespace infoid
