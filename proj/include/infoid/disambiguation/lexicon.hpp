#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "infoid/core/error.hpp"

namespace infoid {

enum class DisambiguationErrc { MissingWordStructure, LexiconSyntax, GrammarSyntax, InvalidGrammar };

using DisambiguationError = CodedError<DisambiguationErrc>;

struct Lexicon {
  std::string id;
  std::set<std::string> words;  // UTF-8 tokens
};

struct GrammarRules {
  std::string id;
  std::set<std::pair<std::string, std::string>> allowed;   // (tag, next tag)
  std::map<std::string, std::set<std::string>> pos;        // token -> tags
};

// One token per line; blank lines and lines starting with '#' are skipped.
Lexicon parse_lexicon(std::string_view text, std::string id = "lexicon");

// `pos <token> <tag>[,<tag>...]` and `allow <tagA> <tagB>` lines; blank lines
// and '#' comments are skipped.
GrammarRules parse_grammar(std::string_view text, std::string id = "grammar");

// Throws InvalidGrammar if the grammar tags a token the lexicon lacks.
void check_grammar(const GrammarRules& grammar, const Lexicon& lexicon);

}  // namespace infoid
