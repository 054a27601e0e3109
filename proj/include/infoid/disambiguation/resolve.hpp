#pragma once

#include "infoid/disambiguation/lexicon.hpp"
#include "infoid/format/registry.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

inline constexpr std::size_t kMaxExpansions = 1000;

// Narrows ambiguous occurrences word by word: expansions of the alternative
// sets are kept if the lexicon has them, then, with a grammar, if their
// part-of-speech tags fit the resolved neighbouring words. Alternatives are
// only ever removed.
SymbolStructure resolve(const SymbolStructure& s, const Lexicon& lexicon, const GrammarRules* grammar,
                        const FormatRegistry& registry);

// Treats each UNDEFINED occurrence as a one-symbol wildcard within its word and
// fills it in when exactly one lexicon word fits.
SymbolStructure resolve_undefined(const SymbolStructure& s, const Lexicon& lexicon, const FormatRegistry& registry);

}  // namespace infoid
