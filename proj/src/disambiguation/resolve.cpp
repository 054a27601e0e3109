#include "infoid/disambiguation/resolve.hpp"

#include <algorithm>
#include <optional>

#include "infoid/interpretation/text_decode.hpp"

namespace infoid {

namespace {

struct WordRef {
  NodePath path;
  Container* word;
};

void collect_words(Container& c, NodePath& path, std::vector<WordRef>& out) {
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    Container* sub = c.children[i].container();
    if (!sub) continue;
    path.push_back(i);
    if (sub->kind == "word") out.push_back({path, sub});
    else collect_words(*sub, path, out);
    path.pop_back();
  }
}

std::vector<WordRef> words_of(SymbolStructure& s, const FormatRegistry& registry) {
  if (!registry.get_format(s.format_id).meaningful.word_separators)
    throw DisambiguationError(DisambiguationErrc::MissingWordStructure,
                              "format " + s.format_id + " does not keep word separators");
  std::vector<WordRef> out;
  NodePath p;
  collect_words(s.root, p, out);
  if (out.empty() && s.occurrence_count() > 0)
    throw DisambiguationError(DisambiguationErrc::MissingWordStructure, "structure has no word containers");
  return out;
}

std::vector<SymbolOccurrence*> positions(Container& word) {
  std::vector<SymbolOccurrence*> out;
  for (auto& child : word.children)
    if (auto* o = child.occurrence()) out.push_back(o);
  return out;
}

class Spelling {
 public:
  explicit Spelling(Alphabet alpha) : alpha_(std::move(alpha)) {}

  // Text of a type sequence, folded for lookup; nullopt if a type has no character.
  std::optional<std::string> text(const std::vector<std::string>& types) const {
    std::u32string s;
    for (const auto& t : types) {
      auto cp = alpha_.code_point_for(t);
      if (!cp) return std::nullopt;
      s += alpha_.fold(*cp);
    }
    return utf8_encode(s);
  }

  std::string fold(const std::string& utf8) const {
    std::u32string s = decode_bytes(utf8, Charset::Utf8).text;
    for (auto& c : s) c = alpha_.fold(c);
    return utf8_encode(s);
  }

  std::optional<std::vector<std::string>> types(const std::string& utf8) const {
    std::vector<std::string> out;
    for (char32_t c : decode_bytes(utf8, Charset::Utf8).text) {
      auto t = alpha_.type_for_code_point(c);
      if (!t) return std::nullopt;
      out.push_back(*t);
    }
    return out;
  }

 private:
  Alphabet alpha_;
};

struct WordState {
  std::vector<std::vector<std::string>> candidates;  // type sequences
  std::vector<std::string> texts;                    // folded spellings, parallel to candidates
  bool known = false;      // every position is readable
  bool ambiguous = false;  // input had more than one expansion
  bool resolvable = false; // lexicon kept at least one expansion
  bool by_grammar = false;
};

bool fits(const std::string& text, const WordState* left, const WordState* right, const GrammarRules& g) {
  auto tags = g.pos.find(text);
  if (tags == g.pos.end()) return true;
  auto neighbour_tags = [&](const WordState* n) -> const std::set<std::string>* {
    if (!n || !n->known || n->candidates.size() != 1) return nullptr;
    auto it = g.pos.find(n->texts.front());
    return it == g.pos.end() ? nullptr : &it->second;
  };
  const auto* lt = neighbour_tags(left);
  const auto* rt = neighbour_tags(right);
  for (const auto& t : tags->second) {
    bool ok_left = !lt || std::any_of(lt->begin(), lt->end(), [&](const std::string& a) { return g.allowed.count({a, t}); });
    bool ok_right = !rt || std::any_of(rt->begin(), rt->end(), [&](const std::string& b) { return g.allowed.count({t, b}); });
    if (ok_left && ok_right) return true;
  }
  return false;
}

}  // namespace

SymbolStructure resolve(const SymbolStructure& s, const Lexicon& lexicon, const GrammarRules* grammar,
                        const FormatRegistry& registry) {
  SymbolStructure out = s;
  auto words = words_of(out, registry);
  Alphabet alpha = registry.alphabet(out.format_id);
  Spelling spell(alpha);
  std::set<std::string> lex;
  for (const auto& w : lexicon.words) lex.insert(spell.fold(w));

  std::vector<WordState> state(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto pos = positions(*words[i].word);
    WordState& st = state[i];
    std::size_t product = 1;
    bool undefined = false;
    for (auto* o : pos) {
      undefined = undefined || o->is_undefined();
      product = std::min(product * std::max<std::size_t>(1, o->alternatives.size()), kMaxExpansions + 1);
    }
    if (undefined) continue;
    st.ambiguous = product > 1;
    if (product > kMaxExpansions) {
      out.provenance.push_back({path_string(words[i].path), "word", "too-many-expansions", {}});
      continue;
    }
    // Odometer over the alternative sets.
    std::vector<std::size_t> idx(pos.size(), 0);
    std::vector<std::vector<std::string>> all;
    while (true) {
      std::vector<std::string> seq;
      for (std::size_t k = 0; k < pos.size(); ++k) seq.push_back(pos[k]->alternatives[idx[k]]);
      all.push_back(std::move(seq));
      std::size_t k = 0;
      while (k < pos.size() && ++idx[k] == pos[k]->alternatives.size()) idx[k++] = 0;
      if (k == pos.size()) break;
    }
    for (auto& seq : all) {
      auto text = spell.text(seq);
      if (!text) continue;
      if (!st.ambiguous || lex.count(*text)) {
        st.candidates.push_back(seq);
        st.texts.push_back(*text);
      }
    }
    st.known = !st.candidates.empty();
    st.resolvable = st.ambiguous && st.known;
    if (st.ambiguous && !st.known)
      out.provenance.push_back({path_string(words[i].path), "word", "unresolvable", {}});
  }

  if (grammar) {
    GrammarRules folded{grammar->id, grammar->allowed, {}};
    for (const auto& [token, tags] : grammar->pos) folded.pos[spell.fold(token)].insert(tags.begin(), tags.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < state.size(); ++i) {
        WordState& st = state[i];
        if (!st.resolvable || st.candidates.size() < 2) continue;
        const WordState* left = i > 0 ? &state[i - 1] : nullptr;
        const WordState* right = i + 1 < state.size() ? &state[i + 1] : nullptr;
        WordState kept = st;
        kept.candidates.clear();
        kept.texts.clear();
        for (std::size_t c = 0; c < st.candidates.size(); ++c)
          if (fits(st.texts[c], left, right, folded)) {
            kept.candidates.push_back(st.candidates[c]);
            kept.texts.push_back(st.texts[c]);
          }
        if (!kept.candidates.empty() && kept.candidates.size() < st.candidates.size()) {
          kept.by_grammar = true;
          st = std::move(kept);
          changed = true;
        }
      }
    }
  }

  for (std::size_t i = 0; i < words.size(); ++i) {
    const WordState& st = state[i];
    if (!st.resolvable) continue;
    auto pos = positions(*words[i].word);
    for (std::size_t k = 0; k < pos.size(); ++k) {
      std::vector<std::string> alts;
      for (const auto& seq : st.candidates) alts.push_back(seq[k]);
      pos[k]->alternatives = SymbolOccurrence::of(std::move(alts)).alternatives;
    }
    out.provenance.push_back({path_string(words[i].path), st.by_grammar ? "grammar" : "word",
                              st.candidates.size() == 1 ? "resolved" : "narrowed", st.texts});
  }
  return out;
}

SymbolStructure resolve_undefined(const SymbolStructure& s, const Lexicon& lexicon, const FormatRegistry& registry) {
  SymbolStructure out = s;
  auto words = words_of(out, registry);
  Alphabet alpha = registry.alphabet(out.format_id);
  Spelling spell(alpha);

  for (auto& w : words) {
    auto pos = positions(*w.word);
    if (std::none_of(pos.begin(), pos.end(), [](const SymbolOccurrence* o) { return o->is_undefined(); })) continue;
    std::set<std::vector<std::string>> fills;
    std::vector<std::string> texts;
    for (const auto& entry : lexicon.words) {
      auto seq = spell.types(entry);
      if (!seq || seq->size() != pos.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < pos.size() && ok; ++k) {
        const auto& alts = pos[k]->alternatives;
        ok = pos[k]->is_undefined() ? !alpha.is_separator((*seq)[k])
                                    : std::binary_search(alts.begin(), alts.end(), (*seq)[k]);
      }
      if (ok && fills.insert(*seq).second) texts.push_back(spell.fold(entry));
    }
    std::string path = path_string(w.path);
    if (fills.size() != 1) {
      out.provenance.push_back({path, "wildcard", fills.empty() ? "unresolvable" : "ambiguous-completion", texts});
      continue;
    }
    // A filled-in symbol takes the style its readable neighbours agree on.
    std::optional<StyleAttrs> shared;
    bool agree = true;
    for (const auto* o : pos) {
      if (o->is_undefined()) continue;
      if (!shared) shared = o->style;
      else agree = agree && *shared == o->style;
    }
    const auto& fill = *fills.begin();
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (!pos[k]->is_undefined()) continue;
      pos[k]->alternatives = {fill[k]};
      if (pos[k]->style.empty() && shared && agree) pos[k]->style = *shared;
    }
    out.provenance.push_back({path, "wildcard", "resolved", texts});
  }
  out.refresh_status();
  return out;
}

}  // namespace infoid
