#include "infoid/disambiguation/lexicon.hpp"

#include <sstream>

namespace infoid {

namespace {

template <typename F>
void each_line(std::string_view text, F&& f) {
  int lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    f(line, lineno);
  }
}

}  // namespace

Lexicon parse_lexicon(std::string_view text, std::string id) {
  Lexicon lex{std::move(id), {}};
  each_line(text, [&](const std::string& line, int lineno) {
    std::istringstream in(line);
    std::string token, extra;
    in >> token;
    if (in >> extra)
      throw DisambiguationError(DisambiguationErrc::LexiconSyntax,
                                "lexicon line " + std::to_string(lineno) + ": one token per line");
    lex.words.insert(token);
  });
  if (lex.words.empty()) throw DisambiguationError(DisambiguationErrc::LexiconSyntax, "lexicon is empty");
  return lex;
}

GrammarRules parse_grammar(std::string_view text, std::string id) {
  GrammarRules g{std::move(id), {}, {}};
  each_line(text, [&](const std::string& line, int lineno) {
    std::istringstream in(line);
    std::string kind, a, b, extra;
    in >> kind >> a >> b;
    auto fail = [&](const std::string& msg) {
      throw DisambiguationError(DisambiguationErrc::GrammarSyntax, "grammar line " + std::to_string(lineno) + ": " + msg);
    };
    if (a.empty() || b.empty() || (in >> extra)) fail("expected three fields");
    if (kind == "pos") {
      std::istringstream tags(b);
      std::string tag;
      while (std::getline(tags, tag, ','))
        if (!tag.empty()) g.pos[a].insert(tag);
      if (!g.pos.count(a)) fail("no tags");
    } else if (kind == "allow") {
      g.allowed.emplace(a, b);
    } else {
      fail("unknown directive '" + kind + "'");
    }
  });
  return g;
}

void check_grammar(const GrammarRules& grammar, const Lexicon& lexicon) {
  for (const auto& [token, tags] : grammar.pos)
    if (!lexicon.words.count(token))
      throw DisambiguationError(DisambiguationErrc::InvalidGrammar, "grammar tags '" + token + "' which is not in the lexicon");
}

}  // namespace infoid
