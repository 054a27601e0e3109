#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "infoid/interpretation/errors.hpp"

namespace infoid {

struct HtmlNode {
  std::string tag;      // empty for a text node
  std::u32string text;  // text nodes only
  std::map<std::string, std::string> attrs;
  std::vector<HtmlNode> children;
  int line = 1;

  bool is_text() const { return tag.empty(); }
};

// Strict parser for html, head, title, body, h1-h6, p, a, b, i, u, pre, br.
// DOCTYPE and comments are skipped; the document must be one html element.
HtmlNode parse_html(std::u32string_view text);

// Collapses whitespace runs to one space and trims at block boundaries and
// around br; pre keeps its text (minus a newline right after the tag).
void normalize_whitespace(HtmlNode& root);

bool is_html_block(std::string_view tag);

}  // namespace infoid
