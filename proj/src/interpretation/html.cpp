#include "infoid/interpretation/html.hpp"

#include <set>

#include "infoid/interpretation/text_decode.hpp"

namespace infoid {

namespace {

const std::set<std::string, std::less<>>& known_tags() {
  static const std::set<std::string, std::less<>> tags = {"html", "head", "title", "body", "h1", "h2", "h3", "h4",
                                                          "h5",   "h6",   "p",     "a",    "b",  "i",  "u",  "pre", "br"};
  return tags;
}

bool html_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f'; }

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

bool name_char(char32_t c) {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') || c == U'-' || c == U'_' ||
         c == U':';
}

class Parser {
 public:
  explicit Parser(std::u32string_view s) : s_(s) {}

  HtmlNode run() {
    HtmlNode doc;
    doc.tag = "#document";
    stack_.push_back(&doc);
    while (i_ < s_.size()) {
      if (s_[i_] == U'<') {
        markup();
      } else {
        text();
      }
    }
    if (stack_.size() > 1) fail("unclosed <" + stack_.back()->tag + ">");
    HtmlNode* root = nullptr;
    for (auto& c : doc.children) {
      if (c.is_text()) {
        for (char32_t ch : c.text)
          if (!html_space(ch)) fail_at(c.line, "text outside the html element");
        continue;
      }
      if (c.tag != "html" || root) fail_at(c.line, "document must consist of exactly one html element");
      root = &c;
    }
    if (!root) fail("no html element");
    return std::move(*root);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { fail_at(line_, msg); }
  [[noreturn]] void fail_at(int line, const std::string& msg) {
    throw InterpretationError(InterpretationErrc::HtmlParseError, "line " + std::to_string(line) + ": " + msg,
                              static_cast<std::size_t>(line));
  }

  bool starts_with_ci(std::u32string_view lit) const {
    if (s_.size() - i_ < lit.size()) return false;
    for (std::size_t k = 0; k < lit.size(); ++k)
      if (ascii_lower(s_[i_ + k]) != lit[k]) return false;
    return true;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i_ < s_.size(); ++k, ++i_)
      if (s_[i_] == U'\n') ++line_;
  }

  void skip_space() {
    while (i_ < s_.size() && html_space(s_[i_])) advance();
  }

  std::string name() {
    std::string out;
    while (i_ < s_.size() && name_char(s_[i_])) {
      out += static_cast<char>(ascii_lower(s_[i_]));
      advance();
    }
    return out;
  }

  void markup() {
    if (starts_with_ci(U"<!--")) {
      auto end = s_.find(U"-->", i_ + 4);
      if (end == std::u32string_view::npos) fail("unterminated comment");
      advance(end + 3 - i_);
      return;
    }
    if (starts_with_ci(U"<!doctype")) {
      auto end = s_.find(U'>', i_);
      if (end == std::u32string_view::npos) fail("unterminated doctype");
      advance(end + 1 - i_);
      return;
    }
    advance();  // '<'
    bool closing = i_ < s_.size() && s_[i_] == U'/';
    if (closing) advance();
    int tag_line = line_;
    std::string tag = name();
    if (tag.empty()) fail("expected a tag name after '<'");
    if (!known_tags().count(tag)) fail("unsupported element <" + tag + ">");
    if (closing) {
      skip_space();
      if (i_ >= s_.size() || s_[i_] != U'>') fail("malformed end tag </" + tag + ">");
      advance();
      if (tag == "br") fail("</br> is not allowed");
      if (stack_.size() < 2 || stack_.back()->tag != tag) fail("unexpected </" + tag + ">");
      stack_.pop_back();
      return;
    }
    HtmlNode node;
    node.tag = tag;
    node.line = tag_line;
    bool self_closing = false;
    while (true) {
      skip_space();
      if (i_ >= s_.size()) fail("unterminated <" + tag + ">");
      if (s_[i_] == U'>') {
        advance();
        break;
      }
      if (s_[i_] == U'/' && i_ + 1 < s_.size() && s_[i_ + 1] == U'>') {
        self_closing = true;
        advance(2);
        break;
      }
      std::string attr = name();
      if (attr.empty()) fail("malformed attribute in <" + tag + ">");
      skip_space();
      std::u32string value;
      if (i_ < s_.size() && s_[i_] == U'=') {
        advance();
        skip_space();
        if (i_ < s_.size() && (s_[i_] == U'"' || s_[i_] == U'\'')) {
          char32_t q = s_[i_];
          advance();
          auto end = s_.find(q, i_);
          if (end == std::u32string_view::npos) fail("unterminated attribute value");
          value = decode_entities(s_.substr(i_, end - i_));
          advance(end + 1 - i_);
        } else {
          std::size_t start = i_;
          while (i_ < s_.size() && !html_space(s_[i_]) && s_[i_] != U'>') advance();
          if (start == i_) fail("empty unquoted attribute value");
          value = decode_entities(s_.substr(start, i_ - start));
        }
      }
      node.attrs[attr] = utf8_encode(value);
    }
    if (self_closing && tag != "br") fail("<" + tag + "/> cannot be self-closing");
    stack_.back()->children.push_back(std::move(node));
    if (tag != "br") stack_.push_back(&stack_.back()->children.back());
  }

  void text() {
    int start_line = line_;
    std::size_t end = s_.find(U'<', i_);
    if (end == std::u32string_view::npos) end = s_.size();
    auto raw = s_.substr(i_, end - i_);
    std::u32string decoded = decode_entities(raw);
    advance(end - i_);
    HtmlNode t;
    t.text = std::move(decoded);
    t.line = start_line;
    const std::string& parent = stack_.back()->tag;
    if (parent == "html" || parent == "head") {
      for (char32_t c : t.text)
        if (!html_space(c)) fail_at(start_line, "text not allowed directly inside <" + parent + ">");
    }
    auto& kids = stack_.back()->children;
    if (!kids.empty() && kids.back().is_text()) {
      kids.back().text += t.text;
    } else {
      kids.push_back(std::move(t));
    }
  }

  std::u32string decode_entities(std::u32string_view raw) {
    std::u32string out;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      if (raw[k] != U'&') {
        out += raw[k];
        continue;
      }
      auto semi = raw.find(U';', k);
      if (semi == std::u32string_view::npos || semi - k > 10) fail("bare '&' (write &amp;)");
      std::u32string_view ent = raw.substr(k + 1, semi - k - 1);
      char32_t cp = 0;
      if (ent == U"amp") cp = U'&';
      else if (ent == U"lt") cp = U'<';
      else if (ent == U"gt") cp = U'>';
      else if (ent == U"quot") cp = U'"';
      else if (ent == U"apos") cp = U'\'';
      else if (ent == U"nbsp") cp = U' ';
      else if (ent.size() > 1 && ent[0] == U'#') {
        bool hex = ent[1] == U'x' || ent[1] == U'X';
        std::size_t from = hex ? 2 : 1;
        if (from >= ent.size()) fail("empty character reference");
        for (std::size_t d = from; d < ent.size(); ++d) {
          char32_t c = ent[d];
          int v = (c >= U'0' && c <= U'9') ? int(c - U'0')
                  : (hex && c >= U'a' && c <= U'f') ? int(c - U'a' + 10)
                  : (hex && c >= U'A' && c <= U'F') ? int(c - U'A' + 10)
                                                    : -1;
          if (v < 0) fail("malformed character reference");
          cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(v);
          if (cp > 0x10FFFF) fail("character reference out of range");
        }
        if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid character reference");
      } else {
        fail("unknown entity '&" + utf8_encode(ent) + ";'");
      }
      out += cp;
      k = semi;
    }
    return out;
  }

  std::u32string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::vector<HtmlNode*> stack_;
};

// Text nodes of one block context, in document order.
struct Context {
  std::vector<HtmlNode*> texts;

  void flush() {
    bool prev_space = true;
    HtmlNode* last = nullptr;
    for (HtmlNode* t : texts) {
      std::u32string out;
      for (char32_t c : t->text) {
        if (html_space(c)) {
          if (prev_space) continue;
          out += U' ';
          prev_space = true;
        } else {
          out += c;
          prev_space = false;
        }
      }
      t->text = std::move(out);
      if (!t->text.empty()) last = t;
    }
    if (last && last->text.back() == U' ') last->text.pop_back();
    texts.clear();
  }
};

void normalize(HtmlNode& node, bool in_pre, Context& ctx) {
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    HtmlNode& c = node.children[k];
    if (c.is_text()) {
      if (!in_pre) ctx.texts.push_back(&c);
      continue;
    }
    if (c.tag == "br") {
      ctx.flush();
      continue;
    }
    bool block = is_html_block(c.tag);
    if (block) ctx.flush();
    if (c.tag == "pre" && !c.children.empty() && c.children.front().is_text()) {
      auto& t = c.children.front().text;
      if (!t.empty() && t.front() == U'\r') t.erase(0, 1);
      if (!t.empty() && t.front() == U'\n') t.erase(0, 1);
    }
    normalize(c, in_pre || c.tag == "pre", ctx);
    if (block) ctx.flush();
  }
}

}  // namespace

bool is_html_block(std::string_view tag) {
  return tag == "html" || tag == "head" || tag == "body" || tag == "title" || tag == "p" || tag == "pre" ||
         (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6');
}

HtmlNode parse_html(std::u32string_view text) { return Parser(text).run(); }

void normalize_whitespace(HtmlNode& root) {
  Context ctx;
  normalize(root, root.tag == "pre", ctx);
  ctx.flush();
}

}  // namespace infoid
