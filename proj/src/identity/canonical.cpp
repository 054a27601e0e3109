#include "infoid/identity/canonical.hpp"

#include <algorithm>
#include <sstream>

#include "infoid/core/digest.hpp"

namespace infoid {

namespace {

bool safe_char(unsigned char c) {
  if (c >= 'a' && c <= 'z') return true;
  if (c >= 'A' && c <= 'Z') return true;
  if (c >= '0' && c <= '9') return true;
  switch (c) {
    case '.': case '_': case '-': case '~': case ':': case '/': case '?': case '#': case '@': case '!':
    case '$': case '&': case '\'': case '(': case ')': case '*': case '+': case ';': case '|':
      return true;
    default:
      return false;
  }
}

void emit(std::string& out, const Container& c, int depth) {
  out += "NODE " + std::to_string(depth) + " " + canonical_escape(c.kind);
  for (const auto& [k, v] : c.attrs) out += " " + canonical_escape(k) + "=" + canonical_escape(v);
  out += '\n';
  for (const auto& child : c.children) {
    if (const auto* sub = child.container()) {
      emit(out, *sub, depth + 1);
      continue;
    }
    const auto& o = *child.occurrence();
    std::vector<std::string> alts = o.alternatives;
    std::sort(alts.begin(), alts.end());
    alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
    out += "OCC " + std::to_string(depth + 1) + " {";
    for (std::size_t i = 0; i < alts.size(); ++i) out += (i ? "," : "") + canonical_escape(alts[i]);
    out += '}';
    for (const auto& [k, v] : o.style) out += " " + canonical_escape(k) + "=" + canonical_escape(v);
    out += '\n';
  }
}

std::vector<std::string> words(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    auto sp = line.find(' ', start);
    out.push_back(line.substr(start, sp == std::string::npos ? std::string::npos : sp - start));
    if (sp == std::string::npos) break;
    start = sp + 1;
  }
  return out;
}

}  // namespace

std::string canonical_escape(std::string_view raw) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (safe_char(c)) {
      out += ch;
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xf];
    }
  }
  return out;
}

std::string canonical_unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      if (!safe_char(static_cast<unsigned char>(s[i])))
        throw IdentityError(IdentityErrc::CanonicalSyntax, "unescaped character in '" + std::string(s) + "'");
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) throw IdentityError(IdentityErrc::CanonicalSyntax, "truncated escape");
    auto val = [&](char h) {
      if (h >= '0' && h <= '9') return h - '0';
      if (h >= 'A' && h <= 'F') return h - 'A' + 10;
      throw IdentityError(IdentityErrc::CanonicalSyntax, "bad escape digit");
    };
    out += static_cast<char>(val(s[i + 1]) * 16 + val(s[i + 2]));
    i += 2;
  }
  return out;
}

CanonicalForm canonicalize(const SymbolStructure& s) {
  std::string out;
  out += std::string(kCanonicalMagic) + " " + std::to_string(kCanonicalVersion) + " " + canonical_escape(s.format_id) + "\n";
  emit(out, s.root, 0);

  std::vector<std::pair<std::string, std::string>> overlaps;
  for (const auto& o : s.overlaps) {
    std::string a = path_string(o.a), b = path_string(o.b);
    if (o.b < o.a) std::swap(a, b);
    overlaps.emplace_back(a, b);
  }
  std::sort(overlaps.begin(), overlaps.end());
  overlaps.erase(std::unique(overlaps.begin(), overlaps.end()), overlaps.end());
  for (const auto& [a, b] : overlaps) out += "OVERLAP " + a + " " + b + "\n";

  std::vector<Region> regions;
  for (const auto& p : s.analog_parts) regions.push_back(p.region);
  std::sort(regions.begin(), regions.end());
  for (const auto& r : regions)
    out += "ANALOG " + std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.width) + "," +
           std::to_string(r.height) + " -\n";

  out += "STATUS " + status_name(s.status) + "\n";
  return CanonicalForm{out, sha256_hex(out)};
}

SymbolStructure parse_canonical(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw IdentityError(IdentityErrc::CanonicalSyntax, "canonical line " + std::to_string(lineno) + ": " + msg);
  };
  auto depth_of = [&](const std::string& w) {
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) fail("bad depth '" + w + "'");
    return std::stoi(w);
  };
  auto key_values = [&](const std::vector<std::string>& ws, std::size_t from) {
    std::map<std::string, std::string> kv;
    for (std::size_t i = from; i < ws.size(); ++i) {
      auto eq = ws[i].find('=');
      if (eq == std::string::npos || eq == 0) fail("expected key=value");
      if (!kv.emplace(canonical_unescape(ws[i].substr(0, eq)), canonical_unescape(ws[i].substr(eq + 1))).second)
        fail("duplicate key");
    }
    return kv;
  };

  SymbolStructure s;
  std::vector<Container*> stack;
  bool root_seen = false, status_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto ws = words(line);
    if (lineno == 1) {
      if (ws.size() != 3 || ws[0] != kCanonicalMagic) fail("missing ICSTRUCT header");
      if (ws[1] != std::to_string(kCanonicalVersion)) fail("unsupported version " + ws[1]);
      s.format_id = canonical_unescape(ws[2]);
      continue;
    }
    if (status_seen) fail("content after STATUS");
    const std::string& tag = ws[0];
    if (tag == "NODE" || tag == "OCC") {
      if (ws.size() < 3) fail("short " + tag + " line");
      int depth = depth_of(ws[1]);
      if (tag == "NODE" && depth == 0) {
        if (root_seen) fail("second root");
        root_seen = true;
        s.root = Container(canonical_unescape(ws[2]));
        s.root.attrs = key_values(ws, 3);
        stack = {&s.root};
        continue;
      }
      if (!root_seen) fail("content before the root NODE");
      if (depth < 1 || static_cast<std::size_t>(depth) > stack.size()) fail("depth jump");
      stack.resize(depth);
      Container& parent = *stack.back();
      if (tag == "NODE") {
        Container& c = parent.add_container(canonical_unescape(ws[2]));
        c.attrs = key_values(ws, 3);
        stack.push_back(&c);
      } else {
        const std::string& set = ws[2];
        if (set.size() < 2 || set.front() != '{' || set.back() != '}') fail("expected {alternatives}");
        std::vector<std::string> alts;
        std::string inner = set.substr(1, set.size() - 2);
        std::size_t start = 0;
        while (!inner.empty() && start <= inner.size()) {
          auto comma = inner.find(',', start);
          auto item = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
          if (item.empty()) fail("empty alternative");
          alts.push_back(canonical_unescape(item));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        auto occ = SymbolOccurrence::of(std::move(alts), key_values(ws, 3));
        parent.add(std::move(occ));
      }
    } else if (tag == "OVERLAP") {
      if (ws.size() != 3) fail("OVERLAP needs two paths");
      try {
        s.overlaps.push_back(Overlap{parse_path(ws[1]), parse_path(ws[2])});
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (tag == "ANALOG") {
      if (ws.size() != 3) fail("ANALOG needs a region and a digest field");
      Region r;
      char c1, c2, c3;
      std::istringstream rs(ws[1]);
      if (!(rs >> r.x >> c1 >> r.y >> c2 >> r.width >> c3 >> r.height) || c1 != ',' || c2 != ',' || c3 != ',')
        fail("bad region");
      AnalogPart p{r, std::nullopt};
      if (ws[2] != "-") p.payload_digest = ws[2];
      s.analog_parts.push_back(p);
    } else if (tag == "STATUS") {
      if (ws.size() != 2) fail("bad STATUS line");
      if (ws[1] == "Complete") s.status = StructureStatus::Complete;
      else if (ws[1] == "Fragment") s.status = StructureStatus::Fragment;
      else if (ws[1] == "Undefined") s.status = StructureStatus::Undefined;
      else fail("unknown status '" + ws[1] + "'");
      status_seen = true;
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (lineno == 0) throw IdentityError(IdentityErrc::CanonicalSyntax, "empty canonical file");
  if (!root_seen) throw IdentityError(IdentityErrc::CanonicalSyntax, "canonical file has no root NODE");
  if (!status_seen) throw IdentityError(IdentityErrc::CanonicalSyntax, "canonical file has no STATUS line");
  return s;
}

}  // namespace infoid
