#include "infoid/structure/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace infoid {

SymbolOccurrence::SymbolOccurrence(std::string type, StyleAttrs st) : alternatives{std::move(type)}, style(std::move(st)) {}

SymbolOccurrence SymbolOccurrence::undefined(StyleAttrs st) {
  SymbolOccurrence o;
  o.style = std::move(st);
  return o;
}

SymbolOccurrence SymbolOccurrence::of(std::vector<std::string> alternatives, StyleAttrs st) {
  std::sort(alternatives.begin(), alternatives.end());
  alternatives.erase(std::unique(alternatives.begin(), alternatives.end()), alternatives.end());
  SymbolOccurrence o;
  o.alternatives = std::move(alternatives);
  o.style = std::move(st);
  return o;
}

Container& Container::add_container(std::string k) {
  children.emplace_back(Container(std::move(k)));
  return *children.back().container();
}

void Container::add(SymbolOccurrence occ) { children.emplace_back(std::move(occ)); }

std::string path_string(const NodePath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

NodePath parse_path(const std::string& text) {
  NodePath p;
  if (text.empty()) return p;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad node path '" + text + "'");
    p.push_back(std::stoul(part));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return p;
}

std::string status_name(StructureStatus s) {
  switch (s) {
    case StructureStatus::Complete: return "Complete";
    case StructureStatus::Fragment: return "Fragment";
    case StructureStatus::Undefined: return "Undefined";
  }
  return "Complete";
}

bool SymbolStructure::has_undefined() const {
  bool found = false;
  NodePath p;
  for_each_occurrence(root, p, [&](const SymbolOccurrence& o, const NodePath&) { found = found || o.is_undefined(); });
  return found;
}

void SymbolStructure::refresh_status() {
  if (has_undefined()) {
    status = StructureStatus::Undefined;
  } else if (status == StructureStatus::Undefined) {
    status = StructureStatus::Complete;
  }
}

std::size_t SymbolStructure::occurrence_count() const {
  std::size_t n = 0;
  NodePath p;
  for_each_occurrence(root, p, [&](const SymbolOccurrence&, const NodePath&) { ++n; });
  return n;
}

const Node* SymbolStructure::at(const NodePath& p) const {
  if (p.empty()) return nullptr;
  const Container* c = &root;
  const Node* n = nullptr;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!c || p[i] >= c->children.size()) return nullptr;
    n = &c->children[p[i]];
    c = n->container();
  }
  return n;
}

}  // namespace infoid
