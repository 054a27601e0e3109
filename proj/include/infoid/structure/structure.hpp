#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace infoid {

// Style attribute values as recorded on occurrences. Booleans are stored only
// when set ("1"); alternative values from ambiguous matches are joined by '|'.
using StyleAttrs = std::map<std::string, std::string>;

struct SymbolOccurrence {
  // Sorted, duplicate free. Empty means UNDEFINED.
  std::vector<std::string> alternatives;
  StyleAttrs style;

  SymbolOccurrence() = default;
  explicit SymbolOccurrence(std::string type, StyleAttrs st = {});
  static SymbolOccurrence undefined(StyleAttrs st = {});
  static SymbolOccurrence of(std::vector<std::string> alternatives, StyleAttrs st = {});

  bool is_undefined() const { return alternatives.empty(); }
  bool is_ambiguous() const { return alternatives.size() > 1; }
  const std::string& type() const { return alternatives.front(); }

  friend bool operator==(const SymbolOccurrence&, const SymbolOccurrence&) = default;
};

struct Node;

struct Container {
  std::string kind;
  std::map<std::string, std::string> attrs;
  std::vector<Node> children;

  Container() = default;
  explicit Container(std::string k) : kind(std::move(k)) {}

  Container& add_container(std::string kind);
  void add(SymbolOccurrence occ);

  friend bool operator==(const Container&, const Container&) = default;
};

struct Node {
  std::variant<Container, SymbolOccurrence> value;

  Node(Container c) : value(std::move(c)) {}
  Node(SymbolOccurrence o) : value(std::move(o)) {}

  const Container* container() const { return std::get_if<Container>(&value); }
  Container* container() { return std::get_if<Container>(&value); }
  const SymbolOccurrence* occurrence() const { return std::get_if<SymbolOccurrence>(&value); }
  SymbolOccurrence* occurrence() { return std::get_if<SymbolOccurrence>(&value); }

  friend bool operator==(const Node&, const Node&) = default;
};

// Child-index path from the root; the root itself is the empty path.
using NodePath = std::vector<std::size_t>;

std::string path_string(const NodePath& p);  // "0.2.1"; "" for the root
NodePath parse_path(const std::string& text);

struct Overlap {
  NodePath a;
  NodePath b;
  friend bool operator==(const Overlap&, const Overlap&) = default;
};

struct Region {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region&, const Region&) = default;
};

struct AnalogPart {
  Region region;
  std::optional<std::string> payload_digest;
  friend bool operator==(const AnalogPart&, const AnalogPart&) = default;
};

enum class StructureStatus { Complete, Fragment, Undefined };

std::string status_name(StructureStatus s);

// How a word was handled by disambiguation; not part of identity.
struct ResolutionNote {
  std::string path;
  std::string level;    // "word", "grammar", "wildcard"
  std::string outcome;  // "resolved", "narrowed", "unresolvable", "too-many-expansions", "ambiguous-completion"
  std::vector<std::string> survivors;
  friend bool operator==(const ResolutionNote&, const ResolutionNote&) = default;
};

struct SymbolStructure {
  std::string format_id;
  Container root{"document"};
  std::vector<Overlap> overlaps;
  std::vector<AnalogPart> analog_parts;
  StructureStatus status = StructureStatus::Complete;
  std::vector<ResolutionNote> provenance;

  bool has_undefined() const;
  // Undefined iff some occurrence is UNDEFINED; a cleared Undefined becomes Complete.
  void refresh_status();
  std::size_t occurrence_count() const;

  const Node* at(const NodePath& p) const;
};

// Depth-first pre-order visit of every occurrence with its path.
template <typename F>
void for_each_occurrence(const Container& c, NodePath& path, F&& f) {
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    path.push_back(i);
    if (auto* occ = c.children[i].occurrence()) f(*occ, path);
    else for_each_occurrence(*c.children[i].container(), path, f);
    path.pop_back();
  }
}

template <typename F>
void for_each_occurrence(Container& c, NodePath& path, F&& f) {
  for (std::size_t i = 0; i < c.children.size(); ++i) {
    path.push_back(i);
    if (auto* occ = c.children[i].occurrence()) f(*occ, path);
    else for_each_occurrence(*c.children[i].container(), path, f);
    path.pop_back();
  }
}

}  // namespace infoid
