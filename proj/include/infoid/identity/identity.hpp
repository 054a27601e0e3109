#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infoid/format/registry.hpp"
#include "infoid/identity/canonical.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

enum class Verdict { Identical, Different, Undefined };

std::string verdict_name(Verdict v);

struct DiffEntry {
  std::string path;  // "/0/2#underline"; '#' separates an attribute from the node path
  std::string left;
  std::string right;
  friend bool operator==(const DiffEntry&, const DiffEntry&) = default;
};

struct IdentityVerdict {
  Verdict value = Verdict::Identical;
  std::vector<DiffEntry> diff;
};

// Structural differences between two structures; empty iff their canonical
// forms are equal.
std::vector<DiffEntry> structure_diff(const SymbolStructure& a, const SymbolStructure& b);

// Throws IdentityError(FormatMismatch) when the structures come from
// different formats.
IdentityVerdict identical(const SymbolStructure& a, const SymbolStructure& b);

bool incorporates(const DigitalObject& obj, const SymbolStructure& s, const InformationFormat& format,
                  const FormatRegistry& registry);

}  // namespace infoid
