#pragma once

#include <string>
#include <string_view>

#include "infoid/core/error.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

enum class IdentityErrc { FormatMismatch, CanonicalSyntax, ExtractionFailed };

using IdentityError = CodedError<IdentityErrc>;

struct CanonicalForm {
  std::string bytes;
  std::string digest;  // SHA-256, lowercase hex
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr std::string_view kCanonicalMagic = "ICSTRUCT";
inline constexpr int kCanonicalVersion = 1;

// Line-delimited pre-order serialization:
//   ICSTRUCT 1 <formatId>
//   NODE <depth> <kind> [key=value ...]
//   OCC <depth> {<typeId>,...} [style=value ...]
//   OVERLAP <pathA> <pathB>
//   ANALOG <x>,<y>,<w>,<h> -
//   STATUS <Complete|Fragment|Undefined>
// Attributes, styles, alternatives, overlaps and analog regions are sorted.
// Analog payload digests are left out ('-'), as is resolution provenance.
CanonicalForm canonicalize(const SymbolStructure& s);

// Inverse of canonicalize for the identity-bearing parts.
SymbolStructure parse_canonical(std::string_view text);

// Percent-escaping used for tokens in canonical lines.
std::string canonical_escape(std::string_view raw);
std::string canonical_unescape(std::string_view escaped);

}  // namespace infoid
