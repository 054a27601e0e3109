#pragma once

#include "infoid/format/registry.hpp"
#include "infoid/interpretation/errors.hpp"
#include "infoid/interpretation/html.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

// Decodes or parses the bytes directly into a structure under the format.
// text/plain: lines, blank-line paragraphs, form feeds start a new page.
// text/html: a DOM-shaped tree when the format marks domElements meaningful,
// otherwise the same text shape a scan of the rendered page produces.
SymbolStructure digital_interpret(const DigitalObject& obj, const InformationFormat& format, const FormatRegistry& registry);

// Builds containers from a parsed, whitespace-normalized HTML tree. With
// dom = false the tree is flattened into the text shape.
SymbolStructure html_to_structure(const HtmlNode& root, const InformationFormat& format, const FormatRegistry& registry,
                                  bool dom);

}  // namespace infoid
