#pragma once

#include <vector>

#include "infoid/format/registry.hpp"
#include "infoid/interpretation/errors.hpp"
#include "infoid/interpretation/segment.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

// Template recognition: every glyph box is compared with every glyph of every
// font of the format, scaled to the box. All matching types become the
// occurrence's alternatives; no match gives UNDEFINED.
SymbolStructure recognize(const SensoryImpression& impression, const InformationFormat& format,
                          const FormatRegistry& registry);

// Connected inked regions that cannot be glyphs: taller than a line or wider
// than any glyph, and free of unreadable pixels. Regions are reported in
// carrier coordinates.
std::vector<AnalogPart> extract_analog_parts(const SensoryImpression& impression, const InformationFormat& format,
                                             const FormatRegistry& registry);

}  // namespace infoid
