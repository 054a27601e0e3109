#pragma once

#include <random>
#include <string>
#include <vector>

#include "infoid/format/registry.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid::testing {

std::string data_path(const std::string& rel);
std::string fixture_path(const std::string& rel);
std::string slurp(const std::string& path);

// Printable ASCII text built from the Latin repertoire: words, single spaces,
// line breaks and blank-line paragraph breaks.
std::string random_latin_text(std::mt19937& rng, int max_symbols);

// A structure in the shape decoders and the recognizer produce, with at most
// max_symbols non-space occurrences. Styles are drawn for the flags the format
// marks meaningful, always naming a font the format has.
SymbolStructure random_text_structure(std::mt19937& rng, const FormatRegistry& registry, const std::string& format_id,
                                      int max_symbols);

// Arbitrary containers, attributes, overlaps and analog parts; for
// serialization properties only.
SymbolStructure random_free_structure(std::mt19937& rng, int max_nodes);

Raster random_raster(std::mt19937& rng, int width, int height);

}  // namespace infoid::testing
