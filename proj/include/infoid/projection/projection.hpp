#pragma once

#include <string>

#include "infoid/core/rational.hpp"
#include "infoid/core/raster.hpp"
#include "infoid/format/registry.hpp"
#include "infoid/projection/carrier.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

struct SensoryImpression {
  std::string id;
  Raster pixels;
  Rational resolution_scale;
  friend bool operator==(const SensoryImpression&, const SensoryImpression&) = default;
};

struct PhysicalProjectionMethod {
  std::string id;
  Rational resolution_scale;
  bool reveals_corrupted = false;
};

PhysicalProjectionMethod daylight_scan(Rational scale = Rational(1, 1));
PhysicalProjectionMethod infrared_scan(Rational scale = Rational(1, 1));

struct DigitalObject {
  std::string id;
  std::string bytes;
  std::string type_tag;

  // Identity is the bit content plus its type; the id is a handle.
  friend bool operator==(const DigitalObject& a, const DigitalObject& b) {
    return a.bytes == b.bytes && a.type_tag == b.type_tag;
  }
};

// Lays the structure out on a single surface following the format's rules.
// Occurrence style attributes pick the matching font of the format; `font`
// covers occurrences without style.
InformationCarrier write_carrier(const SymbolStructure& structure, const InformationFormat& format, const SymbolFont& font,
                                 int page_width_px, const FormatRegistry& registry, std::string carrier_id = "carrier");

SensoryImpression physical_project(const InformationCarrier& carrier, const PhysicalProjectionMethod& method,
                                   std::string impression_id = {});

SensoryImpression digital_project(const DigitalObject& obj, const InformationFormat& format, const SymbolFont& font,
                                  int page_width_px, const Rational& scale, const FormatRegistry& registry,
                                  std::string impression_id = {});

// New carrier with the rectangle (clipped to the extent) added to its
// deterioration; the input is left untouched.
InformationCarrier corrupt(const InformationCarrier& carrier, const Region& rect, std::string new_id = {});

}  // namespace infoid
