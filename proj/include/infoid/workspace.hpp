#pragma once

#include <any>
#include <string>

#include "infoid/format/registry.hpp"
#include "infoid/ontology/store.hpp"
#include "infoid/projection/projection.hpp"
#include "infoid/structure/structure.hpp"

namespace infoid {

// Runs the projection and interpretation steps and records each one as an
// event in its store, so `carries` can be asked of anything it handled.
class Workspace {
 public:
  explicit Workspace(FormatRegistry registry = FormatRegistry::with_builtins());

  const FormatRegistry& registry() const { return registry_; }
  const OntologyStore& store() const { return store_; }

  // Registers the carrier with its intent metadata and derivedFrom link.
  EntityId add_carrier(InformationCarrier carrier);
  EntityId add_digital_object(DigitalObject object);

  EntityId scan(const EntityId& carrier, const PhysicalProjectionMethod& method);
  EntityId render(const EntityId& object, const std::string& format_id, const std::string& font_id, int page_width_px,
                  const Rational& scale);
  EntityId recognize(const EntityId& impression, const std::string& format_id);
  EntityId interpret(const EntityId& object, const std::string& format_id);

  template <typename T>
  const T& get(const EntityId& id) const {
    return std::any_cast<const T&>(store_.entity(id).payload);
  }

 private:
  EntityId format_entity(const std::string& format_id);
  EntityId fresh(const std::string& base);
  EntityId add_structure(SymbolStructure s);

  FormatRegistry registry_;
  OntologyStore store_;
  std::size_t counter_ = 0;
};

}  // namespace infoid
