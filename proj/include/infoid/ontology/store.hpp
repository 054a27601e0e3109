#pragma once

#include <any>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoid/core/error.hpp"

namespace infoid {

enum class OntologyErrc { DuplicateId, DanglingLink, RoleViolation, UnknownEntity, WrongKind, LogSyntax };

using OntologyError = CodedError<OntologyErrc>;

using EntityId = std::string;

enum class EntityKind {
  InformationCarrier,        // E84
  DigitalObject,             // ICI13
  SensoryImpression,         // ICI3
  SymbolStructure,           // ICI5
  InformationFormat,         // ICI19
  SymbolFont,                // ICI8
  SymbolTypeSet,             // ICI9
  ArrangementRuleSet,        // ICI10
  PhysicalProjectionMethod,  // ICI1
  MediaProjectionSoftware,   // ICI15
  SymbolFontEncoding,        // ICI11
  SymbolTypeEncoding,        // ICI12
};

std::string entity_kind_name(EntityKind k);
std::string ontology_class(EntityKind k);

struct Entity {
  EntityId id;
  EntityKind kind;
  std::any payload;  // value owned by the producing module, if any
};

enum class EventKind { PhysicalProjection, DigitalProjection, SignalInterpretation, DigitalInterpretation };

std::string event_kind_name(EventKind k);
EventKind parse_event_kind(const std::string& name);

// Roles: projected, produced, interpreted, extracted, usedTechnique,
// usedSoftware, usedFormat, usedFont, usedTypeSet, usedRules,
// usedFontEncoding, usedTypeEncoding.
struct EventRecord {
  EntityId id;
  EventKind kind;
  std::vector<std::pair<std::string, EntityId>> links;

  std::vector<EntityId> linked(const std::string& role) const;
};

struct IntentMetadata {
  EntityId subject;
  std::optional<EntityId> intended_projection;
  std::optional<EntityId> intended_format;
  std::optional<EntityId> used_format;
};

class OntologyStore {
 public:
  EntityId register_entity(Entity entity);
  // Checks links and role cardinalities before anything is stored.
  EntityId record_event(EventRecord event);

  const Entity& entity(const EntityId& id) const;
  bool contains(const EntityId& id) const { return entities_.count(id) != 0; }
  // Entities and events share one id space.
  bool id_taken(const EntityId& id) const { return entities_.count(id) != 0 || event_ids_.count(id) != 0; }
  std::size_t size() const { return entities_.size(); }
  const std::vector<EventRecord>& events() const { return events_; }

  // Impressions produced by physical projections of the carrier.
  std::set<EntityId> had_projection(const EntityId& carrier) const;
  // Structures extracted from any of those impressions.
  std::set<EntityId> carries(const EntityId& carrier) const;
  // Structures extracted from an impression or a digital object.
  std::set<EntityId> extracted_from(const EntityId& source) const;

  void set_intent(IntentMetadata intent);
  std::optional<IntentMetadata> intent(const EntityId& subject) const;

  // A changed carrier is a new entity pointing at its predecessor.
  void link_derived_from(const EntityId& derived, const EntityId& original);
  std::optional<EntityId> derived_from(const EntityId& id) const;
  // Recorded as given; no reproduction event is required.
  void link_reproduction(const EntityId& impression, const EntityId& carrier);
  std::set<EntityId> reproductions(const EntityId& impression) const;

  void export_event_log(std::ostream& out) const;
  // Records every event of the log; the linked entities must already exist.
  void import_event_log(std::istream& in);

 private:
  const Entity& require(const EntityId& id) const;
  void require_kind(const EntityId& id, EntityKind kind) const;

  std::map<EntityId, Entity> entities_;
  std::set<EntityId> event_ids_;
  std::vector<EventRecord> events_;
  std::map<EntityId, std::set<EntityId>> projections_;  // carrier -> impressions
  std::map<EntityId, std::set<EntityId>> extractions_;  // impression or object -> structures
  std::map<EntityId, IntentMetadata> intents_;
  std::map<EntityId, EntityId> derived_from_;
  std::map<EntityId, std::set<EntityId>> reproductions_;
};

}  // namespace infoid
