#include "infoid/ontology/store.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace infoid {

namespace {

constexpr std::array<const char*, 12> kEntityNames = {
    "InformationCarrier", "DigitalObject",        "SensoryImpression",        "SymbolStructure",
    "InformationFormat",  "SymbolFont",           "SymbolTypeSet",            "ArrangementRuleSet",
    "PhysicalProjectionMethod", "MediaProjectionSoftware", "SymbolFontEncoding", "SymbolTypeEncoding"};

constexpr std::array<const char*, 12> kClasses = {"E84",   "ICI13", "ICI3", "ICI5", "ICI19", "ICI8",
                                                  "ICI9",  "ICI10", "ICI1", "ICI15", "ICI11", "ICI12"};

constexpr std::array<const char*, 4> kEventNames = {"PhysicalProjection", "DigitalProjection",
                                                    "SignalInterpretation", "DigitalInterpretation"};

struct RoleRule {
  const char* role;
  EntityKind kind;
  std::size_t min;
  std::size_t max;
};

constexpr std::size_t kMany = static_cast<std::size_t>(-1);

std::vector<RoleRule> rules_for(EventKind k) {
  using K = EntityKind;
  switch (k) {
    case EventKind::PhysicalProjection:
      return {{"projected", K::InformationCarrier, 1, 1},
              {"produced", K::SensoryImpression, 1, 1},
              {"usedTechnique", K::PhysicalProjectionMethod, 0, 1}};
    case EventKind::DigitalProjection:
      return {{"projected", K::DigitalObject, 1, 1},
              {"produced", K::SensoryImpression, 1, 1},
              {"usedSoftware", K::MediaProjectionSoftware, 0, 1},
              {"usedFormat", K::InformationFormat, 0, 1}};
    case EventKind::SignalInterpretation:
      return {{"interpreted", K::SensoryImpression, 1, 1},
              {"extracted", K::SymbolStructure, 0, 1},
              {"usedFormat", K::InformationFormat, 0, 1},
              {"usedFont", K::SymbolFont, 0, kMany},
              {"usedTypeSet", K::SymbolTypeSet, 0, kMany},
              {"usedRules", K::ArrangementRuleSet, 0, kMany}};
    case EventKind::DigitalInterpretation:
      return {{"interpreted", K::DigitalObject, 1, 1},
              {"extracted", K::SymbolStructure, 0, 1},
              {"usedFormat", K::InformationFormat, 0, 1},
              {"usedFontEncoding", K::SymbolFontEncoding, 0, kMany},
              {"usedTypeEncoding", K::SymbolTypeEncoding, 0, kMany}};
  }
  return {};
}

}  // namespace

std::string entity_kind_name(EntityKind k) { return kEntityNames[static_cast<std::size_t>(k)]; }
std::string ontology_class(EntityKind k) { return kClasses[static_cast<std::size_t>(k)]; }
std::string event_kind_name(EventKind k) { return kEventNames[static_cast<std::size_t>(k)]; }

EventKind parse_event_kind(const std::string& name) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i)
    if (name == kEventNames[i]) return static_cast<EventKind>(i);
  throw OntologyError(OntologyErrc::LogSyntax, "unknown event kind '" + name + "'");
}

std::vector<EntityId> EventRecord::linked(const std::string& role) const {
  std::vector<EntityId> out;
  for (const auto& [r, id] : links)
    if (r == role) out.push_back(id);
  return out;
}

EntityId OntologyStore::register_entity(Entity entity) {
  if (entity.id.empty()) throw OntologyError(OntologyErrc::RoleViolation, "entity id must be nonempty");
  if (entities_.count(entity.id) || event_ids_.count(entity.id))
    throw OntologyError(OntologyErrc::DuplicateId, "id '" + entity.id + "' already registered");
  EntityId id = entity.id;
  entities_.emplace(id, std::move(entity));
  return id;
}

const Entity& OntologyStore::require(const EntityId& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw OntologyError(OntologyErrc::UnknownEntity, "unknown entity '" + id + "'");
  return it->second;
}

void OntologyStore::require_kind(const EntityId& id, EntityKind kind) const {
  if (require(id).kind != kind)
    throw OntologyError(OntologyErrc::WrongKind, "'" + id + "' is not a " + entity_kind_name(kind));
}

const Entity& OntologyStore::entity(const EntityId& id) const { return require(id); }

EntityId OntologyStore::record_event(EventRecord event) {
  if (event.id.empty()) throw OntologyError(OntologyErrc::RoleViolation, "event id must be nonempty");
  if (entities_.count(event.id) || event_ids_.count(event.id))
    throw OntologyError(OntologyErrc::DuplicateId, "id '" + event.id + "' already registered");
  const std::string kind = event_kind_name(event.kind);
  for (const auto& [role, id] : event.links)
    if (!entities_.count(id))
      throw OntologyError(OntologyErrc::DanglingLink, kind + " " + event.id + ": " + role + " -> unknown '" + id + "'");

  auto rules = rules_for(event.kind);
  for (const auto& [role, id] : event.links) {
    auto rule = std::find_if(rules.begin(), rules.end(), [&](const RoleRule& r) { return role == r.role; });
    if (rule == rules.end())
      throw OntologyError(OntologyErrc::RoleViolation, kind + " has no role '" + role + "'");
    if (entities_.at(id).kind != rule->kind)
      throw OntologyError(OntologyErrc::RoleViolation,
                          kind + " " + role + " must link a " + entity_kind_name(rule->kind) + ", got '" + id + "'");
  }
  for (const auto& rule : rules) {
    std::size_t n = event.linked(rule.role).size();
    if (n < rule.min || n > rule.max)
      throw OntologyError(OntologyErrc::RoleViolation,
                          kind + " has " + std::to_string(n) + " '" + rule.role + "' links");
  }

  if (event.kind == EventKind::PhysicalProjection)
    projections_[event.linked("projected").front()].insert(event.linked("produced").front());
  if (event.kind == EventKind::SignalInterpretation || event.kind == EventKind::DigitalInterpretation)
    for (const auto& s : event.linked("extracted")) extractions_[event.linked("interpreted").front()].insert(s);

  event_ids_.insert(event.id);
  EntityId id = event.id;
  events_.push_back(std::move(event));
  return id;
}

std::set<EntityId> OntologyStore::had_projection(const EntityId& carrier) const {
  require_kind(carrier, EntityKind::InformationCarrier);
  auto it = projections_.find(carrier);
  return it == projections_.end() ? std::set<EntityId>{} : it->second;
}

std::set<EntityId> OntologyStore::extracted_from(const EntityId& source) const {
  require(source);
  auto it = extractions_.find(source);
  return it == extractions_.end() ? std::set<EntityId>{} : it->second;
}

std::set<EntityId> OntologyStore::carries(const EntityId& carrier) const {
  std::set<EntityId> out;
  for (const auto& impression : had_projection(carrier)) {
    auto s = extracted_from(impression);
    out.insert(s.begin(), s.end());
  }
  return out;
}

void OntologyStore::set_intent(IntentMetadata intent) {
  const Entity& subject = require(intent.subject);
  if (subject.kind != EntityKind::InformationCarrier && subject.kind != EntityKind::DigitalObject)
    throw OntologyError(OntologyErrc::WrongKind, "intent applies to carriers and digital objects");
  if (intent.intended_projection) require_kind(*intent.intended_projection, EntityKind::PhysicalProjectionMethod);
  if (intent.intended_format) require_kind(*intent.intended_format, EntityKind::InformationFormat);
  if (intent.used_format) require_kind(*intent.used_format, EntityKind::InformationFormat);
  EntityId key = intent.subject;
  intents_[key] = std::move(intent);
}

std::optional<IntentMetadata> OntologyStore::intent(const EntityId& subject) const {
  require(subject);
  auto it = intents_.find(subject);
  if (it == intents_.end()) return std::nullopt;
  return it->second;
}

void OntologyStore::link_derived_from(const EntityId& derived, const EntityId& original) {
  if (require(derived).kind != require(original).kind)
    throw OntologyError(OntologyErrc::WrongKind, "derivedFrom links entities of one kind");
  if (derived == original) throw OntologyError(OntologyErrc::RoleViolation, "an entity cannot derive from itself");
  derived_from_[derived] = original;
}

std::optional<EntityId> OntologyStore::derived_from(const EntityId& id) const {
  require(id);
  auto it = derived_from_.find(id);
  if (it == derived_from_.end()) return std::nullopt;
  return it->second;
}

void OntologyStore::link_reproduction(const EntityId& impression, const EntityId& carrier) {
  require_kind(impression, EntityKind::SensoryImpression);
  require_kind(carrier, EntityKind::InformationCarrier);
  reproductions_[impression].insert(carrier);
}

std::set<EntityId> OntologyStore::reproductions(const EntityId& impression) const {
  require(impression);
  auto it = reproductions_.find(impression);
  return it == reproductions_.end() ? std::set<EntityId>{} : it->second;
}

void OntologyStore::export_event_log(std::ostream& out) const {
  for (const auto& e : events_) {
    auto links = e.links;
    std::sort(links.begin(), links.end());
    out << event_kind_name(e.kind) << '\t' << e.id << '\t';
    for (std::size_t i = 0; i < links.size(); ++i) out << (i ? ";" : "") << links[i].first << '=' << links[i].second;
    out << '\n';
  }
}

void OntologyStore::import_event_log(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (line.back() == '\t') fields.emplace_back();
    if (fields.size() != 3)
      throw OntologyError(OntologyErrc::LogSyntax, "line " + std::to_string(n) + ": expected 3 tab-separated fields");
    EventRecord e{fields[1], parse_event_kind(fields[0]), {}};
    std::stringstream ls(fields[2]);
    while (std::getline(ls, f, ';')) {
      auto eq = f.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == f.size())
        throw OntologyError(OntologyErrc::LogSyntax, "line " + std::to_string(n) + ": bad link '" + f + "'");
      e.links.emplace_back(f.substr(0, eq), f.substr(eq + 1));
    }
    record_event(std::move(e));
  }
}

}  // namespace infoid
