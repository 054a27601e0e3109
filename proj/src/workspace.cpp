#include "infoid/workspace.hpp"

#include "infoid/interpretation/digital.hpp"
#include "infoid/interpretation/recognize.hpp"

namespace infoid {

Workspace::Workspace(FormatRegistry registry) : registry_(std::move(registry)) {}

EntityId Workspace::fresh(const std::string& base) {
  if (!store_.id_taken(base)) return base;
  while (true) {
    EntityId id = base + "#" + std::to_string(++counter_);
    if (!store_.id_taken(id)) return id;
  }
}

EntityId Workspace::format_entity(const std::string& format_id) {
  EntityId id = "format:" + format_id;
  if (!store_.contains(id))
    store_.register_entity({id, EntityKind::InformationFormat, registry_.get_format(format_id)});
  return id;
}

EntityId Workspace::add_carrier(InformationCarrier carrier) {
  carrier.id = fresh(carrier.id.empty() ? "carrier" : carrier.id);
  IntentMetadata intent{carrier.id, {}, {}, {}};
  if (carrier.used_format) intent.used_format = format_entity(*carrier.used_format);
  if (carrier.intended_format) intent.intended_format = format_entity(*carrier.intended_format);
  auto original = carrier.derived_from;
  EntityId id = store_.register_entity({carrier.id, EntityKind::InformationCarrier, carrier});
  store_.set_intent(intent);
  if (original && store_.contains(*original)) store_.link_derived_from(id, *original);
  return id;
}

EntityId Workspace::add_digital_object(DigitalObject object) {
  object.id = fresh(object.id.empty() ? "object" : object.id);
  return store_.register_entity({object.id, EntityKind::DigitalObject, object});
}

EntityId Workspace::scan(const EntityId& carrier, const PhysicalProjectionMethod& method) {
  const auto& c = get<InformationCarrier>(carrier);
  EntityId method_id = "method:" + method.id + "@" + method.resolution_scale.str();
  if (!store_.contains(method_id)) store_.register_entity({method_id, EntityKind::PhysicalProjectionMethod, method});
  SensoryImpression imp = physical_project(c, method);
  imp.id = fresh(imp.id);
  EntityId id = store_.register_entity({imp.id, EntityKind::SensoryImpression, imp});
  store_.record_event({fresh("scan"), EventKind::PhysicalProjection,
                       {{"projected", carrier}, {"produced", id}, {"usedTechnique", method_id}}});
  return id;
}

EntityId Workspace::render(const EntityId& object, const std::string& format_id, const std::string& font_id,
                           int page_width_px, const Rational& scale) {
  const auto& format = registry_.get_format(format_id);
  SensoryImpression imp = digital_project(get<DigitalObject>(object), format, registry_.get_font(font_id),
                                          page_width_px, scale, registry_);
  imp.id = fresh(imp.id.empty() ? object + "@render" : imp.id);
  EntityId id = store_.register_entity({imp.id, EntityKind::SensoryImpression, imp});
  store_.record_event({fresh("render"), EventKind::DigitalProjection,
                       {{"projected", object}, {"produced", id}, {"usedFormat", format_entity(format_id)}}});
  return id;
}

EntityId Workspace::add_structure(SymbolStructure s) {
  return store_.register_entity({fresh("structure"), EntityKind::SymbolStructure, std::move(s)});
}

EntityId Workspace::recognize(const EntityId& impression, const std::string& format_id) {
  SymbolStructure s = infoid::recognize(get<SensoryImpression>(impression), registry_.get_format(format_id), registry_);
  EntityId fmt = format_entity(format_id);
  EntityId id = add_structure(std::move(s));
  store_.record_event({fresh("recognition"), EventKind::SignalInterpretation,
                       {{"interpreted", impression}, {"extracted", id}, {"usedFormat", fmt}}});
  return id;
}

EntityId Workspace::interpret(const EntityId& object, const std::string& format_id) {
  SymbolStructure s = digital_interpret(get<DigitalObject>(object), registry_.get_format(format_id), registry_);
  EntityId fmt = format_entity(format_id);
  EntityId id = add_structure(std::move(s));
  store_.record_event({fresh("decoding"), EventKind::DigitalInterpretation,
                       {{"interpreted", object}, {"extracted", id}, {"usedFormat", fmt}}});
  return id;
}

}  // namespace infoid
