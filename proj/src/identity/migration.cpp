#include "infoid/identity/migration.hpp"

#include "infoid/interpretation/digital.hpp"
#include "infoid/interpretation/recognize.hpp"

namespace infoid {

std::string artifact_id(const MigrationArtifact& a) {
  if (const auto* c = std::get_if<CarrierReading>(&a)) return c->carrier.id;
  if (const auto* d = std::get_if<DigitalObject>(&a)) return d->id;
  return std::get<SensoryImpression>(a).id;
}

SymbolStructure extract_structure(const MigrationArtifact& a, const InformationFormat& format,
                                  const FormatRegistry& registry) {
  if (const auto* c = std::get_if<CarrierReading>(&a))
    return recognize(physical_project(c->carrier, c->method), format, registry);
  if (const auto* d = std::get_if<DigitalObject>(&a)) return digital_interpret(*d, format, registry);
  return recognize(std::get<SensoryImpression>(a), format, registry);
}

MigrationReport verify_migration(const std::vector<MigrationArtifact>& chain, const InformationFormat& intended_format,
                                 const FormatRegistry& registry) {
  MigrationReport rep;
  std::optional<SymbolStructure> first;
  bool decided = false;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    SymbolStructure s;
    try {
      s = extract_structure(chain[k], intended_format, registry);
    } catch (const Error& e) {
      throw MigrationError(k, e.what());
    }
    CanonicalForm cf = canonicalize(s);
    rep.chain.push_back({artifact_id(chain[k]), cf.digest, s.status});
    if (!decided && s.status == StructureStatus::Undefined) {
      rep.verdict.value = Verdict::Undefined;
      rep.first_divergence = k;
      decided = true;
    } else if (!decided && first && cf.bytes != canonicalize(*first).bytes) {
      rep.verdict.value = Verdict::Different;
      rep.verdict.diff = structure_diff(*first, s);
      rep.first_divergence = k;
      decided = true;
    }
    if (!first) first = std::move(s);
  }
  if (!decided) rep.verdict.value = Verdict::Identical;
  return rep;
}

}  // namespace infoid
