#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "infoid/identity/identity.hpp"

namespace infoid {

// A carrier is read through its declared projection method.
struct CarrierReading {
  InformationCarrier carrier;
  PhysicalProjectionMethod method;
};

using MigrationArtifact = std::variant<CarrierReading, DigitalObject, SensoryImpression>;

std::string artifact_id(const MigrationArtifact& a);

struct MigrationStep {
  std::string artifact_id;
  std::string digest;
  StructureStatus status = StructureStatus::Complete;
};

struct MigrationReport {
  std::vector<MigrationStep> chain;
  IdentityVerdict verdict;
  std::optional<std::size_t> first_divergence;  // 0-based chain index
};

class MigrationError : public IdentityError {
 public:
  MigrationError(std::size_t index, const std::string& what)
      : IdentityError(IdentityErrc::ExtractionFailed, "chain step " + std::to_string(index + 1) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

SymbolStructure extract_structure(const MigrationArtifact& a, const InformationFormat& format,
                                  const FormatRegistry& registry);

// Extracts every artifact under the intended format and compares each with
// the first. The first Undefined or differing step decides the verdict.
MigrationReport verify_migration(const std::vector<MigrationArtifact>& chain, const InformationFormat& intended_format,
                                 const FormatRegistry& registry);

}  // namespace infoid
