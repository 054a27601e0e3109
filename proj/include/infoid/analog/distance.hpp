#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infoid/core/error.hpp"
#include "infoid/projection/projection.hpp"

namespace infoid {

enum class AnalogErrc { DimensionMismatch, InvalidArgument, VectorSyntax };

using AnalogError = CodedError<AnalogErrc>;

inline constexpr int kHistogramBins = 16;

// Grid means in row-major cell order, then the intensity histogram.
struct FeatureVector {
  std::vector<double> dims;
  std::string source_digest;  // SHA-256 of the impression's PGM export
};

// Cells split the raster as evenly as integer bounds allow; a raster smaller
// than the grid repeats edge pixels across cells.
FeatureVector feature_vector(const SensoryImpression& impression, int grid_rows, int grid_cols);

double distance(const FeatureVector& a, const FeatureVector& b);

// Deliberately no equality here: nearness under a threshold is not transitive.
struct MigrationBudget {
  double threshold = 0;
  double spent = 0;

  double remaining() const { return threshold - spent; }
  bool exhausted() const { return spent > threshold; }
};

MigrationBudget migration_budget_update(MigrationBudget budget, double step_distance);

// `digest,v0,v1,...` with 17 significant digits.
std::string format_feature_line(const FeatureVector& v);
FeatureVector parse_feature_line(const std::string& line);

}  // namespace infoid
