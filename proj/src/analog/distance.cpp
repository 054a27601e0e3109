#include "infoid/analog/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "infoid/core/digest.hpp"

namespace infoid {

namespace {

std::pair<int, int> span(int j, int n, int m) {
  int lo = static_cast<int>(static_cast<long long>(j) * n / m);
  int hi = static_cast<int>(static_cast<long long>(j + 1) * n / m);
  lo = std::min(lo, n - 1);
  return {lo, std::max(lo + 1, hi)};
}

}  // namespace

FeatureVector feature_vector(const SensoryImpression& impression, int grid_rows, int grid_cols) {
  if (grid_rows < 1 || grid_cols < 1)
    throw AnalogError(AnalogErrc::InvalidArgument, "grid dimensions must be at least 1");
  const Raster& r = impression.pixels;
  FeatureVector out;
  out.source_digest = sha256_hex(to_pgm(r));
  out.dims.assign(static_cast<std::size_t>(grid_rows) * grid_cols + kHistogramBins, 0.0);
  if (r.width == 0 || r.height == 0) return out;

  for (int gy = 0; gy < grid_rows; ++gy) {
    auto [y0, y1] = span(gy, r.height, grid_rows);
    for (int gx = 0; gx < grid_cols; ++gx) {
      auto [x0, x1] = span(gx, r.width, grid_cols);
      double sum = 0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) sum += r.at(x, y);
      out.dims[static_cast<std::size_t>(gy) * grid_cols + gx] = sum / ((y1 - y0) * (x1 - x0));
    }
  }
  double* hist = out.dims.data() + static_cast<std::size_t>(grid_rows) * grid_cols;
  for (double v : r.px) hist[std::min(kHistogramBins - 1, static_cast<int>(std::floor(v * kHistogramBins)))] += 1;
  for (int b = 0; b < kHistogramBins; ++b) hist[b] /= static_cast<double>(r.px.size());
  return out;
}

double distance(const FeatureVector& a, const FeatureVector& b) {
  if (a.dims.size() != b.dims.size())
    throw AnalogError(AnalogErrc::DimensionMismatch, "vectors have " + std::to_string(a.dims.size()) + " and " +
                                                         std::to_string(b.dims.size()) + " components");
  double sum = 0;
  for (std::size_t i = 0; i < a.dims.size(); ++i) {
    double d = a.dims[i] - b.dims[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

MigrationBudget migration_budget_update(MigrationBudget budget, double step_distance) {
  if (!(step_distance >= 0)) throw AnalogError(AnalogErrc::InvalidArgument, "step distance must be nonnegative");
  budget.spent += step_distance;
  return budget;
}

std::string format_feature_line(const FeatureVector& v) {
  std::string out = v.source_digest.empty() ? "-" : v.source_digest;
  char buf[32];
  for (double d : v.dims) {
    std::snprintf(buf, sizeof buf, "%.17g", d);
    out += ',';
    out += buf;
  }
  return out;
}

FeatureVector parse_feature_line(const std::string& line) {
  FeatureVector v;
  std::stringstream ss(line);
  std::string field;
  if (!std::getline(ss, field, ',')) throw AnalogError(AnalogErrc::VectorSyntax, "empty vector line");
  v.source_digest = field == "-" ? "" : field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double d = 0;
    try {
      d = std::stod(field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != field.size() || field.empty() || !std::isfinite(d))
      throw AnalogError(AnalogErrc::VectorSyntax, "bad component '" + field + "'");
    v.dims.push_back(d);
  }
  return v;
}

}  // namespace infoid
