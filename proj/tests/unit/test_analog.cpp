#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "infoid/analog/distance.hpp"
#include "infoid/core/digest.hpp"

using namespace infoid;
using namespace infoid::testing;

namespace {

// Pixel index p of n belongs to grid cell j of m when floor(j*n/m) <= p and
// either p < floor((j+1)*n/m) or p is the cell's only pixel.
bool in_cell(long long j, long long p, long long n, long long m) {
  bool from_lo = j * n < (p + 1) * m;
  bool before_hi = (p + 1) * m <= (j + 1) * n;
  bool is_lo = p * m <= j * n;
  return from_lo && (before_hi || is_lo);
}

std::vector<double> oracle_features(const Raster& r, int rows, int cols) {
  std::vector<double> out(static_cast<std::size_t>(rows * cols + kHistogramBins), 0.0);
  if (r.px.empty()) return out;
  for (int gy = 0; gy < rows; ++gy)
    for (int gx = 0; gx < cols; ++gx) {
      double sum = 0;
      int count = 0;
      for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
          if (in_cell(gy, y, r.height, rows) && in_cell(gx, x, r.width, cols)) {
            sum += r.at(x, y);
            ++count;
          }
      out[static_cast<std::size_t>(gy * cols + gx)] = sum / count;
    }
  for (double v : r.px) {
    int bin = 0;
    while (bin < kHistogramBins - 1 && v * kHistogramBins >= bin + 1) ++bin;
    out[static_cast<std::size_t>(rows * cols + bin)] += 1.0 / static_cast<double>(r.px.size());
  }
  return out;
}

SensoryImpression impression(Raster r) { return SensoryImpression{"imp", std::move(r), Rational(1, 1)}; }

}  // namespace

TEST_CASE("feature vectors match the per-pixel oracle") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> dim(1, 23), grid(1, 7);
  for (int iter = 0; iter < 300; ++iter) {
    Raster r = random_raster(rng, dim(rng), dim(rng));
    int rows = grid(rng), cols = grid(rng);
    auto v = feature_vector(impression(r), rows, cols);
    auto expect = oracle_features(r, rows, cols);
    REQUIRE(v.dims.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(v.dims[i] == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(v.source_digest == sha256_hex(to_pgm(r)));
    double hist = 0;
    for (int b = 0; b < kHistogramBins; ++b) hist += v.dims[static_cast<std::size_t>(rows * cols + b)];
    CHECK(hist == doctest::Approx(1.0));
  }
}

TEST_CASE("edge cases of the feature vector") {
  auto empty = feature_vector(impression(Raster()), 2, 3);
  CHECK(empty.dims == std::vector<double>(6 + kHistogramBins, 0.0));
  Raster one(1, 1, kInk);
  auto v = feature_vector(impression(one), 3, 3);
  for (int i = 0; i < 9; ++i) CHECK(v.dims[static_cast<std::size_t>(i)] == 1.0);
  CHECK(v.dims[9 + kHistogramBins - 1] == 1.0);
  CHECK_THROWS_AS(feature_vector(impression(one), 0, 3), AnalogError);
}

TEST_CASE("distance is a metric") {
  std::mt19937 rng(6);
  std::vector<FeatureVector> vs;
  for (int i = 0; i < 40; ++i) vs.push_back(feature_vector(impression(random_raster(rng, 9, 7)), 3, 3));
  vs.push_back(vs[0]);
  int triples = 0;
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = 0; b < vs.size(); ++b) {
      double ab = distance(vs[a], vs[b]);
      CHECK(ab >= 0);
      CHECK(ab == distance(vs[b], vs[a]));
      if (a == b) CHECK(ab == 0);
      for (std::size_t c = 0; c < vs.size(); c += 7) {
        CHECK(distance(vs[a], vs[c]) <= ab + distance(vs[b], vs[c]) + 1e-9);
        ++triples;
      }
    }
  CHECK(triples >= 1000);
  CHECK(distance(vs[0], vs.back()) == 0);

  FeatureVector small{{1, 2}, ""};
  CHECK_THROWS_AS(distance(small, vs[0]), AnalogError);
}

TEST_CASE("migration budget accumulates and bounds the end-to-end drift") {
  std::mt19937 rng(10);
  Raster r0 = random_raster(rng, 12, 12);
  Raster r1 = r0, r2 = r0;
  for (auto& v : r1.px) v = std::min(1.0, v + 0.05);
  for (std::size_t i = 0; i < r2.px.size(); ++i) r2.px[i] = std::min(1.0, r1.px[i] + (i % 3 ? 0.1 : 0.0));
  auto f0 = feature_vector(impression(r0), 4, 4);
  auto f1 = feature_vector(impression(r1), 4, 4);
  auto f2 = feature_vector(impression(r2), 4, 4);
  MigrationBudget b{distance(f0, f1) + distance(f1, f2), 0};
  b = migration_budget_update(b, distance(f0, f1));
  CHECK_FALSE(b.exhausted());
  b = migration_budget_update(b, distance(f1, f2));
  CHECK_FALSE(b.exhausted());
  CHECK(b.remaining() == doctest::Approx(0.0));
  CHECK(distance(f0, f2) <= b.spent + 1e-9);
  b = migration_budget_update(b, 1e-6);
  CHECK(b.exhausted());
  CHECK_THROWS_AS(migration_budget_update(b, -1), AnalogError);
}

TEST_CASE("vector lines round trip exactly") {
  std::mt19937 rng(14);
  for (int iter = 0; iter < 50; ++iter) {
    auto v = feature_vector(impression(random_raster(rng, 5, 8)), 2, 2);
    auto back = parse_feature_line(format_feature_line(v));
    CHECK(back.dims == v.dims);
    CHECK(back.source_digest == v.source_digest);
  }
  FeatureVector anon{{0.5, 1e-300}, ""};
  CHECK(format_feature_line(anon).rfind("-,", 0) == 0);
  CHECK(parse_feature_line(format_feature_line(anon)).dims == anon.dims);
  CHECK_THROWS_AS(parse_feature_line("-,1,x"), AnalogError);
  CHECK_THROWS_AS(parse_feature_line("-,1,,2"), AnalogError);
  CHECK_THROWS_AS(parse_feature_line("-,nan"), AnalogError);
}
