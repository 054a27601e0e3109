#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "infoid/core/rational.hpp"

namespace infoid {

inline constexpr double kBlank = 0.0;
inline constexpr double kInk = 1.0;
inline constexpr double kUnreadable = 0.5;

// Intensity matrix with values in [0,1], row-major.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> px;

  Raster() = default;
  Raster(int w, int h, double fill = kBlank);

  double at(int x, int y) const { return px[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return px[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const Raster&, const Raster&) = default;
};

// Mid-gray marks pixels whose content could not be read. The band is half a
// PGM quantization step wide so exported rasters read back the same way.
bool is_unreadable(double v);
bool is_ink(double v);

// Resample with the glyph rule; a target cell whose block is at least half
// unreadable stays unreadable.
Raster resample(const Raster& src, int width, int height);
// Same rule on the fixed grid of scale s (see scaled_span).
Raster scale_raster(const Raster& src, const Rational& s);

// Plain PGM (P2), maxval 255, one raster row per line.
void write_pgm(std::ostream& out, const Raster& r);
std::string to_pgm(const Raster& r);
Raster read_pgm(std::istream& in);

}  // namespace infoid
