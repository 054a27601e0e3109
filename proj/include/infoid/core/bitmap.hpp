#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infoid/core/rational.hpp"

namespace infoid {

// Binary pixel matrix, row-major, 1 = ink.
struct Bitmap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Bitmap() = default;
  Bitmap(int w, int h);

  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool ink) { bits[static_cast<std::size_t>(y) * width + x] = ink ? 1 : 0; }
  bool empty_ink() const;

  // Rows of '.' and '#'.
  static Bitmap from_rows(const std::vector<std::string>& rows);
  std::vector<std::string> rows() const;
  // Rows joined with '/', used by the carrier file.
  std::string compact() const;
  static Bitmap from_compact(std::string_view text);

  friend bool operator==(const Bitmap&, const Bitmap&) = default;
};

using GlyphBitmap = Bitmap;

struct InkCrop {
  Bitmap bitmap;
  int x0 = 0;  // offset of the crop inside the source
  int y0 = 0;
};

// Tight bounding box of the ink; nullopt for a blank bitmap.
std::optional<InkCrop> crop_to_ink(const Bitmap& src);

// First and last inked column, or nullopt when blank.
std::optional<std::pair<int, int>> ink_columns(const Bitmap& src);

// Cell span of target index j when n source cells are sampled onto m target
// cells: [floor(j*n/m), max(lo+1, floor((j+1)*n/m))).
std::pair<int, int> resample_span(int j, int n, int m);

// Each target cell takes the source block under it and is ink when at least
// half of that block is ink.
Bitmap resample(const Bitmap& src, int width, int height);

// Span of target index j on the fixed grid of scale s (source pixels per
// target pixel 1/s): [floor(j/s), max(lo+1, floor((j+1)/s))), clipped to n.
// The grid repeats every s.den() source pixels, so a shape's appearance
// depends only on its offset modulo the denominator.
std::pair<int, int> scaled_span(int j, int n, const Rational& s);

// Same cell rule as resample on the scale grid; ceil(w*s) x ceil(h*s).
Bitmap scale_bitmap(const Bitmap& src, const Rational& s);

}  // namespace infoid
