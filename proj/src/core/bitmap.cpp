#include "infoid/core/bitmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace infoid {

Bitmap::Bitmap(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {
  if (w < 0 || h < 0) throw std::invalid_argument("negative bitmap size");
}

bool Bitmap::empty_ink() const {
  return std::none_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; });
}

Bitmap Bitmap::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("bitmap needs at least one row");
  Bitmap b(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  if (b.width == 0) throw std::invalid_argument("bitmap needs at least one column");
  for (int y = 0; y < b.height; ++y) {
    const auto& r = rows[y];
    if (static_cast<int>(r.size()) != b.width) throw std::invalid_argument("ragged bitmap rows");
    for (int x = 0; x < b.width; ++x) {
      if (r[x] == '#') {
        b.set(x, y, true);
      } else if (r[x] != '.') {
        throw std::invalid_argument(std::string("bad bitmap cell '") + r[x] + "'");
      }
    }
  }
  return b;
}

std::vector<std::string> Bitmap::rows() const {
  std::vector<std::string> out;
  out.reserve(height);
  for (int y = 0; y < height; ++y) {
    std::string r(width, '.');
    for (int x = 0; x < width; ++x)
      if (at(x, y)) r[x] = '#';
    out.push_back(std::move(r));
  }
  return out;
}

std::string Bitmap::compact() const {
  std::string out;
  for (const auto& r : rows()) {
    if (!out.empty()) out += '/';
    out += r;
  }
  return out;
}

Bitmap Bitmap::from_compact(std::string_view text) {
  std::vector<std::string> rows;
  std::size_t start = 0;
  while (true) {
    auto slash = text.find('/', start);
    rows.emplace_back(text.substr(start, slash == std::string_view::npos ? text.npos : slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return from_rows(rows);
}

std::optional<InkCrop> crop_to_ink(const Bitmap& src) {
  int x0 = src.width, y0 = src.height, x1 = -1, y1 = -1;
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x)
      if (src.at(x, y)) {
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) return std::nullopt;
  InkCrop c{Bitmap(x1 - x0 + 1, y1 - y0 + 1), x0, y0};
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) c.bitmap.set(x - x0, y - y0, src.at(x, y));
  return c;
}

std::optional<std::pair<int, int>> ink_columns(const Bitmap& src) {
  int lo = -1, hi = -1;
  for (int x = 0; x < src.width; ++x)
    for (int y = 0; y < src.height; ++y)
      if (src.at(x, y)) {
        if (lo < 0) lo = x;
        hi = x;
        break;
      }
  if (lo < 0) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::pair<int, int> resample_span(int j, int n, int m) {
  long long lo = static_cast<long long>(j) * n / m;
  long long hi = static_cast<long long>(j + 1) * n / m;
  if (hi < lo + 1) hi = lo + 1;
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

Bitmap resample(const Bitmap& src, int width, int height) {
  Bitmap out(width, height);
  if (src.width == 0 || src.height == 0) return out;
  for (int ty = 0; ty < height; ++ty) {
    auto [ry0, ry1] = resample_span(ty, src.height, height);
    for (int tx = 0; tx < width; ++tx) {
      auto [rx0, rx1] = resample_span(tx, src.width, width);
      int ink = 0;
      for (int y = ry0; y < ry1; ++y)
        for (int x = rx0; x < rx1; ++x) ink += src.at(x, y) ? 1 : 0;
      out.set(tx, ty, 2 * ink >= (ry1 - ry0) * (rx1 - rx0));
    }
  }
  return out;
}

std::pair<int, int> scaled_span(int j, int n, const Rational& s) {
  long long lo = static_cast<long long>(j) * s.den() / s.num();
  long long hi = static_cast<long long>(j + 1) * s.den() / s.num();
  if (hi < lo + 1) hi = lo + 1;
  return {static_cast<int>(std::min<long long>(lo, n)), static_cast<int>(std::min<long long>(hi, n))};
}

Bitmap scale_bitmap(const Bitmap& src, const Rational& s) {
  Bitmap out(static_cast<int>(s.ceil_mul(src.width)), static_cast<int>(s.ceil_mul(src.height)));
  for (int ty = 0; ty < out.height; ++ty) {
    auto [ry0, ry1] = scaled_span(ty, src.height, s);
    for (int tx = 0; tx < out.width; ++tx) {
      auto [rx0, rx1] = scaled_span(tx, src.width, s);
      int ink = 0;
      for (int y = ry0; y < ry1; ++y)
        for (int x = rx0; x < rx1; ++x) ink += src.at(x, y) ? 1 : 0;
      int total = (ry1 - ry0) * (rx1 - rx0);
      out.set(tx, ty, total > 0 && 2 * ink >= total);
    }
  }
  return out;
}

}  // namespace infoid
