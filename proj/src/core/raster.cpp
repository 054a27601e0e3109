#include "infoid/core/raster.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "infoid/core/bitmap.hpp"

namespace infoid {

Raster::Raster(int w, int h, double fill) : width(w), height(h), px(static_cast<std::size_t>(w) * h, fill) {
  if (w < 0 || h < 0) throw std::invalid_argument("negative raster size");
}

bool is_unreadable(double v) { return std::fabs(v - kUnreadable) <= 1.0 / 510.0 + 1e-12; }

bool is_ink(double v) { return v >= 0.5; }

namespace {

template <typename Span>
Raster resample_with(const Raster& src, int width, int height, Span span) {
  Raster out(width, height);
  if (src.width == 0 || src.height == 0) return out;
  for (int ty = 0; ty < height; ++ty) {
    auto [ry0, ry1] = span(ty, src.height, height);
    for (int tx = 0; tx < width; ++tx) {
      auto [rx0, rx1] = span(tx, src.width, width);
      int ink = 0, gray = 0;
      for (int y = ry0; y < ry1; ++y)
        for (int x = rx0; x < rx1; ++x) {
          double v = src.at(x, y);
          if (is_unreadable(v)) {
            ++gray;
          } else if (is_ink(v)) {
            ++ink;
          }
        }
      int total = (ry1 - ry0) * (rx1 - rx0);
      if (total > 0 && 2 * gray >= total) {
        out.at(tx, ty) = kUnreadable;
      } else {
        out.at(tx, ty) = total > 0 && 2 * ink >= total ? kInk : kBlank;
      }
    }
  }
  return out;
}

}  // namespace

Raster resample(const Raster& src, int width, int height) { return resample_with(src, width, height, resample_span); }

Raster scale_raster(const Raster& src, const Rational& s) {
  return resample_with(src, static_cast<int>(s.ceil_mul(src.width)), static_cast<int>(s.ceil_mul(src.height)),
                       [&](int j, int n, int) { return scaled_span(j, n, s); });
}

void write_pgm(std::ostream& out, const Raster& r) {
  out << "P2\n" << r.width << ' ' << r.height << "\n255\n";
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      if (x) out << ' ';
      out << static_cast<int>(std::lround(255.0 * r.at(x, y)));
    }
    out << '\n';
  }
}

std::string to_pgm(const Raster& r) {
  std::ostringstream s;
  write_pgm(s, r);
  return s.str();
}

namespace {

// Next whitespace-delimited token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok += c;
  }
  return tok;
}

int pgm_int(std::istream& in, const char* what) {
  std::string t = pgm_token(in);
  if (t.empty()) throw std::runtime_error(std::string("pgm: missing ") + what);
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || v < 0) throw std::runtime_error(std::string("pgm: bad ") + what + " '" + t + "'");
  return v;
}

}  // namespace

Raster read_pgm(std::istream& in) {
  if (pgm_token(in) != "P2") throw std::runtime_error("pgm: expected P2 header");
  int w = pgm_int(in, "width");
  int h = pgm_int(in, "height");
  int maxval = pgm_int(in, "maxval");
  if (maxval <= 0) throw std::runtime_error("pgm: maxval must be positive");
  Raster r(w, h);
  for (auto& v : r.px) {
    int p = pgm_int(in, "sample");
    if (p > maxval) throw std::runtime_error("pgm: sample exceeds maxval");
    v = static_cast<double>(p) / maxval;
  }
  return r;
}

}  // namespace infoid
