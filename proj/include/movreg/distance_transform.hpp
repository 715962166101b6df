#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "movreg/geometry.hpp"
#include "movreg/wkt.hpp"

namespace movreg {

// Per-pixel signed Euclidean distance to the nearest opposite-class pixel
// center, in pixel units: positive at foreground, negative at background.
// Minimum magnitude is 1 at pixels adjacent to the class boundary.
struct SignedDistanceMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  AffineTransform transform;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

  bool same_geometry(const SignedDistanceMap& o) const {
    return width == o.width && height == o.height && transform == o.transform;
  }
};

namespace detail {

// Squared distances for columns with no foreground. Large enough to lose to
// any in-grid parabola, small enough to keep intersection arithmetic finite.
constexpr double kFarSq = 1e20;

// 1D squared distance transform by lower envelope of parabolas
// (Felzenszwalb & Huttenlocher). Exact for integer-valued inputs.
inline void squared_dt_1d(const std::vector<double>& f, int n, std::vector<double>& d,
                          std::vector<int>& v, std::vector<double>& z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + static_cast<double>(q) * q) - (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + static_cast<double>(q) * q) - (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dx = q - v[k];
    d[q] = dx * dx + f[v[k]];
  }
}

}  // namespace detail

// Exact Euclidean distance (pixel units) to the nearest foreground pixel.
inline std::vector<double> edt(const RasterMask& mask) {
  const int w = mask.width, h = mask.height;
  std::size_t fg = mask.count();
  if (fg == 0) throw Error("edt: no foreground");

  // vertical pass: per-column distance to nearest foreground pixel
  std::vector<double> colsq(static_cast<std::size_t>(w) * h);
  const int far = w + h + 1;
  for (int x = 0; x < w; ++x) {
    int dist = far;
    for (int y = 0; y < h; ++y) {
      dist = mask.at(x, y) ? 0 : (dist >= far ? far : dist + 1);
      colsq[static_cast<std::size_t>(y) * w + x] = dist >= far ? detail::kFarSq : static_cast<double>(dist) * dist;
    }
    dist = far;
    for (int y = h - 1; y >= 0; --y) {
      dist = mask.at(x, y) ? 0 : (dist >= far ? far : dist + 1);
      if (dist < far) {
        auto& cell = colsq[static_cast<std::size_t>(y) * w + x];
        cell = std::min(cell, static_cast<double>(dist) * dist);
      }
    }
  }

  // horizontal pass: lower envelope per row
  std::vector<double> out(static_cast<std::size_t>(w) * h);
  std::vector<double> f(w), d(w), z(static_cast<std::size_t>(w) + 1);
  std::vector<int> v(w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f[x] = colsq[static_cast<std::size_t>(y) * w + x];
    detail::squared_dt_1d(f, w, d, v, z);
    for (int x = 0; x < w; ++x) out[static_cast<std::size_t>(y) * w + x] = std::sqrt(d[x]);
  }
  return out;
}

inline SignedDistanceMap signed_distance(const RasterMask& mask) {
  const std::size_t fg = mask.count();
  if (fg == 0 || fg == mask.cells.size())
    throw Error("signed_distance: degenerate mask (single class)");

  RasterMask complement = mask;
  for (auto& c : complement.cells) c = c ? 0 : 1;

  const std::vector<double> to_fg = edt(mask);        // distance to nearest foreground
  const std::vector<double> to_bg = edt(complement);  // distance to nearest background

  SignedDistanceMap sdm;
  sdm.width = mask.width;
  sdm.height = mask.height;
  sdm.transform = mask.transform;
  sdm.values.resize(mask.cells.size());
  for (std::size_t i = 0; i < mask.cells.size(); ++i)
    sdm.values[i] = mask.cells[i] ? to_bg[i] : -to_fg[i];
  return sdm;
}

// Portable text grid: "width height" then one row per line.
inline std::string dump_sdm(const SignedDistanceMap& sdm) {
  std::string out = std::to_string(sdm.width) + " " + std::to_string(sdm.height) + "\n";
  for (int y = 0; y < sdm.height; ++y) {
    for (int x = 0; x < sdm.width; ++x) {
      if (x) out += ' ';
      out += format_double(sdm.at(x, y));
    }
    out += '\n';
  }
  return out;
}

inline SignedDistanceMap parse_sdm(std::string_view text) {
  SignedDistanceMap sdm;
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string_view {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw Error("parse_sdm: unexpected end of input");
    return text.substr(start, pos - start);
  };
  auto parse_int = [&](std::string_view tok) {
    int value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{}) throw Error("parse_sdm: bad integer");
    return value;
  };
  sdm.width = parse_int(next_token());
  sdm.height = parse_int(next_token());
  if (sdm.width < 2 || sdm.height < 2) throw Error("parse_sdm: bad dimensions");
  sdm.values.resize(static_cast<std::size_t>(sdm.width) * sdm.height);
  for (auto& v : sdm.values) {
    auto tok = next_token();
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{}) throw Error("parse_sdm: bad value");
  }
  return sdm;
}

}  // namespace movreg
