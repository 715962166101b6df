#pragma once

#include "movreg/distance_transform.hpp"
#include "movreg/raster.hpp"

namespace movreg {

// Per-pixel linear interpolation between two signed distance maps.
inline SignedDistanceMap blend_sdm(const SignedDistanceMap& z1, const SignedDistanceMap& z2, double w) {
  if (!z1.same_geometry(z2)) throw Error("blend_sdm: dimension mismatch");
  if (!(w >= 0.0 && w <= 1.0)) throw Error("blend_sdm: weight must be in [0, 1]");
  SignedDistanceMap out = z1;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = (1.0 - w) * z1.values[i] + w * z2.values[i];
  return out;
}

// Foreground wherever the interpolated distance is >= 0.
inline RasterMask zero_crossing_mask(const SignedDistanceMap& z) {
  RasterMask mask = RasterMask::zeros(z.width, z.height, z.transform);
  for (std::size_t i = 0; i < z.values.size(); ++i) mask.cells[i] = z.values[i] >= 0.0 ? 1 : 0;
  return mask;
}

struct InterpolatedFrame {
  long frame = 0;
  bool is_support = false;
  bool empty_output = false;  // blended zero set vanished; region left empty
  RasterMask mask;
  Region region;
};

// In-between regions for every requested frame: support snapshots bracket the
// target, their signed distance maps are blended with w = (f-f1)/(f2-f1) and
// the zero-crossing set is vectorized back to a polygon. Support frames pass
// through their own rasterized-then-vectorized region.
inline std::vector<InterpolatedFrame> shape_based_sequence(const SnapshotSequence& supports,
                                                           const std::vector<long>& frames,
                                                           int width, int height,
                                                           const AffineTransform& transform) {
  if (supports.empty()) throw Error("shape_based_sequence: no support snapshots");
  for (std::size_t i = 0; i + 1 < supports.size(); ++i)
    if (supports[i].frame >= supports[i + 1].frame)
      throw Error("shape_based_sequence: support snapshots must be strictly increasing in frame");

  struct SupportData {
    RasterMask mask;
    SignedDistanceMap sdm;
  };
  std::vector<SupportData> cache;
  cache.reserve(supports.size());
  for (const auto& s : supports) {
    SupportData data;
    data.mask = rasterize(s.region, width, height, transform);
    const std::size_t fg = data.mask.count();
    if (fg == 0 || fg == data.mask.cells.size())
      throw Error("shape_based_sequence: support frame " + std::to_string(s.frame) +
                  " rasterizes to a single class");
    data.sdm = signed_distance(data.mask);
    cache.push_back(std::move(data));
  }

  std::vector<InterpolatedFrame> out;
  out.reserve(frames.size());
  for (long f : frames) {
    if (f < supports.front().frame || f > supports.back().frame)
      throw Error("shape_based_sequence: frame " + std::to_string(f) +
                  " outside support range, extrapolation not supported");

    InterpolatedFrame rec;
    rec.frame = f;

    // bracketing supports f1 <= f <= f2
    std::size_t hi = 0;
    while (supports[hi].frame < f) ++hi;
    if (supports[hi].frame == f) {
      rec.is_support = true;
      rec.mask = cache[hi].mask;
      rec.region = vectorize(rec.mask);
    } else {
      const std::size_t lo = hi - 1;
      const double w = static_cast<double>(f - supports[lo].frame) /
                       static_cast<double>(supports[hi].frame - supports[lo].frame);
      rec.mask = zero_crossing_mask(blend_sdm(cache[lo].sdm, cache[hi].sdm, w));
      if (rec.mask.count() == 0) {
        rec.empty_output = true;  // keep the frame slot, caller decides
      } else {
        rec.region = vectorize(rec.mask);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace movreg
