#pragma once

#include "movreg/geometry.hpp"
#include "movreg/rng.hpp"

namespace movreg {

// Synthetic ground-truth scenarios on a fixed world window. The canonical
// window is [0,64]x[0,32], which maps 1:1 onto a 64x32 raster.
inline constexpr double kSynthWorldWidth = 64.0;
inline constexpr double kSynthWorldHeight = 32.0;

namespace detail {

inline Ring polar_ring(Point2D center, int segments, const std::vector<double>& radii) {
  Ring ring;
  ring.points.reserve(segments + 1);
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / segments;
    ring.points.push_back({center.x + radii[k] * std::cos(a), center.y + radii[k] * std::sin(a)});
  }
  ring.points.push_back(ring.points.front());
  return ring;
}

inline Region polygon_disk(Point2D center, double radius, int segments) {
  return Region{polar_ring(center, segments, std::vector<double>(segments, radius)), {}};
}

inline Region polygon_ellipse(Point2D center, double rx, double ry, int segments) {
  Ring ring;
  ring.points.reserve(segments + 1);
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / segments;
    ring.points.push_back({center.x + rx * std::cos(a), center.y + ry * std::sin(a)});
  }
  ring.points.push_back(ring.points.front());
  return Region{std::move(ring), {}};
}

}  // namespace detail

// Concentric disk growing from r0 to r1; nested by construction.
inline SnapshotSequence synth_disk(int frames, Point2D center = {32.0, 16.0}, double r0 = 8.0,
                                   double r1 = 14.0, int segments = 64) {
  if (frames < 2) throw Error("synth_disk: need at least 2 frames");
  SnapshotSequence seq;
  seq.reserve(frames);
  for (int i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) / (frames - 1);
    Snapshot s;
    s.frame = i;
    s.t_norm = t;
    s.region = detail::polygon_disk(center, r0 + (r1 - r0) * t, segments);
    seq.push_back(std::move(s));
  }
  return seq;
}

// Ellipse that translates for the first half of the sequence, then grows.
// Not nested; exercises the general (non-monotone) path.
inline SnapshotSequence synth_blob(int frames, int segments = 64) {
  if (frames < 2) throw Error("synth_blob: need at least 2 frames");
  SnapshotSequence seq;
  seq.reserve(frames);
  for (int i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) / (frames - 1);
    const double shift = std::min(t, 0.5) * 2.0;  // 0..1 over the first half
    const double grow = std::max(t - 0.5, 0.0) * 2.0;
    Point2D center{20.0 + 18.0 * shift, 16.0};
    const double rx = 7.0 + 4.0 * grow;
    const double ry = 5.0 + 3.0 * grow;
    Snapshot s;
    s.frame = i;
    s.t_norm = t;
    s.region = detail::polygon_ellipse(center, rx, ry, segments);
    seq.push_back(std::move(s));
  }
  return seq;
}

// Star-shaped region with a fixed angular noise profile scaled by a growing
// base radius: noisy boundary, still nested frame over frame.
inline SnapshotSequence synth_noisy(int frames, std::uint64_t seed, Point2D center = {32.0, 16.0},
                                    double r0 = 6.0, double r1 = 12.0, double noise_amp = 0.25,
                                    int segments = 64) {
  if (frames < 2) throw Error("synth_noisy: need at least 2 frames");
  Rng rng(seed);
  // few random harmonics, normalized to [-1, 1]
  const int harmonics = 4;
  std::vector<double> ac(harmonics), bc(harmonics);
  for (int h = 0; h < harmonics; ++h) {
    ac[h] = rng.uniform(-1.0, 1.0);
    bc[h] = rng.uniform(-1.0, 1.0);
  }
  std::vector<double> profile(segments);
  double peak = 0.0;
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / segments;
    double v = 0.0;
    for (int h = 0; h < harmonics; ++h) v += ac[h] * std::cos((h + 1) * a) + bc[h] * std::sin((h + 1) * a);
    profile[k] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0)
    for (auto& v : profile) v /= peak;

  SnapshotSequence seq;
  seq.reserve(frames);
  for (int i = 0; i < frames; ++i) {
    const double t = static_cast<double>(i) / (frames - 1);
    const double base = r0 + (r1 - r0) * t;
    std::vector<double> radii(segments);
    for (int k = 0; k < segments; ++k) radii[k] = base * (1.0 + noise_amp * profile[k]);
    Snapshot s;
    s.frame = i;
    s.t_norm = t;
    s.region = Region{detail::polar_ring(center, segments, radii), {}};
    seq.push_back(std::move(s));
  }
  return seq;
}

inline SnapshotSequence synth_scenario(const std::string& name, int frames, std::uint64_t seed = 1) {
  if (name == "disk") return synth_disk(frames);
  if (name == "blob") return synth_blob(frames);
  if (name == "noisy") return synth_noisy(frames, seed);
  throw Error("unknown scenario '" + name + "', expected disk, blob or noisy");
}

}  // namespace movreg
