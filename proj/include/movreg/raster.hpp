#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <queue>
#include <utility>

#include "movreg/geometry.hpp"

namespace movreg {

struct RasterizeInfo {
  bool empty_output = false;  // no pixel center covered
  bool outside_grid = false;  // region bounding box misses the grid entirely
};

// Even-odd scanline fill at pixel centers. Hole rings flip parity, so they
// come out as background without special casing.
inline RasterMask rasterize(const Region& region, int width, int height,
                            const AffineTransform& transform, RasterizeInfo* info = nullptr) {
  RasterMask mask = RasterMask::zeros(width, height, transform);

  struct Edge {
    double x1, y1, x2, y2;
  };
  std::vector<Edge> edges;
  auto add_ring = [&](const Ring& ring) {
    for (std::size_t i = 0; i + 1 < ring.points.size(); ++i) {
      Point2D a = transform.to_pixel(ring.points[i]);
      Point2D b = transform.to_pixel(ring.points[i + 1]);
      if (a.y != b.y) edges.push_back({a.x, a.y, b.x, b.y});  // horizontal edges never cross a scanline
    }
  };
  add_ring(region.exterior);
  for (const auto& hole : region.holes) add_ring(hole);

  std::vector<double> xs;
  for (int row = 0; row < height; ++row) {
    const double y = row + 0.5;
    xs.clear();
    for (const auto& e : edges) {
      // half-open span so shared vertices are counted once
      if ((e.y1 <= y && y < e.y2) || (e.y2 <= y && y < e.y1))
        xs.push_back(e.x1 + (y - e.y1) * (e.x2 - e.x1) / (e.y2 - e.y1));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // pixel centers i + 0.5 in [xs[k], xs[k+1])
      int i0 = static_cast<int>(std::ceil(xs[k] - 0.5));
      int i1 = static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1;
      i0 = std::max(i0, 0);
      i1 = std::min(i1, width - 1);
      for (int i = i0; i <= i1; ++i) mask.set(i, row, true);
    }
  }

  if (info) {
    info->empty_output = mask.count() == 0;
    info->outside_grid = false;
    if (!region.empty()) {
      BoundingBox bb = bounding_box(region);
      Point2D lo = transform.to_pixel({bb.xmin, bb.ymin});
      Point2D hi = transform.to_pixel({bb.xmax, bb.ymax});
      double pxmin = std::min(lo.x, hi.x), pxmax = std::max(lo.x, hi.x);
      double pymin = std::min(lo.y, hi.y), pymax = std::max(lo.y, hi.y);
      info->outside_grid = pxmax < 0 || pxmin > width || pymax < 0 || pymin > height;
    }
  }
  return mask;
}

struct VectorizeInfo {
  int components = 0;
  int dropped_components = 0;
};

namespace detail {

// 4-connected foreground labels, -1 = background. Deterministic row-major BFS.
inline std::vector<int> label_components(const RasterMask& mask, std::vector<std::size_t>& sizes) {
  std::vector<int> labels(mask.cells.size(), -1);
  sizes.clear();
  std::queue<std::pair<int, int>> frontier;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y) || labels[static_cast<std::size_t>(y) * mask.width + x] >= 0) continue;
      const int lab = static_cast<int>(sizes.size());
      sizes.push_back(0);
      labels[static_cast<std::size_t>(y) * mask.width + x] = lab;
      frontier.push({x, y});
      while (!frontier.empty()) {
        auto [cx, cy] = frontier.front();
        frontier.pop();
        ++sizes[lab];
        const int nx[4] = {cx - 1, cx + 1, cx, cx};
        const int ny[4] = {cy, cy, cy - 1, cy + 1};
        for (int k = 0; k < 4; ++k) {
          if (!mask.in_bounds(nx[k], ny[k]) || !mask.at(nx[k], ny[k])) continue;
          auto& l = labels[static_cast<std::size_t>(ny[k]) * mask.width + nx[k]];
          if (l < 0) {
            l = lab;
            frontier.push({nx[k], ny[k]});
          }
        }
      }
    }
  }
  return labels;
}

// Integer vertex in doubled pixel coordinates (pixel (x,y) center = (2x+1, 2y+1)).
using VertexKey = std::int64_t;

inline VertexKey make_key(std::int64_t x2, std::int64_t y2) { return (x2 << 32) | (y2 & 0xffffffffll); }
inline std::int64_t key_x(VertexKey k) { return k >> 32; }
inline std::int64_t key_y(VertexKey k) { return static_cast<std::int32_t>(k & 0xffffffffll); }

struct MsSegment {
  VertexKey a, b;
};

// Marching squares over the mask padded with one background pixel on every
// side so contours always close. Saddles resolve by average-of-corners sign
// (two foreground corners out of four -> center treated as foreground).
inline std::vector<MsSegment> marching_squares(const RasterMask& mask) {
  auto fg = [&](int x, int y) -> bool { return mask.in_bounds(x, y) && mask.at(x, y); };
  std::vector<MsSegment> segments;
  for (int cy = -1; cy < mask.height; ++cy) {
    for (int cx = -1; cx < mask.width; ++cx) {
      const bool c0 = fg(cx, cy);          // top-left
      const bool c1 = fg(cx + 1, cy);      // top-right
      const bool c2 = fg(cx + 1, cy + 1);  // bottom-right
      const bool c3 = fg(cx, cy + 1);      // bottom-left
      const int idx = (c0 ? 1 : 0) | (c1 ? 2 : 0) | (c2 ? 4 : 0) | (c3 ? 8 : 0);
      if (idx == 0 || idx == 15) continue;

      const std::int64_t bx = 2ll * cx, by = 2ll * cy;
      const VertexKey top = make_key(bx + 2, by + 1);
      const VertexKey right = make_key(bx + 3, by + 2);
      const VertexKey bottom = make_key(bx + 2, by + 3);
      const VertexKey left = make_key(bx + 1, by + 2);

      switch (idx) {
        case 1: case 14: segments.push_back({top, left}); break;
        case 2: case 13: segments.push_back({top, right}); break;
        case 4: case 11: segments.push_back({right, bottom}); break;
        case 8: case 7: segments.push_back({left, bottom}); break;
        case 3: case 12: segments.push_back({left, right}); break;
        case 6: case 9: segments.push_back({top, bottom}); break;
        case 5:  // c0 + c2: center counts as foreground, isolate the two background corners
          segments.push_back({top, right});
          segments.push_back({left, bottom});
          break;
        case 10:  // c1 + c3
          segments.push_back({top, left});
          segments.push_back({right, bottom});
          break;
      }
    }
  }
  return segments;
}

// Chain segments into closed loops. Every vertex has degree exactly 2.
inline std::vector<std::vector<VertexKey>> assemble_loops(const std::vector<MsSegment>& segments) {
  std::map<VertexKey, std::array<std::int32_t, 2>> incident;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (VertexKey v : {segments[i].a, segments[i].b}) {
      auto [it, fresh] = incident.try_emplace(v, std::array<std::int32_t, 2>{-1, -1});
      auto& slots = it->second;
      if (slots[0] < 0)
        slots[0] = static_cast<std::int32_t>(i);
      else if (slots[1] < 0)
        slots[1] = static_cast<std::int32_t>(i);
      else
        throw Error("vectorize: vertex degree > 2 in contour graph");
      (void)fresh;
    }
  }

  std::vector<std::vector<VertexKey>> loops;
  std::vector<bool> used(segments.size(), false);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    std::vector<VertexKey> loop;
    VertexKey start = segments[s].a;
    VertexKey current = start;
    std::size_t seg = s;
    do {
      used[seg] = true;
      loop.push_back(current);
      current = segments[seg].a == current ? segments[seg].b : segments[seg].a;
      const auto& slots = incident.at(current);
      std::size_t next = slots[0] == static_cast<std::int32_t>(seg) ? static_cast<std::size_t>(slots[1])
                                                                    : static_cast<std::size_t>(slots[0]);
      seg = next;
    } while (current != start);
    loops.push_back(std::move(loop));
  }
  return loops;
}

// Drop vertices on a straight run; exact on the integer vertex grid.
inline void merge_collinear(std::vector<VertexKey>& loop) {
  if (loop.size() < 3) return;
  std::vector<VertexKey> out;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const VertexKey prev = loop[(i + n - 1) % n];
    const VertexKey cur = loop[i];
    const VertexKey next = loop[(i + 1) % n];
    const std::int64_t ax = key_x(cur) - key_x(prev), ay = key_y(cur) - key_y(prev);
    const std::int64_t bx = key_x(next) - key_x(cur), by = key_y(next) - key_y(cur);
    if (ax * by - ay * bx != 0) out.push_back(cur);
  }
  if (out.size() >= 3) loop = std::move(out);
}

inline double loop_pixel_area(const std::vector<VertexKey>& loop) {
  double a = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const VertexKey p = loop[i], q = loop[(i + 1) % n];
    a += static_cast<double>(key_x(p)) * static_cast<double>(key_y(q)) -
         static_cast<double>(key_x(q)) * static_cast<double>(key_y(p));
  }
  return 0.5 * a / 4.0;  // doubled coordinates
}

inline Ring loop_to_world_ring(const std::vector<VertexKey>& loop, const AffineTransform& t,
                               bool want_ccw) {
  Ring ring;
  ring.points.reserve(loop.size() + 1);
  for (VertexKey v : loop)
    ring.points.push_back(t.to_world({static_cast<double>(key_x(v)) / 2.0, static_cast<double>(key_y(v)) / 2.0}));
  ring.points.push_back(ring.points.front());
  const bool ccw = signed_area(ring) > 0;
  if (ccw != want_ccw) std::reverse(ring.points.begin(), ring.points.end());
  return ring;
}

}  // namespace detail

// Marching-squares contour of the largest foreground component; enclosed
// background cavities become holes. Output coordinates are world units.
// Exterior is counter-clockwise, holes clockwise.
inline Region vectorize(const RasterMask& mask, VectorizeInfo* info = nullptr) {
  std::vector<std::size_t> sizes;
  std::vector<int> labels = detail::label_components(mask, sizes);
  if (sizes.empty()) throw Error("vectorize: no foreground");

  int keep = 0;
  for (int i = 1; i < static_cast<int>(sizes.size()); ++i)
    if (sizes[i] > sizes[keep]) keep = i;
  if (info) {
    info->components = static_cast<int>(sizes.size());
    info->dropped_components = static_cast<int>(sizes.size()) - 1;
  }

  RasterMask largest = RasterMask::zeros(mask.width, mask.height, mask.transform);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (labels[static_cast<std::size_t>(y) * mask.width + x] == keep) largest.set(x, y, true);

  auto segments = detail::marching_squares(largest);
  auto loops = detail::assemble_loops(segments);
  for (auto& loop : loops) detail::merge_collinear(loop);

  std::size_t outer = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const double a = std::abs(detail::loop_pixel_area(loops[i]));
    if (a > best) {
      best = a;
      outer = i;
    }
  }

  Region region;
  region.exterior = detail::loop_to_world_ring(loops[outer], mask.transform, true);
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (i != outer) region.holes.push_back(detail::loop_to_world_ring(loops[i], mask.transform, false));
  return region;
}

}  // namespace movreg
