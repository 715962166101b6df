#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace movreg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point2D& a, const Point2D& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const Point2D& a, const Point2D& b) { return !(a == b); }

// Closed loop: points.front() == points.back(), at least 4 points including
// the closing one.
struct Ring {
  std::vector<Point2D> points;
};

struct Region {
  Ring exterior;
  std::vector<Ring> holes;

  bool empty() const { return exterior.points.empty(); }
};

// world -> pixel: px = sx*x + tx, py = sy*y + ty
struct AffineTransform {
  double sx = 1.0;
  double sy = 1.0;
  double tx = 0.0;
  double ty = 0.0;

  Point2D to_pixel(const Point2D& p) const { return {sx * p.x + tx, sy * p.y + ty}; }
  Point2D to_world(const Point2D& p) const { return {(p.x - tx) / sx, (p.y - ty) / sy}; }
  double pixel_area() const { return 1.0 / std::abs(sx * sy); }
};

inline bool operator==(const AffineTransform& a, const AffineTransform& b) {
  return a.sx == b.sx && a.sy == b.sy && a.tx == b.tx && a.ty == b.ty;
}
inline bool operator!=(const AffineTransform& a, const AffineTransform& b) { return !(a == b); }

// Binary occupancy grid, row-major, pixel (x, y) center at pixel-space
// (x + 0.5, y + 0.5).
struct RasterMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;
  AffineTransform transform;

  static RasterMask zeros(int width, int height, const AffineTransform& transform = {}) {
    if (width < 2 || height < 2) throw Error("RasterMask: width and height must be >= 2");
    RasterMask m;
    m.width = width;
    m.height = height;
    m.cells.assign(static_cast<std::size_t>(width) * height, 0);
    m.transform = transform;
    return m;
  }

  bool at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { cells[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto c : cells) n += c != 0;
    return n;
  }

  bool same_geometry(const RasterMask& o) const {
    return width == o.width && height == o.height && transform == o.transform;
  }
};

inline bool operator==(const RasterMask& a, const RasterMask& b) {
  return a.same_geometry(b) && a.cells == b.cells;
}

struct Snapshot {
  long frame = 0;
  double t_norm = 0.0;
  Region region;
};

using SnapshotSequence = std::vector<Snapshot>;

struct BoundingBox {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
};

inline double signed_area(const Ring& r) {
  double a = 0.0;
  const auto& p = r.points;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) a += p[i].x * p[i + 1].y - p[i + 1].x * p[i].y;
  return 0.5 * a;
}

// exterior area minus holes
inline double area(const Region& r) {
  double a = std::abs(signed_area(r.exterior));
  for (const auto& h : r.holes) a -= std::abs(signed_area(h));
  return a;
}

inline double perimeter(const Ring& r) {
  double len = 0.0;
  const auto& p = r.points;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) len += std::hypot(p[i + 1].x - p[i].x, p[i + 1].y - p[i].y);
  return len;
}

inline BoundingBox bounding_box(const Region& r) {
  BoundingBox b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : r.exterior.points) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

namespace detail {

inline double cross3(const Point2D& o, const Point2D& a, const Point2D& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// p assumed collinear with [a, b]
inline bool on_segment(const Point2D& p, const Point2D& a, const Point2D& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace detail

// Proper crossings and touching both count as intersection.
inline bool segments_intersect(const Point2D& a, const Point2D& b, const Point2D& c, const Point2D& d) {
  using detail::cross3;
  using detail::on_segment;
  const double d1 = cross3(c, d, a);
  const double d2 = cross3(c, d, b);
  const double d3 = cross3(a, b, c);
  const double d4 = cross3(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

enum class ViolationKind {
  unclosed_ring,
  too_few_points,
  duplicate_point,
  nonfinite_coordinate,
  self_intersection,
  hole_exterior_intersection,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::unclosed_ring: return "unclosed_ring";
    case ViolationKind::too_few_points: return "too_few_points";
    case ViolationKind::duplicate_point: return "duplicate_point";
    case ViolationKind::nonfinite_coordinate: return "nonfinite_coordinate";
    case ViolationKind::self_intersection: return "self_intersection";
    case ViolationKind::hole_exterior_intersection: return "hole_exterior_intersection";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    for (const auto& v : violations)
      if (v.kind == k) return true;
    return false;
  }
};

namespace detail {

inline void validate_ring(const Ring& ring, const std::string& name, ValidationReport& report) {
  const auto& p = ring.points;
  for (const auto& q : p) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) {
      report.violations.push_back({ViolationKind::nonfinite_coordinate, name + ": non-finite coordinate"});
      return;
    }
  }
  if (p.size() < 4) {
    report.violations.push_back(
        {ViolationKind::too_few_points, name + ": ring has " + std::to_string(p.size()) + " points, need >= 4"});
  }
  if (p.size() >= 2 && p.front() != p.back()) {
    report.violations.push_back({ViolationKind::unclosed_ring, name + ": first point != last point"});
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (p[i] == p[i + 1]) {
      report.violations.push_back(
          {ViolationKind::duplicate_point, name + ": consecutive duplicate at index " + std::to_string(i)});
      break;
    }
  }
  // all non-adjacent segment pairs, closure adjacency included
  const std::size_t n = p.size() >= 2 ? p.size() - 1 : 0;  // segment count
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // shares the closing point
      if (segments_intersect(p[i], p[i + 1], p[j], p[j + 1])) {
        report.violations.push_back({ViolationKind::self_intersection,
                                     name + ": segments " + std::to_string(i) + " and " + std::to_string(j)});
        return;
      }
    }
  }
}

}  // namespace detail

// Report, not exception: lists every class of violation found.
inline ValidationReport validate_region(const Region& region) {
  ValidationReport report;
  detail::validate_ring(region.exterior, "exterior", report);
  for (std::size_t h = 0; h < region.holes.size(); ++h)
    detail::validate_ring(region.holes[h], "hole " + std::to_string(h), report);

  const auto& ext = region.exterior.points;
  const std::size_t ne = ext.size() >= 2 ? ext.size() - 1 : 0;
  for (std::size_t h = 0; h < region.holes.size(); ++h) {
    const auto& hp = region.holes[h].points;
    const std::size_t nh = hp.size() >= 2 ? hp.size() - 1 : 0;
    bool hit = false;
    for (std::size_t i = 0; i < ne && !hit; ++i) {
      for (std::size_t j = 0; j < nh && !hit; ++j) {
        if (segments_intersect(ext[i], ext[i + 1], hp[j], hp[j + 1])) {
          report.violations.push_back({ViolationKind::hole_exterior_intersection,
                                       "hole " + std::to_string(h) + " intersects exterior"});
          hit = true;
        }
      }
    }
  }
  return report;
}

}  // namespace movreg
