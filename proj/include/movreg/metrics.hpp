#pragma once

#include <optional>
#include <span>

#include "movreg/geometry.hpp"
#include "movreg/wkt.hpp"

namespace movreg {

// |A n B| / |A u B| by pixel counting; 1.0 when both masks are empty.
inline double jaccard_index(const RasterMask& a, const RasterMask& b) {
  if (a.width != b.width || a.height != b.height)
    throw Error("jaccard_index: dimension mismatch");
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const bool pa = a.cells[i] != 0, pb = b.cells[i] != 0;
    inter += pa && pb;
    uni += pa || pb;
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

// Foreground pixels with at least one background 8-neighbour; pixels beyond
// the grid count as background. Coordinates are pixel indices.
inline std::vector<Point2D> boundary_points(const RasterMask& m) {
  std::vector<Point2D> pts;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (!m.at(x, y)) continue;
      bool boundary = false;
      for (int dy = -1; dy <= 1 && !boundary; ++dy)
        for (int dx = -1; dx <= 1 && !boundary; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (!m.in_bounds(nx, ny) || !m.at(nx, ny)) boundary = true;
        }
      if (boundary) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  }
  return pts;
}

// All ring vertices (closure point dropped), for the polygon-vertex mode.
inline std::vector<Point2D> ring_vertices(const Region& r) {
  std::vector<Point2D> pts;
  auto add = [&](const Ring& ring) {
    for (std::size_t i = 0; i + 1 < ring.points.size(); ++i) pts.push_back(ring.points[i]);
  };
  add(r.exterior);
  for (const auto& h : r.holes) add(h);
  return pts;
}

// max over a of min over b of ||a - b||. Exact; the inner scan stops early
// once a's nearest neighbour cannot raise the running max.
inline double directed_hausdorff(std::span<const Point2D> a, std::span<const Point2D> b) {
  if (a.empty() || b.empty()) throw Error("directed_hausdorff: empty point set");
  double max_sq = 0.0;
  for (const auto& p : a) {
    double min_sq = std::numeric_limits<double>::infinity();
    for (const auto& q : b) {
      const double dx = p.x - q.x, dy = p.y - q.y;
      const double d = dx * dx + dy * dy;
      if (d < min_sq) {
        min_sq = d;
        if (min_sq <= max_sq) break;
      }
    }
    if (min_sq > max_sq) max_sq = min_sq;
  }
  return std::sqrt(max_sq);
}

inline double hausdorff(std::span<const Point2D> a, std::span<const Point2D> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

enum class HausdorffMode { boundary_pixels, polygon_vertices };

inline double hausdorff(const RasterMask& a, const RasterMask& b) {
  if (a.width != b.width || a.height != b.height) throw Error("hausdorff: dimension mismatch");
  const auto pa = boundary_points(a);
  const auto pb = boundary_points(b);
  return hausdorff(std::span<const Point2D>(pa), std::span<const Point2D>(pb));
}

struct TcSample {
  int t = 0;
  double value = 0.0;
  bool defined = true;  // false when area(A_{t+stride}) == 0
};

// TC_t = 1 - area(A_t \ A_{t+stride}) / area(A_{t+stride})
inline std::vector<TcSample> temporal_consistency(const std::vector<RasterMask>& seq, long stride) {
  if (stride <= 0) throw Error("temporal_consistency: stride must be positive");
  if (stride >= static_cast<long>(seq.size()))
    throw Error("temporal_consistency: stride must be smaller than the sequence length");
  std::vector<TcSample> out;
  out.reserve(seq.size() - static_cast<std::size_t>(stride));
  for (std::size_t t = 0; t + static_cast<std::size_t>(stride) < seq.size(); ++t) {
    const RasterMask& at = seq[t];
    const RasterMask& bt = seq[t + static_cast<std::size_t>(stride)];
    if (at.width != bt.width || at.height != bt.height)
      throw Error("temporal_consistency: dimension mismatch at t=" + std::to_string(t));
    std::size_t lost = 0, later = 0;
    for (std::size_t i = 0; i < at.cells.size(); ++i) {
      lost += at.cells[i] != 0 && bt.cells[i] == 0;
      later += bt.cells[i] != 0;
    }
    TcSample s;
    s.t = static_cast<int>(t);
    if (later == 0) {
      s.defined = false;
    } else {
      s.value = 1.0 - static_cast<double>(lost) / static_cast<double>(later);
    }
    out.push_back(s);
  }
  return out;
}

struct TcReport {
  std::vector<long> strides;
  std::vector<double> per_stride_mean;
  std::vector<double> per_stride_sd;
  std::vector<std::vector<TcSample>> per_stride_samples;
  std::vector<long> skipped_strides;
  double overall_mean = 0.0;
};

struct MetricSummary {
  double mean = 0, sd = 0, min = 0, max = 0;
  std::size_t n = 0;
};

inline MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  s.n = values.size();
  if (values.empty()) return s;
  s.min = std::numeric_limits<double>::infinity();
  s.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(var / static_cast<double>(values.size()));
  return s;
}

// Strides from the geometric progression a * r^(n-1); strides that do not fit
// the sequence are skipped, and the overall mean averages the per-stride means.
inline TcReport tc_sweep(const std::vector<RasterMask>& seq, long a, long r, int n_terms) {
  if (a < 1 || r < 1 || n_terms < 1) throw Error("tc_sweep: a, r and N must be positive");
  TcReport report;
  long stride = a;
  for (int n = 0; n < n_terms; ++n) {
    if (stride >= static_cast<long>(seq.size())) {
      report.skipped_strides.push_back(stride);
    } else {
      auto samples = temporal_consistency(seq, stride);
      std::vector<double> defined;
      defined.reserve(samples.size());
      for (const auto& s : samples)
        if (s.defined) defined.push_back(s.value);
      if (defined.empty()) {
        report.skipped_strides.push_back(stride);
      } else {
        const MetricSummary sum = summarize(defined);
        report.strides.push_back(stride);
        report.per_stride_mean.push_back(sum.mean);
        report.per_stride_sd.push_back(sum.sd);
        report.per_stride_samples.push_back(std::move(samples));
      }
    }
    if (n + 1 < n_terms) {
      if (stride > std::numeric_limits<long>::max() / r) break;  // overflow guard
      stride *= r;
    }
  }
  if (report.strides.empty()) throw Error("tc_sweep: no valid stride");
  double sum = 0.0;
  for (double m : report.per_stride_mean) sum += m;
  report.overall_mean = sum / static_cast<double>(report.per_stride_mean.size());
  return report;
}

struct SimilarityRow {
  long frame = 0;
  double ji = 0.0;
  double hd = 0.0;
  bool hd_defined = true;
};

struct SimilarityReport {
  std::vector<SimilarityRow> per_frame;
  MetricSummary ji_summary;
  MetricSummary hd_summary;
};

inline SimilarityReport make_similarity_report(std::vector<SimilarityRow> rows) {
  SimilarityReport report;
  report.per_frame = std::move(rows);
  std::vector<double> jis, hds;
  for (const auto& r : report.per_frame) {
    jis.push_back(r.ji);
    if (r.hd_defined) hds.push_back(r.hd);
  }
  report.ji_summary = summarize(jis);
  report.hd_summary = summarize(hds);
  return report;
}

inline std::string similarity_to_csv(const SimilarityReport& report) {
  std::string out = "frame,ji,hd\n";
  for (const auto& r : report.per_frame) {
    out += std::to_string(r.frame);
    out += ',';
    out += format_double(r.ji);
    out += ',';
    if (r.hd_defined) out += format_double(r.hd);
    out += '\n';
  }
  return out;
}

inline std::string tc_to_csv(const TcReport& report) {
  std::string out = "stride,t,tc\n";
  for (std::size_t i = 0; i < report.strides.size(); ++i) {
    for (const auto& s : report.per_stride_samples[i]) {
      if (!s.defined) continue;
      out += std::to_string(report.strides[i]);
      out += ',';
      out += std::to_string(s.t);
      out += ',';
      out += format_double(s.value);
      out += '\n';
    }
  }
  return out;
}

}  // namespace movreg
