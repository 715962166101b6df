#pragma once

#include <optional>

#include "movreg/metrics.hpp"
#include "movreg/raster.hpp"

namespace movreg {

struct CompressionMethod {
  enum class Kind { periodic, distance };
  Kind kind = Kind::periodic;
  long d = 1;          // periodic downsampling factor
  double alpha = 0.0;  // distance threshold
};

struct CompressionResult {
  SnapshotSequence kept;                   // order-preserving subsequence, kept[0] = input[0]
  std::vector<std::size_t> kept_indices;   // indices into the input sequence
  long dropped_count = 0;
  CompressionMethod method;
  std::vector<double> pairwise_distances;  // Jaccard distance of consecutive kept pairs
  bool final_forced = false;               // last snapshot appended outside the rule
};

inline double jaccard_distance(const RasterMask& a, const RasterMask& b) {
  return 1.0 - jaccard_index(a, b);
}

// Keep indices {i*d : i*d < n}. The interpolators cannot extrapolate past the
// last support sample, so the final snapshot is appended by default when the
// rule misses it.
inline CompressionResult periodic_sample(const SnapshotSequence& seq, long d,
                                         bool include_final = true) {
  if (d < 1) throw Error("periodic_sample: d must be >= 1");
  if (seq.empty()) throw Error("periodic_sample: empty sequence");
  CompressionResult result;
  result.method.kind = CompressionMethod::Kind::periodic;
  result.method.d = d;
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(d)) {
    result.kept.push_back(seq[i]);
    result.kept_indices.push_back(i);
  }
  if (include_final && result.kept_indices.back() != n - 1) {
    result.kept.push_back(seq[n - 1]);
    result.kept_indices.push_back(n - 1);
    result.final_forced = true;
  }
  result.dropped_count = static_cast<long>(n - result.kept.size());
  return result;
}

// Scan in order, keeping a snapshot only when its Jaccard distance to the
// last kept one exceeds alpha (strictly). Stops once max_len is reached.
inline CompressionResult distance_based_sample(const SnapshotSequence& seq, double alpha,
                                               std::optional<std::size_t> max_len, int width,
                                               int height, const AffineTransform& transform,
                                               bool include_final = true) {
  if (seq.empty()) throw Error("distance_based_sample: empty sequence");
  if (alpha < 0.0) throw Error("distance_based_sample: alpha must be >= 0");
  if (max_len && *max_len < 1) throw Error("distance_based_sample: max_len must be >= 1");

  CompressionResult result;
  result.method.kind = CompressionMethod::Kind::distance;
  result.method.alpha = alpha;

  RasterMask last = rasterize(seq[0].region, width, height, transform);
  result.kept.push_back(seq[0]);
  result.kept_indices.push_back(0);

  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (max_len && result.kept.size() >= *max_len) break;
    RasterMask candidate = rasterize(seq[i].region, width, height, transform);
    const double dist = jaccard_distance(candidate, last);
    if (dist > alpha) {
      result.kept.push_back(seq[i]);
      result.kept_indices.push_back(i);
      result.pairwise_distances.push_back(dist);
      last = std::move(candidate);
    }
  }

  if (include_final && result.kept_indices.back() != seq.size() - 1 &&
      (!max_len || result.kept.size() < *max_len)) {
    RasterMask final_mask = rasterize(seq.back().region, width, height, transform);
    result.pairwise_distances.push_back(jaccard_distance(final_mask, last));
    result.kept.push_back(seq.back());
    result.kept_indices.push_back(seq.size() - 1);
    result.final_forced = true;
  }

  result.dropped_count = static_cast<long>(seq.size() - result.kept.size());
  return result;
}

// Jaccard distances between consecutive kept snapshots, for reporting.
inline void fill_pairwise_distances(CompressionResult& result, int width, int height,
                                    const AffineTransform& transform) {
  result.pairwise_distances.clear();
  if (result.kept.size() < 2) return;
  RasterMask prev = rasterize(result.kept[0].region, width, height, transform);
  for (std::size_t i = 1; i < result.kept.size(); ++i) {
    RasterMask cur = rasterize(result.kept[i].region, width, height, transform);
    result.pairwise_distances.push_back(jaccard_distance(cur, prev));
    prev = std::move(cur);
  }
}

}  // namespace movreg
