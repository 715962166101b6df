#include <catch2/catch_amalgamated.hpp>

#include "movreg/metrics.hpp"
#include "movreg/synth.hpp"
#include "movreg/raster.hpp"
#include "support/oracles.hpp"

using namespace movreg;

TEST_CASE("jaccard index basics") {
  RasterMask a = RasterMask::zeros(10, 10);
  for (auto& c : a.cells) c = 1;
  CHECK(jaccard_index(a, a) == 1.0);

  RasterMask left = RasterMask::zeros(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 5; ++x) left.set(x, y, true);
  CHECK(jaccard_index(a, left) == 0.5);

  RasterMask right = RasterMask::zeros(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 5; x < 10; ++x) right.set(x, y, true);
  CHECK(jaccard_index(left, right) == 0.0);

  RasterMask empty = RasterMask::zeros(10, 10);
  CHECK(jaccard_index(empty, empty) == 1.0);
  CHECK(jaccard_index(empty, a) == 0.0);

  RasterMask other = RasterMask::zeros(9, 10);
  CHECK_THROWS_AS(jaccard_index(a, other), Error);
}

TEST_CASE("jaccard symmetry and brute-force agreement") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    RasterMask a = oracles::random_mask(rng, 16, 16, rng.uniform(0.1, 0.9));
    RasterMask b = oracles::random_mask(rng, 16, 16, rng.uniform(0.1, 0.9));
    const double ji = jaccard_index(a, b);
    CHECK(ji == jaccard_index(b, a));
    CHECK(ji == oracles::brute_force_jaccard(a, b));
    CHECK(ji >= 0.0);
    CHECK(ji <= 1.0);
  }
}

TEST_CASE("jaccard distance satisfies the triangle inequality") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    RasterMask a = oracles::random_mask(rng, 12, 12, 0.5);
    RasterMask b = oracles::random_mask(rng, 12, 12, 0.5);
    RasterMask c = oracles::random_mask(rng, 12, 12, 0.5);
    const double ab = 1.0 - jaccard_index(a, b);
    const double bc = 1.0 - jaccard_index(b, c);
    const double ac = 1.0 - jaccard_index(a, c);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("directed hausdorff basics") {
  std::vector<Point2D> a = {{0, 0}, {1, 1}};
  CHECK(directed_hausdorff(a, a) == 0.0);

  std::vector<Point2D> p = {{0, 0}};
  std::vector<Point2D> q = {{3, 4}};
  CHECK(directed_hausdorff(p, q) == 5.0);

  std::vector<Point2D> none;
  CHECK_THROWS_WITH(directed_hausdorff(none, q), Catch::Matchers::ContainsSubstring("empty"));
}

TEST_CASE("directed hausdorff equals brute force on random sets") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point2D> a, b;
    for (int i = 0; i < 200; ++i) {
      a.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
      b.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
    }
    CHECK(directed_hausdorff(a, b) == oracles::brute_force_directed_hausdorff(a, b));
    CHECK(hausdorff(std::span<const Point2D>(a), std::span<const Point2D>(b)) ==
          oracles::brute_force_hausdorff(a, b));
  }
}

TEST_CASE("hausdorff of offset unit squares") {
  std::vector<Point2D> a = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<Point2D> b;
  for (auto p : a) b.push_back({p.x + 3, p.y});
  CHECK(hausdorff(std::span<const Point2D>(a), std::span<const Point2D>(b)) == 3.0);
}

TEST_CASE("hausdorff symmetry and dominating point") {
  Rng rng(15);
  std::vector<Point2D> a;
  for (int i = 0; i < 50; ++i) a.push_back({rng.uniform(0, 10), rng.uniform(0, 10)});
  std::vector<Point2D> b = a;
  b.push_back({a[0].x + 9, a[0].y});  // far point at distance <= 9 from a[0]
  const double h = hausdorff(std::span<const Point2D>(a), std::span<const Point2D>(b));
  CHECK(h == hausdorff(std::span<const Point2D>(b), std::span<const Point2D>(a)));
  CHECK(h <= 9.0);
  CHECK(h == oracles::brute_force_hausdorff(a, b));
}

TEST_CASE("far point dominates") {
  std::vector<Point2D> a = {{0, 0}, {1, 0}};
  std::vector<Point2D> b = a;
  b.push_back({10, 0});  // distance 9 from (1,0)
  CHECK(hausdorff(std::span<const Point2D>(a), std::span<const Point2D>(b)) == 9.0);
}

TEST_CASE("boundary points of masks feed hausdorff") {
  RasterMask a = RasterMask::zeros(8, 8);
  a.set(1, 1, true);
  RasterMask b = RasterMask::zeros(8, 8);
  b.set(4, 1, true);
  CHECK(hausdorff(a, b) == 3.0);
}

TEST_CASE("temporal consistency of nested growth is exactly one") {
  SnapshotSequence seq = synth_disk(30);
  std::vector<RasterMask> masks;
  for (const auto& s : seq) masks.push_back(rasterize(s.region, 64, 32, {}));
  for (long stride : {1L, 5L, 20L}) {
    for (const auto& s : temporal_consistency(masks, stride)) {
      REQUIRE(s.defined);
      CHECK(s.value == 1.0);
    }
  }
}

TEST_CASE("half loss gives zero consistency") {
  RasterMask full = RasterMask::zeros(10, 10);
  for (auto& c : full.cells) c = 1;
  RasterMask half = RasterMask::zeros(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 5; ++x) half.set(x, y, true);
  auto tc = temporal_consistency({full, half}, 1);
  REQUIRE(tc.size() == 1);
  CHECK(tc[0].value == 0.0);
}

TEST_CASE("undefined marker when the later region is empty") {
  RasterMask full = RasterMask::zeros(4, 4);
  for (auto& c : full.cells) c = 1;
  RasterMask empty = RasterMask::zeros(4, 4);
  auto tc = temporal_consistency({full, empty}, 1);
  REQUIRE(tc.size() == 1);
  CHECK_FALSE(tc[0].defined);
}

TEST_CASE("tc matches the recount oracle") {
  Rng rng(16);
  std::vector<RasterMask> masks;
  RasterMask m = oracles::random_blob_mask(rng, 24, 24);
  masks.push_back(m);
  for (int i = 0; i < 20; ++i) {
    RasterMask next = masks.back();
    // mostly grow, a little noise
    for (int k = 0; k < 30; ++k)
      next.set(static_cast<int>(rng.index(24)), static_cast<int>(rng.index(24)), rng.uniform() < 0.9);
    masks.push_back(next);
  }
  for (long stride : {1L, 3L}) {
    auto tc = temporal_consistency(masks, stride);
    for (const auto& s : tc) {
      if (!s.defined) continue;
      const double expect = oracles::recount_tc(masks[s.t], masks[s.t + stride]);
      CHECK(std::abs(s.value - expect) <= 1e-12);
    }
  }
}

TEST_CASE("tc values stay in the area-ratio envelope") {
  // 1 - |A_t|/|A_{t+s}| <= TC_t <= 1
  Rng rng(18);
  std::vector<RasterMask> masks;
  for (int i = 0; i < 15; ++i) masks.push_back(oracles::random_mask(rng, 16, 16, rng.uniform(0.2, 0.8)));
  for (long stride : {1L, 4L}) {
    for (const auto& s : temporal_consistency(masks, stride)) {
      if (!s.defined) continue;
      const double at = static_cast<double>(masks[s.t].count());
      const double later = static_cast<double>(masks[s.t + stride].count());
      CHECK(s.value <= 1.0);
      CHECK(s.value >= 1.0 - at / later - 1e-12);
    }
  }
}

TEST_CASE("tc sweep strides follow the geometric progression") {
  std::vector<RasterMask> masks(10001, RasterMask::zeros(4, 4));
  for (auto& m : masks) m.set(1, 1, true);
  TcReport report = tc_sweep(masks, 1, 10, 5);
  CHECK(report.strides == std::vector<long>{1, 10, 100, 1000, 10000});
  CHECK(report.skipped_strides.empty());
  CHECK(report.overall_mean == 1.0);
}

TEST_CASE("tc sweep skips oversized strides") {
  SnapshotSequence seq = synth_disk(50);
  std::vector<RasterMask> masks;
  for (const auto& s : seq) masks.push_back(rasterize(s.region, 64, 32, {}));
  TcReport report = tc_sweep(masks, 1, 10, 5);
  CHECK(report.strides == std::vector<long>{1, 10});
  CHECK(report.skipped_strides == std::vector<long>{100, 1000, 10000});
  CHECK(report.overall_mean == 1.0);

  CHECK_THROWS_WITH(tc_sweep(masks, 100, 10, 2), Catch::Matchers::ContainsSubstring("no valid stride"));
}

TEST_CASE("per-stride means match recomputation") {
  Rng rng(17);
  std::vector<RasterMask> masks;
  for (int i = 0; i < 40; ++i) masks.push_back(oracles::random_mask(rng, 12, 12, 0.6));
  TcReport report = tc_sweep(masks, 1, 3, 3);
  for (std::size_t i = 0; i < report.strides.size(); ++i) {
    auto tc = temporal_consistency(masks, report.strides[i]);
    double sum = 0;
    std::size_t n = 0;
    for (const auto& s : tc)
      if (s.defined) {
        sum += s.value;
        ++n;
      }
    CHECK(report.per_stride_mean[i] == Catch::Approx(sum / n).epsilon(0).margin(1e-15));
  }
  double overall = 0;
  for (double m : report.per_stride_mean) overall += m;
  overall /= static_cast<double>(report.per_stride_mean.size());
  CHECK(report.overall_mean == Catch::Approx(overall).epsilon(0).margin(1e-15));
}

TEST_CASE("summary fields") {
  std::vector<double> values = {1.0, 2.0, 3.0, 4.0};
  MetricSummary s = summarize(values);
  CHECK(s.mean == 2.5);
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.sd == Catch::Approx(std::sqrt(1.25)).epsilon(0).margin(1e-15));
}

TEST_CASE("csv serialization of reports") {
  SimilarityReport rep = make_similarity_report({{5, 0.5, 2.0, true}, {6, 1.0, 0.0, true}});
  const std::string csv = similarity_to_csv(rep);
  CHECK(csv == "frame,ji,hd\n5,0.5,2\n6,1,0\n");
  CHECK(rep.ji_summary.mean == 0.75);

  std::vector<RasterMask> masks(4, RasterMask::zeros(4, 4));
  for (auto& m : masks) m.set(1, 1, true);
  TcReport tc = tc_sweep(masks, 1, 2, 2);
  const std::string tc_csv = tc_to_csv(tc);
  CHECK(tc_csv.substr(0, 12) == "stride,t,tc\n");
  CHECK(tc_csv.find("1,0,1\n") != std::string::npos);
  CHECK(tc_csv.find("2,1,1\n") != std::string::npos);
}
