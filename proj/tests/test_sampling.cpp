#include <catch2/catch_amalgamated.hpp>

#include "movreg/sampling.hpp"
#include "movreg/synth.hpp"
#include "support/oracles.hpp"

using namespace movreg;

namespace {

SnapshotSequence dummy_sequence(int n) {
  // distinct squares so consecutive Jaccard distances are positive
  SnapshotSequence seq;
  for (int i = 0; i < n; ++i) {
    Snapshot s;
    s.frame = i;
    s.t_norm = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
    const double half = 4.0 + 0.1 * i;
    Ring ring;
    ring.points = {{16 - half, 16 - half}, {16 + half, 16 - half}, {16 + half, 16 + half},
                   {16 - half, 16 + half}, {16 - half, 16 - half}};
    s.region = Region{std::move(ring), {}};
    seq.push_back(std::move(s));
  }
  return seq;
}

}  // namespace

TEST_CASE("periodic d=1 is the identity") {
  SnapshotSequence seq = dummy_sequence(10);
  CompressionResult r = periodic_sample(seq, 1);
  CHECK(r.kept.size() == 10);
  CHECK(r.dropped_count == 0);
  CHECK_FALSE(r.final_forced);
  for (std::size_t i = 0; i < 10; ++i) CHECK(r.kept_indices[i] == i);
}

TEST_CASE("periodic keeps every d-th index") {
  SnapshotSequence seq = dummy_sequence(10);
  CompressionResult r = periodic_sample(seq, 3);
  CHECK(r.kept_indices == std::vector<std::size_t>{0, 3, 6, 9});
  CHECK(r.dropped_count == 6);
  CHECK_FALSE(r.final_forced);  // index 9 is already the last element
}

TEST_CASE("periodic index rule at video scale") {
  SnapshotSequence seq = dummy_sequence(22500);
  CompressionResult pure = periodic_sample(seq, 100, /*include_final=*/false);
  CHECK(pure.kept.size() == 225);
  CHECK(pure.kept_indices.front() == 0);
  CHECK(pure.kept_indices.back() == 22400);

  CompressionResult with_final = periodic_sample(seq, 100, /*include_final=*/true);
  CHECK(with_final.kept.size() == 226);  // endpoint appended so the tail stays interpolatable
  CHECK(with_final.final_forced);
  CHECK(with_final.kept_indices.back() == 22499);
}

TEST_CASE("periodic rejects d=0 and empty input") {
  SnapshotSequence seq = dummy_sequence(5);
  CHECK_THROWS_AS(periodic_sample(seq, 0), Error);
  CHECK_THROWS_AS(periodic_sample({}, 1), Error);
}

TEST_CASE("ceil(n/d) size rule") {
  Rng rng(999);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(60));
    const long d = 1 + static_cast<long>(rng.index(9));
    SnapshotSequence seq = dummy_sequence(n);
    CompressionResult r = periodic_sample(seq, d, /*include_final=*/false);
    CHECK(r.kept.size() == static_cast<std::size_t>((n + d - 1) / d));
    CHECK(r.kept_indices.front() == 0);
  }
}

TEST_CASE("jaccard distance values") {
  RasterMask a = RasterMask::zeros(10, 10);
  for (auto& c : a.cells) c = 1;
  CHECK(jaccard_distance(a, a) == 0.0);

  RasterMask b = RasterMask::zeros(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 5; ++x) b.set(x, y, true);
  RasterMask c = RasterMask::zeros(10, 10);
  for (int y = 0; y < 10; ++y)
    for (int x = 5; x < 10; ++x) c.set(x, y, true);
  CHECK(jaccard_distance(b, c) == 1.0);

  // equal-area half overlap: |A n B| = |A|/2 -> JI = 1/3
  RasterMask d = RasterMask::zeros(12, 2);
  RasterMask e = RasterMask::zeros(12, 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 8; ++x) d.set(x, y, true);
    for (int x = 4; x < 12; ++x) e.set(x, y, true);
  }
  CHECK(jaccard_distance(d, e) == Catch::Approx(2.0 / 3.0).epsilon(0).margin(1e-15));
}

TEST_CASE("huge alpha keeps only the first observation") {
  SnapshotSequence seq = dummy_sequence(20);
  CompressionResult r = distance_based_sample(seq, 1.0, std::nullopt, 32, 32, {},
                                              /*include_final=*/false);
  CHECK(r.kept.size() == 1);
  CHECK(r.kept_indices[0] == 0);
  CHECK(r.dropped_count == 19);
}

TEST_CASE("alpha zero keeps every distinct observation") {
  // squares growing a full pixel per frame, so consecutive rasters all differ
  SnapshotSequence seq;
  for (int i = 0; i < 12; ++i) {
    Snapshot s;
    s.frame = i;
    const double half = 3.0 + i;
    Ring ring;
    ring.points = {{32 - half, 32 - half}, {32 + half, 32 - half}, {32 + half, 32 + half},
                   {32 - half, 32 + half}, {32 - half, 32 - half}};
    s.region = Region{std::move(ring), {}};
    seq.push_back(std::move(s));
  }
  CompressionResult r = distance_based_sample(seq, 0.0, std::nullopt, 64, 64, {},
                                              /*include_final=*/false);
  CHECK(r.kept.size() == 12);
}

TEST_CASE("growing disk compresses to a handful of samples") {
  SnapshotSequence seq;
  for (int i = 0; i < 100; ++i) {
    Snapshot s;
    s.frame = i;
    s.t_norm = i / 99.0;
    const double r = 10.0 + 30.0 * i / 99.0;
    s.region = Region{};
    Ring ring;
    for (int k = 0; k < 64; ++k) {
      const double a = 2.0 * 3.14159265358979323846 * k / 64;
      ring.points.push_back({50 + r * std::cos(a), 50 + r * std::sin(a)});
    }
    ring.points.push_back(ring.points.front());
    s.region.exterior = std::move(ring);
    seq.push_back(std::move(s));
  }
  const AffineTransform t{1.0, 1.0, 0.0, 0.0};
  CompressionResult r = distance_based_sample(seq, 0.15, std::nullopt, 100, 100, t,
                                              /*include_final=*/false);

  // independent re-scan with the same masks
  std::vector<std::size_t> expect = {0};
  RasterMask last = rasterize(seq[0].region, 100, 100, t);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    RasterMask cand = rasterize(seq[i].region, 100, 100, t);
    if (1.0 - oracles::brute_force_jaccard(cand, last) > 0.15) {
      expect.push_back(i);
      last = cand;
    }
  }
  CHECK(r.kept_indices == expect);
  CHECK(r.kept.size() >= 3);
  CHECK(r.kept.size() <= 20);
}

TEST_CASE("consecutive kept distances exceed alpha") {
  Rng rng(321);
  for (int trial = 0; trial < 10; ++trial) {
    SnapshotSequence seq;
    for (int i = 0; i < 15; ++i) {
      Snapshot s;
      s.frame = i;
      s.region = oracles::random_star_polygon(rng, {16, 16}, 3.0, 13.0, 10);
      seq.push_back(std::move(s));
    }
    const double alpha = rng.uniform(0.05, 0.4);
    CompressionResult r = distance_based_sample(seq, alpha, std::nullopt, 32, 32, {},
                                                /*include_final=*/false);
    REQUIRE(r.pairwise_distances.size() + 1 == r.kept.size());
    for (double d : r.pairwise_distances) CHECK(d > alpha);

    // post-hoc from scratch
    for (std::size_t i = 0; i + 1 < r.kept.size(); ++i) {
      RasterMask a = rasterize(r.kept[i].region, 32, 32, {});
      RasterMask b = rasterize(r.kept[i + 1].region, 32, 32, {});
      CHECK(jaccard_distance(a, b) > alpha);
    }
  }
}

TEST_CASE("forced final sample is flagged") {
  SnapshotSequence seq = dummy_sequence(20);
  CompressionResult r = distance_based_sample(seq, 0.9, std::nullopt, 32, 32, {},
                                              /*include_final=*/true);
  CHECK(r.final_forced);
  CHECK(r.kept_indices.back() == 19);
  CHECK(r.kept.size() == 2);
}

TEST_CASE("max_len stops the scan") {
  SnapshotSequence seq = dummy_sequence(40);
  CompressionResult r = distance_based_sample(seq, 0.0, std::size_t{5}, 32, 32, {},
                                              /*include_final=*/false);
  CHECK(r.kept.size() == 5);
}

TEST_CASE("kept is always an order-preserving subsequence starting at zero") {
  Rng rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    SnapshotSequence seq = dummy_sequence(2 + static_cast<int>(rng.index(30)));
    CompressionResult r;
    if (trial % 2 == 0)
      r = periodic_sample(seq, 1 + static_cast<long>(rng.index(6)));
    else
      r = distance_based_sample(seq, rng.uniform(0.0, 0.5), std::nullopt, 32, 32, {});
    REQUIRE_FALSE(r.kept_indices.empty());
    CHECK(r.kept_indices.front() == 0);
    for (std::size_t i = 0; i + 1 < r.kept_indices.size(); ++i)
      CHECK(r.kept_indices[i] < r.kept_indices[i + 1]);
    CHECK(r.kept.size() + static_cast<std::size_t>(r.dropped_count) == seq.size());
  }
}

TEST_CASE("fill_pairwise_distances reports consecutive kept distances") {
  SnapshotSequence seq = dummy_sequence(10);
  CompressionResult r = periodic_sample(seq, 4);
  fill_pairwise_distances(r, 32, 32, {});
  REQUIRE(r.pairwise_distances.size() + 1 == r.kept.size());
  for (std::size_t i = 0; i + 1 < r.kept.size(); ++i) {
    RasterMask a = rasterize(r.kept[i].region, 32, 32, {});
    RasterMask b = rasterize(r.kept[i + 1].region, 32, 32, {});
    CHECK(r.pairwise_distances[i] == jaccard_distance(a, b));
  }
}
