#include <catch2/catch_amalgamated.hpp>

#include "movreg/metrics.hpp"
#include "movreg/shape_interp.hpp"
#include "movreg/synth.hpp"
#include "movreg/wkt.hpp"
#include "support/oracles.hpp"

using namespace movreg;

namespace {

SignedDistanceMap sdm_of_disk(double radius, int size) {
  RasterMask m = RasterMask::zeros(size, size);
  const double c = size / 2.0 - 0.5;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x) {
      const double dx = x - c, dy = y - c;
      if (dx * dx + dy * dy <= radius * radius) m.set(x, y, true);
    }
  return signed_distance(m);
}

}  // namespace

TEST_CASE("blend endpoints reproduce the inputs") {
  Rng rng(1);
  RasterMask a = oracles::random_blob_mask(rng, 24, 24);
  RasterMask b = oracles::random_blob_mask(rng, 24, 24);
  SignedDistanceMap z1 = signed_distance(a);
  SignedDistanceMap z2 = signed_distance(b);
  SignedDistanceMap at0 = blend_sdm(z1, z2, 0.0);
  SignedDistanceMap at1 = blend_sdm(z1, z2, 1.0);
  CHECK(at0.values == z1.values);
  CHECK(at1.values == z2.values);
}

TEST_CASE("midpoint arithmetic") {
  SignedDistanceMap z1, z2;
  z1.width = z2.width = 2;
  z1.height = z2.height = 2;
  z1.values = {2.0, 2.0, 2.0, 2.0};
  z2.values = {-2.0, -2.0, -2.0, -2.0};
  SignedDistanceMap mid = blend_sdm(z1, z2, 0.5);
  for (double v : mid.values) CHECK(v == 0.0);
}

TEST_CASE("blend rejects mismatched maps") {
  SignedDistanceMap z1, z2;
  z1.width = 2; z1.height = 2; z1.values = {0, 0, 0, 0};
  z2.width = 3; z2.height = 2; z2.values = {0, 0, 0, 0, 0, 0};
  CHECK_THROWS_WITH(blend_sdm(z1, z2, 0.5), Catch::Matchers::ContainsSubstring("mismatch"));
  CHECK_THROWS_AS(blend_sdm(z1, z1, 1.5), Error);
}

TEST_CASE("zero crossing inverts signed_distance") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    RasterMask m = oracles::random_mask(rng, 16, 12, 0.5);
    const std::size_t fg = m.count();
    if (fg == 0 || fg == m.cells.size()) continue;
    CHECK(zero_crossing_mask(signed_distance(m)) == m);
  }
}

TEST_CASE("all-negative map gives an empty mask") {
  SignedDistanceMap z;
  z.width = 3; z.height = 2;
  z.values.assign(6, -1.0);
  CHECK(zero_crossing_mask(z).count() == 0);
}

TEST_CASE("blended concentric disks give the mid radius") {
  SignedDistanceMap z1 = sdm_of_disk(10.0, 64);
  SignedDistanceMap z2 = sdm_of_disk(20.0, 64);
  RasterMask mid = zero_crossing_mask(blend_sdm(z1, z2, 0.5));
  const double expected = 3.14159265358979323846 * 15.0 * 15.0;
  CHECK(std::abs(static_cast<double>(mid.count()) - expected) <= 0.05 * expected);
}

TEST_CASE("sequence passes support frames through") {
  SnapshotSequence supports;
  Snapshot a, b;
  a.frame = 0;
  a.region = parse_wkt("POLYGON((10 10,22 10,22 22,10 22,10 10))");
  b.frame = 10;
  b.region = parse_wkt("POLYGON((6 6,26 6,26 26,6 26,6 6))");
  supports = {a, b};
  auto frames = shape_based_sequence(supports, {0, 5, 10}, 32, 32, {});
  REQUIRE(frames.size() == 3);
  CHECK(frames[0].is_support);
  CHECK(frames[2].is_support);
  CHECK_FALSE(frames[1].is_support);

  RasterMask ma = rasterize(a.region, 32, 32, {});
  CHECK(jaccard_index(frames[0].mask, ma) == 1.0);
  CHECK(frames[0].mask == ma);
}

TEST_CASE("squares interpolate to the mid square") {
  // sides 10 and 20 about the same center -> side 15 at the midpoint;
  // two pixels per world unit keeps discretization jitter below the target
  SnapshotSequence supports;
  Snapshot a, b;
  a.frame = 0;
  a.region = parse_wkt("POLYGON((11 11,21 11,21 21,11 21,11 11))");
  b.frame = 2;
  b.region = parse_wkt("POLYGON((6 6,26 6,26 26,6 26,6 6))");
  supports = {a, b};
  const AffineTransform t{2.0, 2.0, 0.0, 0.0};
  auto frames = shape_based_sequence(supports, {1}, 64, 64, t);
  REQUIRE(frames.size() == 1);
  Region analytic = parse_wkt("POLYGON((8.5 8.5,23.5 8.5,23.5 23.5,8.5 23.5,8.5 8.5))");
  RasterMask expected = rasterize(analytic, 64, 64, t);
  CHECK(jaccard_index(frames[0].mask, expected) >= 0.95);
}

TEST_CASE("nested supports give non-decreasing areas") {
  SnapshotSequence seq = synth_disk(40);
  SnapshotSequence supports = {seq[0], seq[39]};
  std::vector<long> targets;
  for (long f = 0; f <= 39; ++f) targets.push_back(f);
  auto frames = shape_based_sequence(supports, targets, 64, 32, {});
  std::size_t prev = 0;
  for (const auto& fr : frames) {
    CHECK(fr.mask.count() >= prev);
    prev = fr.mask.count();
  }
}

TEST_CASE("monotone nesting of the blend") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    RasterMask outer = oracles::random_blob_mask(rng, 32, 32);
    RasterMask inner = RasterMask::zeros(32, 32);
    // erode to get a strict subset
    for (int y = 1; y < 31; ++y)
      for (int x = 1; x < 31; ++x)
        if (outer.at(x, y) && outer.at(x - 1, y) && outer.at(x + 1, y) && outer.at(x, y - 1) &&
            outer.at(x, y + 1))
          inner.set(x, y, true);
    if (inner.count() == 0 || outer.count() == outer.cells.size()) continue;
    SignedDistanceMap zi = signed_distance(inner);
    SignedDistanceMap zo = signed_distance(outer);
    RasterMask prev = zero_crossing_mask(blend_sdm(zi, zo, 0.0));
    for (double w : {0.25, 0.5, 0.75, 1.0}) {
      RasterMask cur = zero_crossing_mask(blend_sdm(zi, zo, w));
      for (std::size_t i = 0; i < cur.cells.size(); ++i)
        if (prev.cells[i]) CHECK(cur.cells[i]);
      prev = cur;
    }
  }
}

TEST_CASE("extrapolation is rejected") {
  SnapshotSequence seq = synth_disk(10);
  SnapshotSequence supports = {seq[2], seq[7]};
  CHECK_THROWS_WITH(shape_based_sequence(supports, {8}, 64, 32, {}),
                    Catch::Matchers::ContainsSubstring("extrapolation"));
  CHECK_THROWS_AS(shape_based_sequence(supports, {1}, 64, 32, {}), Error);
}

TEST_CASE("sequence output is deterministic") {
  SnapshotSequence seq = synth_noisy(20, 42);
  SnapshotSequence supports = {seq[0], seq[10], seq[19]};
  std::vector<long> targets = {0, 3, 7, 10, 14, 19};
  auto a = shape_based_sequence(supports, targets, 64, 32, {});
  auto b = shape_based_sequence(supports, targets, 64, 32, {});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mask == b[i].mask);
    CHECK(serialize_wkt(a[i].region) == serialize_wkt(b[i].region));
  }
}
