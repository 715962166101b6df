#include <catch2/catch_amalgamated.hpp>

#include "movreg/metrics.hpp"
#include "movreg/raster.hpp"
#include "movreg/wkt.hpp"
#include "support/oracles.hpp"

using namespace movreg;

namespace {
const AffineTransform kIdentity{};  // world units == pixel units
}

TEST_CASE("square fills the whole grid") {
  Region r = parse_wkt("POLYGON((0 0,4 0,4 4,0 4,0 0))");
  RasterMask m = rasterize(r, 4, 4, kIdentity);
  CHECK(m.count() == 16);
}

TEST_CASE("hole over a pixel center clears that pixel") {
  Region r = parse_wkt("POLYGON((0 0,4 0,4 4,0 4,0 0),(2 2,3 2,3 3,2 3,2 2))");
  RasterMask m = rasterize(r, 4, 4, kIdentity);
  CHECK(m.count() == 15);
  CHECK_FALSE(m.at(2, 2));  // center (2.5, 2.5) inside the hole
}

TEST_CASE("raster area tracks shoelace area") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Region r = oracles::random_star_polygon(rng, {16, 16}, 4.0, 12.0, 14);
    RasterMask m = rasterize(r, 32, 32, kIdentity);
    const double pixel_diag = std::sqrt(2.0);
    const double raster_area = static_cast<double>(m.count()) * kIdentity.pixel_area();
    CHECK(std::abs(raster_area - area(r)) <= perimeter(r.exterior) * pixel_diag);
  }
}

TEST_CASE("rasterize is monotone under geometric containment") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // same star scaled about its center: inner subset of outer
    Region outer = oracles::random_star_polygon(rng, {16, 16}, 6.0, 12.0, 14);
    Region inner = outer;
    for (auto& p : inner.exterior.points) {
      p.x = 16 + (p.x - 16) * 0.6;
      p.y = 16 + (p.y - 16) * 0.6;
    }
    RasterMask mo = rasterize(outer, 32, 32, kIdentity);
    RasterMask mi = rasterize(inner, 32, 32, kIdentity);
    for (std::size_t i = 0; i < mi.cells.size(); ++i)
      if (mi.cells[i]) CHECK(mo.cells[i]);
  }
}

TEST_CASE("region outside the grid yields empty mask and warning") {
  Region r = parse_wkt("POLYGON((100 100,104 100,104 104,100 104,100 100))");
  RasterizeInfo info;
  RasterMask m = rasterize(r, 4, 4, kIdentity, &info);
  CHECK(m.count() == 0);
  CHECK(info.empty_output);
  CHECK(info.outside_grid);
}

TEST_CASE("vectorize full mask gives one rectangle") {
  RasterMask m = RasterMask::zeros(4, 4, kIdentity);
  for (auto& c : m.cells) c = 1;
  Region r = vectorize(m);
  CHECK(r.holes.empty());
  CHECK(validate_region(r).valid());
  // contour encloses all 16 pixel centers
  RasterMask again = rasterize(r, 4, 4, kIdentity);
  CHECK(again.count() == 16);
}

TEST_CASE("interior background pixel becomes a hole") {
  RasterMask m = RasterMask::zeros(5, 5, kIdentity);
  for (auto& c : m.cells) c = 1;
  m.set(2, 2, false);
  Region r = vectorize(m);
  REQUIRE(r.holes.size() == 1);
  CHECK(validate_region(r).valid());
  RasterMask again = rasterize(r, 5, 5, kIdentity);
  CHECK(again == m);
}

TEST_CASE("vectorize keeps the largest component and reports drops") {
  RasterMask m = RasterMask::zeros(8, 8, kIdentity);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) m.set(x, y, true);
  m.set(7, 7, true);  // stray pixel
  VectorizeInfo info;
  Region r = vectorize(m, &info);
  CHECK(info.components == 2);
  CHECK(info.dropped_components == 1);
  RasterMask again = rasterize(r, 8, 8, kIdentity);
  CHECK(again.count() == 16);
  CHECK_FALSE(again.at(7, 7));
}

TEST_CASE("vectorize of empty mask throws") {
  RasterMask m = RasterMask::zeros(4, 4, kIdentity);
  CHECK_THROWS_WITH(vectorize(m), Catch::Matchers::ContainsSubstring("no foreground"));
}

TEST_CASE("rasterize-vectorize round trip on random blobs") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    RasterMask m = oracles::random_blob_mask(rng, 64, 64);
    if (m.count() == 0) continue;
    Region r = vectorize(m);
    CHECK(validate_region(r).valid());
    RasterMask again = rasterize(r, 64, 64, kIdentity);
    CHECK(jaccard_index(m, again) >= 0.95);
  }
}

TEST_CASE("round trip is exact for a single component") {
  Rng rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    RasterMask m = oracles::random_blob_mask(rng, 48, 48, 3);
    if (m.count() == 0) continue;
    VectorizeInfo info;
    Region r = vectorize(m, &info);
    if (info.components != 1) continue;
    RasterMask again = rasterize(r, 48, 48, kIdentity);
    CHECK(again == m);
  }
}

TEST_CASE("vectorize respects a world transform") {
  AffineTransform t{2.0, 2.0, -4.0, -4.0};  // world [2,2]..[?] -> pixels
  Region r = parse_wkt("POLYGON((2 2,10 2,10 6,2 6,2 2))");
  RasterMask m = rasterize(r, 16, 8, t);
  CHECK(m.count() > 0);
  Region back = vectorize(m);
  BoundingBox bb = bounding_box(back);
  CHECK(bb.xmin >= 1.5);
  CHECK(bb.xmax <= 10.5);
  RasterMask again = rasterize(back, 16, 8, t);
  CHECK(again == m);
}
