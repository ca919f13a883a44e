#include "doctest.h"

#include "defectlab/lattice.hpp"

#include <random>

using namespace defectlab;

TEST_CASE("site arithmetic and distances") {
  const Site a({3, -1}), b({0, 4});
  CHECK((a + b) == Site({3, 3}));
  CHECK((a - b) == Site({3, -5}));
  CHECK(l1_dist(a, b) == 8);
  CHECK(linf_dist(a, b) == 5);
  CHECK(Site::unit(3, 1) == Site({0, 1, 0}));
  CHECK(Site::zero(2) == Site({0, 0}));
}

TEST_CASE("box sites are canonical and complete") {
  const Box box{Site({1, 2}), 1};
  const auto sites = box.sites();
  REQUIRE(sites.size() == 9);
  CHECK(sites.front() == Site({0, 1}));
  CHECK(sites.back() == Site({2, 3}));
  // coordinate 0 slowest
  CHECK(sites[1] == Site({0, 2}));
  for (const Site& s : sites) CHECK(box.contains(s));
  CHECK_FALSE(box.contains(Site({3, 2})));
}

TEST_CASE("trail basics, concat, reverse") {
  Trail t({Site({0, 0}), Site({1, 0}), Site({1, 1})});
  CHECK(t.steps() == 2);
  CHECK_FALSE(t.closed());
  Trail u({Site({1, 1}), Site({0, 1}), Site({0, 0})});
  const Trail loop = concat(t, u);
  CHECK(loop.closed());
  CHECK(loop.steps() == 4);
  const Trail r = reverse(t);
  CHECK(r.sites.front() == Site({1, 1}));
  CHECK(r.sites.back() == Site({0, 0}));
}

TEST_CASE("boundary of a square and dd = 0") {
  Chain sq;
  sq.dimension = 2;
  sq.add(CubicCell{Site({0, 0}), {0, 1}}, 1);
  const Chain edges = boundary(sq);
  CHECK(edges.terms.size() == 4);
  CHECK(boundary(edges).is_zero());
}

TEST_CASE("dd = 0 on random chains up to dimension 4") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int D = 2 + static_cast<int>(rng() % 3);
    const int d = 1 + static_cast<int>(rng() % D);
    Chain c;
    c.dimension = d;
    for (int k = 0; k < 5; ++k) {
      std::vector<std::int64_t> base(static_cast<std::size_t>(D));
      for (auto& x : base) x = static_cast<std::int64_t>(rng() % 7) - 3;
      std::vector<int> axes;
      for (int a = 0; a < D && static_cast<int>(axes.size()) < d; ++a)
        if (rng() % 2 || D - a <= d - static_cast<int>(axes.size())) axes.push_back(a);
      c.add(CubicCell{Site(base), axes}, static_cast<std::int64_t>(rng() % 5) - 2);
    }
    CHECK(boundary(boundary(c)).is_zero());
  }
}

TEST_CASE("winding numbers of rectangular rings") {
  std::vector<Site> ring;
  for (std::int64_t x = -2; x < 2; ++x) ring.push_back(Site({x, -2}));
  for (std::int64_t y = -2; y < 2; ++y) ring.push_back(Site({2, y}));
  for (std::int64_t x = 2; x > -2; --x) ring.push_back(Site({x, 2}));
  for (std::int64_t y = 2; y >= -2; --y) ring.push_back(Site({-2, y}));
  const Trail ccw(ring);
  REQUIRE(ccw.closed());
  CHECK(winding_number(ccw, Site({0, 0})) == 1);
  CHECK(winding_number(ccw, Site({5, 5})) == 0);
  CHECK(winding_number(reverse(ccw), Site({0, 0})) == -1);
}

TEST_CASE("connected components split by adjacency") {
  SiteSet s{Site({0, 0}), Site({0, 1}), Site({1, 1}), Site({5, 5}), Site({1, 2})};
  const auto comps = connected_components(s);
  REQUIRE(comps.size() == 2);
  CHECK((comps[0].size() == 4 || comps[1].size() == 4));
}

TEST_CASE("loop_around produces a counterclockwise enclosing ring") {
  SiteSet region;
  for (std::int64_t x = -5; x <= 5; ++x)
    for (std::int64_t y = -5; y <= 5; ++y)
      if (std::max(std::abs(x), std::abs(y)) >= 2) region.insert(Site({x, y}));
  SiteSet hole;  // the full bounded complement of the annulus
  for (std::int64_t x = -1; x <= 1; ++x)
    for (std::int64_t y = -1; y <= 1; ++y) hole.insert(Site({x, y}));
  const Trail loop = loop_around(hole, region);
  CHECK(loop.closed());
  CHECK(winding_number(loop, Site({0, 0})) == 1);
  CHECK(winding_number(loop, Site({1, 0})) == 1);
  for (const Site& s : loop.sites) CHECK(region.count(s) == 1);
  // Component touching the window edge: no ring exists.
  SiteSet edge_hole{Site({5, 0})};
  SiteSet smaller;
  for (const Site& s : region)
    if (!(s == Site({5, 0}))) smaller.insert(s);
  CHECK_THROWS_AS(loop_around(edge_hole, smaller), NoEnclosingRing);
}

TEST_CASE("homotopy inside an annulus") {
  SiteSet region;
  for (std::int64_t x = -4; x <= 4; ++x)
    for (std::int64_t y = -4; y <= 4; ++y)
      if (std::max(std::abs(x), std::abs(y)) >= 1) region.insert(Site({x, y}));
  // Two paths from (-2,0) to (2,0): above and below the hole.
  Trail above({Site({-2, 0}), Site({-2, 1}), Site({-1, 1}), Site({0, 1}), Site({1, 1}),
               Site({2, 1}), Site({2, 0})});
  Trail below({Site({-2, 0}), Site({-2, -1}), Site({-1, -1}), Site({0, -1}), Site({1, -1}),
               Site({2, -1}), Site({2, 0})});
  CHECK_FALSE(trails_homotopic(above, below, region));
  Trail above2({Site({-2, 0}), Site({-2, 1}), Site({-2, 2}), Site({-1, 2}), Site({0, 2}),
                Site({1, 2}), Site({2, 2}), Site({2, 1}), Site({2, 0})});
  CHECK(trails_homotopic(above, above2, region));
}

TEST_CASE("elementary homotopes") {
  SiteSet region;
  for (std::int64_t x = 0; x <= 3; ++x)
    for (std::int64_t y = 0; y <= 3; ++y) region.insert(Site({x, y}));
  Trail t1({Site({0, 0}), Site({1, 0}), Site({1, 1})});
  Trail t2({Site({0, 0}), Site({0, 1}), Site({1, 1})});  // corner swap
  CHECK(elementary_homotope(t1, t2, region));
  Trail t3({Site({0, 0}), Site({1, 0}), Site({2, 0}), Site({1, 0}), Site({1, 1})});
  CHECK(elementary_homotope(t1, t3, region));  // backtrack insertion
  Trail far({Site({0, 0}), Site({0, 1}), Site({0, 2}), Site({1, 2}), Site({1, 1})});
  CHECK_FALSE(elementary_homotope(t1, far, region));
}
