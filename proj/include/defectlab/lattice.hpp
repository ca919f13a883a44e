/**
 * \file lattice.hpp
 *
 * \brief Geometry of the integer lattice Z^D: sites, boxes, unit-step trails,
 *        trail homotopy inside a region, connectivity, and the cubic cell
 *        complex with its integer boundary operator.
 *
 * Conventions fixed here and used throughout the library:
 *  - adjacency is von Neumann (two sites are adjacent when their l1 distance
 *    is exactly 1);
 *  - balls B(z,r) are l-infinity cubes z + [-r..r]^D, and every distance that
 *    appears in a ball-related estimate is the l-infinity distance;
 *  - a d-dimensional cubic cell is identified by its base corner and an
 *    ascending list of spanned axes; orientation signs come from the
 *    ascending-axis simplicial decomposition of the cube.
 */

#ifndef DEFECTLAB_LATTICE_HPP_
#define DEFECTLAB_LATTICE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace defectlab {

/// A point of Z^D.  Exact integer coordinates; D = coords.size().
struct Site {
  std::vector<std::int64_t> c;

  Site() = default;
  explicit Site(std::vector<std::int64_t> coords) : c(std::move(coords)) {}
  Site(std::initializer_list<std::int64_t> coords) : c(coords) {}

  int dim() const { return static_cast<int>(c.size()); }

  auto operator<=>(const Site&) const = default;

  Site operator+(const Site& o) const;
  Site operator-(const Site& o) const;
  /// Unit vector +e_axis (0-based axis index) in dimension D.
  static Site unit(int D, int axis);
  static Site zero(int D);
};

/// l1 and l-infinity distances between sites of equal dimension.
std::int64_t l1_dist(const Site& a, const Site& b);
std::int64_t linf_dist(const Site& a, const Site& b);

using SiteSet = std::set<Site>;

/// The cube B(center, radius) = center + [-radius..radius]^D.
struct Box {
  Site center;
  std::int64_t radius = 0;

  /// All (2r+1)^D sites in canonical order (coordinate 0 slowest,
  /// coordinate D-1 fastest).
  std::vector<Site> sites() const;
  bool contains(const Site& z) const;
};

/// Sites of the axis-aligned box [lo..hi] in canonical order.
std::vector<Site> box_sites(const Site& lo, const Site& hi);

/// A trail: a sequence of sites in which consecutive sites are adjacent
/// (l1 distance exactly 1).  A closed trail has first == last.
struct Trail {
  std::vector<Site> sites;

  Trail() = default;
  explicit Trail(std::vector<Site> s);

  bool closed() const { return sites.size() >= 1 && sites.front() == sites.back(); }
  std::size_t steps() const { return sites.empty() ? 0 : sites.size() - 1; }
};

/// Concatenation t1 * t2; requires last(t1) == first(t2).
Trail concat(const Trail& t1, const Trail& t2);

/// The reversed trail.
Trail reverse(const Trail& t);

/// A d-dimensional cell of the cubic complex on Z^D: the product of [0,1]
/// along each axis in `axes` (ascending, 0-based) and {0} elsewhere,
/// translated to `base`.
struct CubicCell {
  Site base;
  std::vector<int> axes;  // strictly ascending, size d = cell dimension

  int dim() const { return static_cast<int>(axes.size()); }
  auto operator<=>(const CubicCell&) const = default;
};

/// An integer d-chain: a finite formal sum of d-cells.
struct Chain {
  int dimension = 0;
  std::map<CubicCell, std::int64_t> terms;

  /// Adds coeff * cell, erasing the entry when the total becomes zero.
  void add(const CubicCell& cell, std::int64_t coeff);
  Chain operator+(const Chain& o) const;
  Chain operator*(std::int64_t k) const;
  bool is_zero() const { return terms.empty(); }
};

/// The cubic boundary operator.  For a single cell with ascending axes
/// a_1 < ... < a_d,
///   boundary = sum_{i=1..d} (-1)^{i+1} (upper face_i - lower face_i),
/// where face_i removes axis a_i and the upper face shifts the base by
/// +e_{a_i}.  Extended linearly; boundary of a 0-chain is the zero chain.
Chain boundary(const Chain& chain);

/// Boundary of a single cell (convenience wrapper).
Chain boundary_of_cell(const CubicCell& cell);

/// True when t1 and t2 differ by exactly one elementary move inside the
/// region: a square-corner swap, a backtrack deletion, or a backtrack
/// insertion.  Both trails must share endpoints and lie in the region.
bool elementary_homotope(const Trail& t1, const Trail& t2, const SiteSet& region);

/// Fixed-endpoint homotopy test inside a finite region, D = 2 only.
/// Decided by winding numbers: t1 and t2 are homotopic iff the loop
/// t1 * reverse(t2) has winding number zero around every bounded
/// complement component of the region.  Throws for D != 2.
bool trails_homotopic(const Trail& t1, const Trail& t2, const SiteSet& region);

/// Winding number of a closed trail around a site not on the trail (D = 2).
std::int64_t winding_number(const Trail& loop, const Site& around);

/// Maximal trail-connected (l1-adjacency) subsets of a finite site set.
std::vector<SiteSet> connected_components(const SiteSet& sites);

/// A closed counterclockwise rectangular ring trail (D = 2) that winds
/// exactly once around `component`, stays inside `region`, and whose open
/// interior contains no region-complement site outside `component`.
/// Deterministic: the smallest enclosing ring, traversed counterclockwise
/// from its lower-left corner.  Throws NoEnclosingRing when no such ring
/// exists (e.g. the component touches the window edge).
Trail loop_around(const SiteSet& component, const SiteSet& region);

/// Error type for loop_around failures.
struct NoEnclosingRing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace defectlab

#endif  // DEFECTLAB_LATTICE_HPP_
