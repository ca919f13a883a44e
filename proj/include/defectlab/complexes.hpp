/**
 * \file complexes.hpp
 *
 * \brief Finite-stage cell complexes of Wang tile sets: the quotient tile
 *        complex, its (co)homology, tile-group abelianizations, connecting
 *        maps between radii, and automaton-induced maps.
 */

#ifndef DEFECTLAB_COMPLEXES_HPP_
#define DEFECTLAB_COMPLEXES_HPP_

#include "defectlab/automaton.hpp"
#include "defectlab/groups.hpp"
#include "defectlab/lattice.hpp"
#include "defectlab/symbolic.hpp"

#include <map>
#include <string>
#include <vector>

namespace defectlab {

/// One translation-class of glued cube faces: a representative
/// (tile, cell of the unit cube with base in {0,1}^D).
struct CellRef {
  int tile = 0;
  CubicCell cell{Site({0, 0}), {}};
};

/// The quotient-by-translation cell complex of a Wang tile set: one D-cell
/// per tile, lower cells glued along the match relations.
struct TileComplex {
  int D = 2;
  std::vector<std::vector<CellRef>> cells;    // per dimension 0..D
  std::vector<IntegerMatrix> bnd;             // bnd[d]: C_d -> C_{d-1}, d >= 1
  // class index of any (tile, cube cell); keys canonicalized internally.
  std::int64_t cell_class(int d, int tile, const CubicCell& cell) const;

  std::map<std::pair<int, std::string>, std::int64_t> index;
  std::int64_t euler_characteristic() const;
};

TileComplex build_tile_complex(const WangTileSet& tiles);

/// Homology of the quotient complex in degree d; integer coefficients when
/// coefficients is the infinite cyclic group of rank 1, otherwise via the
/// universal-coefficient decomposition.
FgAbelianGroup tile_homology(const TileComplex& tc, int d,
                             const FgAbelianGroup& coefficients);

/// Integer homology shorthand.
FgAbelianGroup tile_homology(const TileComplex& tc, int d);

/// Cohomology of the quotient complex in degree d with coefficients in G.
FgAbelianGroup tile_cohomology(const TileComplex& tc, int d,
                               const FgAbelianGroup& coefficients);

struct AbelianizedTileGroup {
  FgAbelianGroup group;
  // Projection data: edge-colour vectors map onto canonical coordinates
  // (torsion coords first, then free coords).
  std::vector<std::vector<BigInt>> torsion_rows;
  std::vector<std::vector<BigInt>> free_rows;
  std::int64_t ncolours = 0;
  std::vector<std::int64_t> torsion_orders;
  // Coordinates of a colour-exponent vector in the quotient; throws if the
  // vector violates the per-axis balance constraints.
  std::vector<BigInt> project(const std::vector<BigInt>& colour_vector) const;
};

/// The abelianized tile homotopy group of a 2D tile set: free abelian group
/// on edge colours restricted to per-axis balance, modulo the tile relations
/// south + east - north - west.
AbelianizedTileGroup conway_lagarias_abelianized(const WangTileSet& tiles);

/// Cohomology of the radius-r Wang representation's quotient complex: the
/// finite-stage group of translation-invariant cochain classes.
FgAbelianGroup invariant_cohomology(const SftSpec& spec, std::int64_t r, int d,
                                    const FgAbelianGroup& coefficients);

/// A cellular map between two tile complexes given by a tile-to-tile map.
struct ComplexMap {
  TileComplex source;
  TileComplex target;
  std::vector<std::vector<std::int64_t>> cell_map;  // per dim: class -> class
  bool is_chain_map() const;
  IntegerMatrix matrix(int d) const;  // C_d(source) -> C_d(target)
};

/// The restriction map from the radius-(r+1) representation to radius r.
ComplexMap connecting_map(const SftSpec& spec, std::int64_t r);

/// The map from the radius-(r+q) representation to radius r induced by a
/// block-invariant automaton of radius q.
ComplexMap ca_induced_map(const SftSpec& spec, const CaRule& ca,
                          std::int64_t r);

struct CohomologyMapModP {
  std::int64_t p = 2;
  int degree = 1;
  std::int64_t dim_target = 0;  // dim H^d(target; Z/p)
  std::int64_t dim_source = 0;  // dim H^d(source; Z/p)
  // Pullback H^d(target) -> H^d(source), dim_source x dim_target mod p.
  std::vector<std::vector<std::int64_t>> matrix;
  std::int64_t rank = 0;
  bool isomorphism = false;
};

/// Pullback on degree-d cohomology with Z/p coefficients along a cellular map.
CohomologyMapModP induced_map_on_cohomology(const ComplexMap& cm, int d,
                                            std::int64_t p);

struct StabilizationRow {
  std::int64_t r = 1;
  std::int64_t dim = 0;            // dim H^d(X_r; Z/p)
  std::int64_t map_rank = 0;       // rank of H^d(X_r) -> H^d(X_{r+1})
  bool map_isomorphism = false;
};

/// Runs connecting maps for r = r_from .. r_to and reports how the
/// finite-stage cohomology stabilizes (a lower bound on information only).
std::vector<StabilizationRow> stabilization_scan(const SftSpec& spec, int d,
                                                 std::int64_t p,
                                                 std::int64_t r_from,
                                                 std::int64_t r_to);

}  // namespace defectlab

#endif  // DEFECTLAB_COMPLEXES_HPP_
