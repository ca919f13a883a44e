/**
 * \file fixtures.hpp
 *
 * \brief Bundled tile sets, cocycles and example configurations: the
 *        six-vertex (ice) model, dominoes, coloured path tiles, the 3D
 *        ball-and-pin cubes, and a one-dimensional Markov shift.
 */

#ifndef DEFECTLAB_FIXTURES_HPP_
#define DEFECTLAB_FIXTURES_HPP_

#include "defectlab/cocycles.hpp"
#include "defectlab/symbolic.hpp"

#include <string>
#include <vector>

namespace defectlab {
namespace fixtures {

// --- Six-vertex (ice) model -----------------------------------------------
// Tiles carry one arrow per edge with two arrows in and two out at every
// vertex; the height cocycle into Z increases by one across each arrow
// crossed from its right side.

WangTileSet ice_tiles();
SftSpec ice_spec();
DynamicalCocycleRule ice_height_rule();

/// Monodromy-eight point defect: a spiral height field whose level sets wind
/// around the center, realized on [-w, w]^2.  Counterclockwise loops around
/// the defect accumulate height +8.
Configuration ice_pole_config(std::int64_t w = 10);

/// Two half-planes of opposite uniform slope with a seam along y in {0,1};
/// realized on [-w, w]^2 (default 41 x 41).
Configuration ice_gap_config(std::int64_t w = 20);

// --- Dominoes ---------------------------------------------------------------
// Four half-tiles (left, right, bottom, top); horizontal neighbours pair
// left with right, vertical neighbours pair bottom with top.  The cocycle
// takes values in the free product of two order-two groups <h> * <v>.

WangTileSet domino_tiles();
SftSpec domino_spec();
DynamicalCocycleRule domino_rule();

/// Horizontal seam: vertical dominoes above and below, out of phase, on
/// [-w, w]^2.  Gap values across the seam are (vhvh)^n.
Configuration domino_gap_config(std::int64_t w = 16);

/// Vertical seam between offset columns of horizontal dominoes on [-w, w]^2.
/// Gap values across the seam are (vhvh)^{-2n}.
Configuration domino_gap_opposite_config(std::int64_t w = 16);

// --- Path tiles -------------------------------------------------------------
// 21 tiles drawing blue and red strands through cell edges; strands may only
// end at defects.  The parity cocycle counts strand crossings in (Z/2)^2.

WangTileSet path_tiles();
SftSpec path_spec();
DynamicalCocycleRule path_rule();

/// 25x25 window with three strand endpoints: both colours dying at one site,
/// a red endpoint, and a blue endpoint.
Configuration path_three_defect_config();

// --- 3D ball-and-pin cubes ---------------------------------------------------
// 20 cubes with three pins out of six faces; neighbouring faces share exactly
// one pin.  The pin cochain (degree 2) reads the face arrow against the
// right-handed normal.

WangTileSet q_tiles();
SftSpec q_spec();
EquivariantCochainRule q_pin_rule();

/// Point defect at the origin of a (2w+1)^3 window: pins along the positive
/// axes reversed so every face of the central cube demands an outward pin.
Configuration q_pole_config(std::int64_t w = 3);

// --- One-dimensional Markov shift ---------------------------------------------
// Binary shift forbidding adjacent ones; radius-one explicit presentation.

SftSpec golden_mean_spec();

/// All-zero window on [-w, w].
Configuration golden_mean_config(std::int64_t w = 8);

/// Names of all bundled fixtures for the command-line front end.
std::vector<std::string> fixture_names();

}  // namespace fixtures
}  // namespace defectlab

#endif  // DEFECTLAB_FIXTURES_HPP_
