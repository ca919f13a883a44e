/**
 * \file defects.hpp
 *
 * \brief Defect invariants: loop residues around codimension-two holes,
 *        shell values of higher equivariant cocycles, cross-boundary gap
 *        values with divergence estimates, and persistence experiments.
 */

#ifndef DEFECTLAB_DEFECTS_HPP_
#define DEFECTLAB_DEFECTS_HPP_

#include "defectlab/automaton.hpp"
#include "defectlab/cocycles.hpp"
#include "defectlab/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace defectlab {

enum class ResidueFlag { Essential, Inconclusive };

struct HoleResidue {
  int component = 0;    // index into classification.hole_components
  Trail loop;           // canonical counterclockwise enclosing loop
  GroupElement value;   // residue on that loop
  bool homotopy_checked = false;  // equal value on a second independent loop
  ResidueFlag flag = ResidueFlag::Inconclusive;
};

struct DefectReport {
  DefectClassification classification;
  std::vector<HoleResidue> residues;
  std::int64_t r = 1;
  std::int64_t r_max = 1;
};

/// Residues of a cocycle around every codimension-two hole of the
/// configuration (D = 2).  Each residue is re-evaluated on a second,
/// strictly larger enclosing loop; a mismatch throws.
DefectReport residue_report(const Configuration& cfg, const SftSpec& spec,
                            const DynamicalCocycleRule& rule, std::int64_t r);

struct DPoleValue {
  Site center;
  std::int64_t box_radius = 1;
  GroupElement value;
};

/// Evaluates an equivariant degree-(D-1) cochain rule on the boundaries of
/// nested boxes around each defect component; nonzero values are poles.
std::vector<DPoleValue> d_pole_search(const Configuration& cfg,
                                      const SftSpec& spec,
                                      const EquivariantCochainRule& eqrule,
                                      std::int64_t r);

/// Cross-component gap value: within one component the trail value from z to
/// y; across components, the product through per-component reference sites,
/// gap(y, y_ref) * gap(z_ref, z).
GroupElement cgap(const Configuration& cfg, const DynamicalCocycleRule& rule,
                  const Site& y, const Site& z,
                  const std::vector<Region>& components,
                  const std::vector<Site>& refs);

enum class TiltVerdict { Bounded, DivergingWindowLimited, Inconclusive };

struct GapAnalysis {
  std::vector<Region> components;
  std::vector<Site> refs;
  std::vector<std::pair<std::int64_t, double>> slope_samples;  // (L, s(L))
  TiltVerdict verdict = TiltVerdict::Inconclusive;
  double fit_slope = 0.0;
  double max_sample = 0.0;
  std::string detail;
};

struct TiltOptions {
  std::vector<std::int64_t> schedule;  // separations L; default 4,8,...
  std::uint64_t seed = 1;
  std::size_t pairs_per_level = 64;
  double slope_threshold = 0.1;
  double max_threshold = 4.0;
};

/// Divergence estimate for cross-boundary gap values: samples site pairs at
/// increasing separations and fits the growth of max |cgap| / separation.
GapAnalysis tilt_estimate(const Configuration& cfg, const SftSpec& spec,
                          const DynamicalCocycleRule& rule, std::int64_t r,
                          const TiltOptions& options = {});

struct PersistenceStep {
  int t = 0;
  DefectReport report;
  bool pullback_identity_ok = true;  // residue(C, step image) vs pullback rule
};

struct PersistenceReport {
  std::vector<PersistenceStep> steps;
};

/// Applies the automaton repeatedly, re-analyzing defects after every step
/// and checking that residues of the evolved configuration match residues of
/// the pulled-back cocycle on the original.
PersistenceReport persistence_experiment(const Configuration& cfg,
                                         const SftSpec& spec,
                                         const DynamicalCocycleRule& rule,
                                         const CaRule& ca, int steps,
                                         std::int64_t r);

}  // namespace defectlab

#endif  // DEFECTLAB_DEFECTS_HPP_
