/**
 * \file cocycles.hpp
 *
 * \brief Group-valued dynamical cocycles over subshifts: trail evaluation,
 *        coboundaries, cohomology of rules, equivariant higher cochains and
 *        block recoding.
 */

#ifndef DEFECTLAB_COCYCLES_HPP_
#define DEFECTLAB_COCYCLES_HPP_

#include "defectlab/groups.hpp"
#include "defectlab/lattice.hpp"
#include "defectlab/symbolic.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace defectlab {

/// A radius-r dynamical cocycle rule: for each positive axis direction d a
/// local map c_d taking the block on B(0, r) to a group element.  Values on
/// negative unit steps are derived from the inverse, so the composition law
/// holds by construction along any trail.
struct DynamicalCocycleRule {
  int D = 2;
  std::int64_t radius = 0;
  GroupSpecPtr group;
  std::vector<std::function<GroupElement(const Block&)>> step;  // size D
  std::string name;
};

/// A local transfer b: block on B(0,r) -> group element, used to build
/// coboundaries and to twist rules within one cohomology class.
struct TransferFunction {
  int D = 2;
  std::int64_t radius = 0;
  GroupSpecPtr group;
  std::function<GroupElement(const Block&)> value;
  std::string name;
};

struct CocycleCheckReport {
  bool consistent = true;
  std::size_t patterns_checked = 0;
  std::string detail;  // description of the first failing pattern, if any
};

/// Verifies the square-commutation identity of the rule over every admissible
/// pattern on the union of the four blocks at 0, e_d, e_d', e_d + e_d'.
/// For D = 1 there is nothing to check.
CocycleCheckReport check_cocycle_conditions(const DynamicalCocycleRule& rule,
                                            const SftSpec& spec,
                                            std::size_t budget = 4'000'000);

struct TrailValue {
  GroupElement value;
  bool touches_defect = false;  // some step read a block meeting a violation
};

/// Evaluates the cocycle along a trail in a fixed configuration, accumulating
/// step values by left multiplication.  Throws WindowTooSmall when a step
/// needs cells outside the window.  When a spec is supplied, the result is
/// flagged if any step read an inadmissible block.
TrailValue evaluate_trail(const DynamicalCocycleRule& rule,
                          const Configuration& cfg, const Trail& trail,
                          const SftSpec* spec = nullptr);

/// The coboundary of a transfer: step(z -> z+e_d) = b(block at e_d) *
/// b(block at 0)^{-1}.
DynamicalCocycleRule coboundary_rule(const TransferFunction& b);

/// A rule that ignores its input in every direction (each step is a constant
/// group element); such rules are exactly the homomorphisms Z^D -> G for
/// commuting constants.
DynamicalCocycleRule homomorphism_rule(int D, GroupSpecPtr group,
                                       std::vector<GroupElement> images);

/// True when every step map is constant over the admissible blocks of the
/// spec and the constants commute pairwise.
bool is_homomorphism_rule(const DynamicalCocycleRule& rule, const SftSpec& spec);

/// The two-point form of a cocycle in a fixed configuration: value between
/// two sites along any connecting trail (path independence is the caller's
/// responsibility; the shortest-staircase trail is used).
GroupElement to_two_point(const DynamicalCocycleRule& rule,
                          const Configuration& cfg, const Site& from,
                          const Site& to);

/// Twists a rule by a transfer: step'_d(a) = b(block at e_d) * step_d(a) *
/// b(block at 0)^{-1}; the result is cohomologous to the input.
DynamicalCocycleRule twist_by_transfer(const DynamicalCocycleRule& rule,
                                       const TransferFunction& b);

enum class SearchOutcome { Found, NotFound, BudgetExceeded };

struct CohomologySearchResult {
  SearchOutcome outcome = SearchOutcome::NotFound;
  // Tabulated transfer witnessing rule2 = twist(rule1, b), if found.
  std::map<Block, GroupElement> transfer_table;
  std::int64_t transfer_radius = 0;
  std::string detail;
};

/// Searches for a transfer of radius <= max_radius making the two rules
/// cohomologous, by backtracking over per-block values.  Finite groups
/// enumerate all elements; infinite groups require a candidate value set.
CohomologySearchResult cohomologous_search(
    const DynamicalCocycleRule& rule1, const DynamicalCocycleRule& rule2,
    const SftSpec& spec, std::int64_t max_radius,
    const std::vector<GroupElement>& candidates = {},
    std::size_t budget = 4'000'000);

/// Pullback along a cellular automaton: step'_d(a) = step_d(image block),
/// defined on blocks of radius r + q.
DynamicalCocycleRule pullback(const DynamicalCocycleRule& rule,
                              const struct CaRule& ca);

/// A degree-k equivariant cochain rule: for each ascending k-subset of axes,
/// a local map from the block on B(0, r) to the group.  Degree D - 1 cochains
/// are the ones whose coboundaries detect point defects in dimension D.
struct EquivariantCochainRule {
  int D = 2;
  int degree = 1;
  std::int64_t radius = 0;
  GroupSpecPtr group;  // must be abelian
  std::map<std::vector<int>, std::function<GroupElement(const Block&)>> component;
  std::string name;
};

/// Evaluates an equivariant cochain on a cubical chain in a configuration.
GroupElement eval_equivariant(const EquivariantCochainRule& rule,
                              const Configuration& cfg, const Chain& chain);

/// Checks that the equivariant coboundary of the rule vanishes on every
/// admissible pattern covering a (degree+1)-cell's blocks.
CocycleCheckReport check_equivariant_cocycle(const EquivariantCochainRule& rule,
                                             const SftSpec& spec,
                                             std::size_t budget = 4'000'000);

/// Reinterprets a degree-1 equivariant cochain as a dynamical cocycle rule
/// (abelian groups only); inverse of to_equivariant.
DynamicalCocycleRule from_equivariant(const EquivariantCochainRule& rule);

/// Reinterprets an abelian dynamical cocycle rule as a degree-1 equivariant
/// cochain.
EquivariantCochainRule to_equivariant(const DynamicalCocycleRule& rule);

/// Block recoding: symbols of the recoded subshift are admissible patterns on
/// the k-cube [0, k)^D, and the recoded spec forbids overlapping assembled
/// patterns that disagree or are jointly inadmissible.
struct BlockRecoding {
  std::int64_t k = 2;
  SftSpec spec;                 // the recoded subshift
  std::vector<Block> symbols;   // recoded symbol -> pattern on [0,k)^D
};

BlockRecoding recode_block(const SftSpec& spec, std::int64_t k);

/// Recodes a cocycle rule: each recoded unit step is the ordered product of k
/// original unit steps.
DynamicalCocycleRule recode_rule(const DynamicalCocycleRule& rule,
                                 const SftSpec& spec, const BlockRecoding& rec);

/// Recodes a configuration whose window is aligned to multiples of k.
Configuration recode_configuration(const Configuration& cfg,
                                   const BlockRecoding& rec);

}  // namespace defectlab

#endif  // DEFECTLAB_COCYCLES_HPP_
