/**
 * \file automaton.hpp
 *
 * \brief Cellular automata as local rules on windowed configurations, with
 *        SFT-invariance checking and the defect-field drop inequality.
 */

#ifndef DEFECTLAB_AUTOMATON_HPP_
#define DEFECTLAB_AUTOMATON_HPP_

#include "defectlab/symbolic.hpp"

#include <functional>
#include <string>
#include <vector>

namespace defectlab {

/// A cellular automaton: a local map over a finite neighbourhood.
/// Radius q is the maximal l-infinity extent of the neighbourhood.
struct CaRule {
  int D = 2;
  std::vector<Site> neighbourhood;  // offsets, canonical order
  std::int64_t radius = 0;
  std::function<int(const std::vector<int>&)> phi;  // symbols at offsets -> symbol
  std::string name;
};

/// The identity automaton.
CaRule identity_ca(int D);

/// The shift automaton: output(z) = input(z + v).
CaRule shift_ca(const Site& v);

/// A table automaton over the full box neighbourhood B(q); the table is
/// indexed by the mixed-radix number of the neighbourhood block (canonical
/// site order, symbol base nsymbols).
CaRule table_ca(int D, std::int64_t q, int nsymbols, std::vector<int> table);

/// An automaton whose local map is given by an arithmetic expression over
/// the neighbourhood symbols x0, x1, ... (canonical order over B(q)),
/// with +, -, *, %, integer literals, and parentheses; the result is reduced
/// modulo nsymbols.
CaRule expression_ca(int D, std::int64_t q, int nsymbols, const std::string& expr);

/// Applies the automaton.  With no periodic extension the window shrinks by
/// the radius on every side; periodic windows keep their size.
Configuration apply(const CaRule& ca, const Configuration& cfg);

enum class InvarianceVerdict { ProvedOnBlocks, Counterexample, Inconclusive };

struct InvarianceReport {
  InvarianceVerdict verdict = InvarianceVerdict::Inconclusive;
  Block counterexample;  // an admissible (R+q)-block with inadmissible image
  std::string detail;
};

/// Block-level invariance: the image of every admissible (R+q)-block must be
/// an admissible R-block.  Exhaustive up to `budget` enumerated blocks;
/// beyond that the verdict is Inconclusive.
InvarianceReport check_invariance(const CaRule& ca, const SftSpec& spec,
                                  std::size_t budget = 4'000'000);

struct EnergyDropReport {
  bool holds = true;
  Site worst;              // site with the smallest slack
  std::int64_t slack = 0;  // min over sites of F'(z) - (F(z) - q)
};

/// Verifies F_{applied}(z) >= F(z) - q at every site where both defect
/// fields carry exact values.
EnergyDropReport energy_drop_check(const CaRule& ca, const SftSpec& spec,
                                   const Configuration& cfg);

}  // namespace defectlab

#endif  // DEFECTLAB_AUTOMATON_HPP_
