/**
 * \file json_io.hpp
 *
 * \brief JSON interchange for groups, tile sets, subshift specs,
 *        configurations, cocycle tables, automata and reports.
 */

#ifndef DEFECTLAB_JSON_IO_HPP_
#define DEFECTLAB_JSON_IO_HPP_

#include "defectlab/automaton.hpp"
#include "defectlab/cocycles.hpp"
#include "defectlab/complexes.hpp"
#include "defectlab/defects.hpp"
#include "defectlab/groups.hpp"
#include "defectlab/symbolic.hpp"

#include "json.hpp"

#include <string>

namespace defectlab {

using Json = nlohmann::json;

Json to_json(const GroupSpec& g);
GroupSpecPtr group_from_json(const Json& j);

Json to_json(const GroupElement& e);
GroupElement element_from_json(GroupSpecPtr g, const Json& j);

Json to_json(const FgAbelianGroup& g);

Json to_json(const WangTileSet& w);
WangTileSet tiles_from_json(const Json& j);

Json to_json(const SftSpec& s);
SftSpec spec_from_json(const Json& j);

Json to_json(const Configuration& c);
Configuration configuration_from_json(const Json& j);

/// Tabulates a cocycle rule over the admissible blocks of the spec.
Json rule_to_json(const DynamicalCocycleRule& rule, const SftSpec& spec);
DynamicalCocycleRule rule_from_json(const Json& j);

Json to_json(const CaRule& ca, int nsymbols);
CaRule ca_from_json(const Json& j);

Json to_json(const DefectReport& report);
Json to_json(const GapAnalysis& gap);
Json to_json(const TileComplex& tc);

}  // namespace defectlab

#endif  // DEFECTLAB_JSON_IO_HPP_
