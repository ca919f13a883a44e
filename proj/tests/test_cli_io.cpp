#include "doctest.h"

#include "defectlab/fixtures.hpp"
#include "defectlab/json_io.hpp"

#include <random>

using namespace defectlab;
namespace fx = defectlab::fixtures;

TEST_CASE("group specs and elements round trip through JSON") {
  const GroupSpecPtr a = make_fg_abelian(2, {2, 2});
  const GroupSpecPtr a2 = group_from_json(to_json(*a));
  CHECK(a2->kind == GroupKind::FgAbelian);
  CHECK(a2->rank == 2);
  CHECK(a2->torsion == std::vector<std::int64_t>{2, 2});
  const GroupElement e = abelian_element(a, {3, -1, 1, 0});
  const GroupElement e2 = element_from_json(a2, to_json(e));
  CHECK(e2.vec == e.vec);

  const GroupSpecPtr w = make_z2z2();
  const GroupElement g = word_element(w, "vhv");
  const GroupElement g2 = element_from_json(group_from_json(to_json(*w)), to_json(g));
  CHECK(g2.word == "vhv");

  const GroupSpecPtr t = make_finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  const GroupSpecPtr t2 = group_from_json(to_json(*t));
  CHECK(mul(table_element(t2, 1), table_element(t2, 2)).index == 0);
}

TEST_CASE("tile sets and specs round trip through JSON") {
  for (const WangTileSet& ts : {fx::ice_tiles(), fx::domino_tiles(), fx::q_tiles()}) {
    const WangTileSet back = tiles_from_json(to_json(ts));
    CHECK(back.D == ts.D);
    REQUIRE(back.ntiles() == ts.ntiles());
    CHECK(back.match == ts.match);
  }
  const SftSpec gm = fx::golden_mean_spec();
  const SftSpec gm2 = spec_from_json(to_json(gm));
  CHECK(gm2.D == gm.D);
  CHECK(gm2.nsymbols == gm.nsymbols);
  CHECK(gm2.radius == gm.radius);
  CHECK(gm2.block_admissible({1, 0, 1}, 1));
  CHECK_FALSE(gm2.block_admissible({0, 1, 1}, 1));
}

TEST_CASE("configurations round trip through JSON") {
  const Configuration cfg = fx::path_three_defect_config();
  const Configuration back = configuration_from_json(to_json(cfg));
  CHECK(back.lo == cfg.lo);
  CHECK(back.hi == cfg.hi);
  CHECK(back.cells == cfg.cells);
  CHECK(back.periodic == cfg.periodic);
}

TEST_CASE("cocycle rule tables round trip and evaluate identically") {
  const SftSpec spec = fx::domino_spec();
  const DynamicalCocycleRule rule = fx::domino_rule();
  const DynamicalCocycleRule back = rule_from_json(rule_to_json(rule, spec));
  const Configuration cfg = fx::domino_gap_config(8);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const Site from({static_cast<std::int64_t>(rng() % 9) - 4,
                     static_cast<std::int64_t>(rng() % 3) + 2});
    const Site to({static_cast<std::int64_t>(rng() % 9) - 4,
                   static_cast<std::int64_t>(rng() % 3) + 2});
    CHECK(to_two_point(rule, cfg, from, to) == to_two_point(back, cfg, from, to));
  }
}

TEST_CASE("automata round trip through JSON tables") {
  const CaRule ca = expression_ca(1, 1, 2, "(x0 + x1 * x2) % 2");
  const CaRule back = ca_from_json(to_json(ca, 2));
  std::mt19937_64 rng(9);
  Configuration cfg = Configuration::filled(1, Site({-8}), Site({8}), 0);
  for (std::int64_t x = -8; x <= 8; ++x) cfg.set(Site({x}), static_cast<int>(rng() % 2));
  const Configuration a = apply(ca, cfg);
  const Configuration b = apply(back, cfg);
  CHECK(a.cells == b.cells);
  CHECK(a.lo == b.lo);
}

TEST_CASE("analysis reports serialize with the documented fields") {
  const DefectReport rep =
      residue_report(fx::ice_pole_config(8), fx::ice_spec(), fx::ice_height_rule(), 2);
  const Json j = to_json(rep);
  REQUIRE(j.contains("residues"));
  REQUIRE(j["residues"].size() == 1);
  CHECK(j["residues"][0]["value"]["z"] == Json::array({8}));

  const TileComplex tc = build_tile_complex(fx::ice_tiles());
  const Json jc = to_json(tc);
  CHECK(jc["dimension"] == 2);
  REQUIRE(jc.contains("cells"));
}
