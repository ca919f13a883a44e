#include "doctest.h"

#include "defectlab/fixtures.hpp"
#include "defectlab/symbolic.hpp"

#include <random>

using namespace defectlab;
namespace fx = defectlab::fixtures;

TEST_CASE("bundled tile sets have the expected sizes") {
  CHECK(fx::ice_tiles().ntiles() == 6);
  CHECK(fx::domino_tiles().ntiles() == 4);
  CHECK(fx::path_tiles().ntiles() == 21);
  CHECK(fx::q_tiles().ntiles() == 20);
  CHECK(fx::ice_tiles().dead_tiles().empty());
  CHECK(fx::path_tiles().dead_tiles().empty());
  CHECK(fx::q_tiles().dead_tiles().empty());
}

TEST_CASE("golden mean admissible block counts follow the Fibonacci recursion") {
  const SftSpec spec = fx::golden_mean_spec();
  // words of length 2r+1 avoiding adjacent ones: 3, 5, 8, 13, 21, ...
  CHECK(spec.admissible_blocks(1).size() == 5);
  CHECK(spec.admissible_blocks(2).size() == 13);
  CHECK(spec.admissible_blocks(3).size() == 34);
  CHECK(spec.block_admissible({0, 1, 0, 1, 0}, 2));
  CHECK_FALSE(spec.block_admissible({0, 1, 1, 0, 0}, 2));
}

TEST_CASE("wang mode admissibility is pairwise matching") {
  const SftSpec spec = fx::domino_spec();
  CHECK(spec.wang_mode);
  CHECK(spec.radius == 1);
  // L next to R horizontally is fine; L next to L is not.
  std::map<Site, int> ok{{Site({0, 0}), 0}, {Site({1, 0}), 1}};
  std::map<Site, int> bad{{Site({0, 0}), 0}, {Site({1, 0}), 0}};
  CHECK(spec.pattern_admissible(ok));
  CHECK_FALSE(spec.pattern_admissible(bad));
}

TEST_CASE("wang representation of the golden mean shift at radius 1") {
  const WangRepresentation rep = wang_representation_with_blocks(fx::golden_mean_spec(), 1);
  CHECK(rep.tiles.ntiles() == 5);
  // matches: (abc) -> (bcd) iff bc overlap agrees and bcd admissible
  int edges = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      if (rep.tiles.matches(0, a, b)) ++edges;
  // 5 admissible 4-blocks 0000 0001 0010 0100 0101 1000 1001 1010 = 8
  CHECK(edges == 8);
}

TEST_CASE("configuration windows, periodicity, blocks") {
  Configuration cfg = Configuration::filled(2, Site({-1, -1}), Site({1, 1}), 0);
  cfg.set(Site({0, 0}), 3);
  CHECK(cfg.get(Site({0, 0})) == 3);
  CHECK(cfg.extent(0) == 3);
  CHECK_FALSE(cfg.ball_accessible(Site({1, 1}), 1));
  CHECK(cfg.ball_accessible(Site({0, 0}), 1));
  CHECK_THROWS(cfg.get(Site({2, 0})));
  cfg.periodic = true;
  CHECK(cfg.get(Site({3, 0})) == 3);  // wraps with period 3
  const Block b = cfg.read_block(Site({0, 0}), 1);
  CHECK(b.size() == 9);
  CHECK(b[4] == 3);
}

namespace {

// Random admissible golden-mean word via the adjacency walk.
Configuration random_golden_mean(std::mt19937_64& rng, std::int64_t w) {
  Configuration cfg = Configuration::filled(1, Site({-w}), Site({w}), 0);
  int prev = 0;
  for (std::int64_t x = -w; x <= w; ++x) {
    const int next = prev == 1 ? 0 : static_cast<int>(rng() % 2);
    cfg.set(Site({x}), next);
    prev = next;
  }
  return cfg;
}

}  // namespace

TEST_CASE("defect field equals base radius plus distance to the violation set") {
  std::mt19937_64 rng(17);
  const SftSpec spec = fx::golden_mean_spec();
  for (int trial = 0; trial < 25; ++trial) {
    Configuration cfg = random_golden_mean(rng, 20);
    // damage a few random sites
    for (int k = 0; k < 3; ++k)
      cfg.set(Site({static_cast<std::int64_t>(rng() % 41) - 20}), static_cast<int>(rng() % 2));
    const DefectField field = defect_field(cfg, spec);
    // independent violation set: sites whose R-block is inadmissible
    SiteSet X;
    for (std::int64_t x = -19; x <= 19; ++x)
      if (!spec.block_admissible(cfg.read_block(Site({x}), 1), 1)) X.insert(Site({x}));
    for (const auto& [z, entry] : field.values) {
      if (!entry.exact) continue;
      std::int64_t dist = std::numeric_limits<std::int64_t>::max();
      for (const Site& v : X) dist = std::min(dist, linf_dist(z, v));
      if (X.empty()) continue;  // exact entries require a certified violation distance
      CHECK(entry.value == spec.radius + dist);
    }
    // Lipschitz bound over exact entries
    std::vector<std::pair<Site, std::int64_t>> exact;
    for (const auto& [z, entry] : field.values)
      if (entry.exact) exact.push_back({z, entry.value});
    for (std::size_t i = 0; i + 1 < exact.size(); ++i)
      CHECK(std::abs(exact[i].second - exact[i + 1].second) <=
            linf_dist(exact[i].first, exact[i + 1].first));
  }
}

TEST_CASE("classification kinds on the bundled fixtures") {
  const SftSpec ice = fx::ice_spec();
  const auto pole = classify_defect(fx::ice_pole_config(), ice, 2);
  CHECK(pole.kind == DefectKind::CodimensionTwo);
  CHECK(pole.hole_components.size() == 1);
  CHECK(pole.unflawed_components.size() == 1);
  const auto gapc = classify_defect(fx::ice_gap_config(), ice, 2);
  CHECK(gapc.kind == DefectKind::DomainBoundary);
  CHECK(gapc.unflawed_components.size() == 2);
  CHECK(gapc.hole_components.empty());
  // A uniform field of one self-matching tile has no defect.
  Configuration uniform = fx::ice_gap_config(6);
  for (std::int64_t x = -6; x <= 6; ++x)
    for (std::int64_t y = -6; y <= 6; ++y)
      uniform.set(Site({x, y}), uniform.get(Site({2, 2})));
  const auto none = classify_defect(uniform, ice, 2);
  CHECK(none.kind == DefectKind::None);
}

TEST_CASE("rendering marks defects and window bounds") {
  const SftSpec ice = fx::ice_spec();
  const Configuration cfg = fx::ice_pole_config(6);
  const std::string art = render_defect_field(cfg, defect_field(cfg, ice));
  CHECK(art.find('#') != std::string::npos);
  CHECK(art.find("·") != std::string::npos);
  CHECK(art.find('2') != std::string::npos);
}
