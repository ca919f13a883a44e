#include "doctest.h"

#include "defectlab/automaton.hpp"
#include "defectlab/fixtures.hpp"

#include <random>

using namespace defectlab;
namespace fx = defectlab::fixtures;

namespace {

Configuration random_golden(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi,
                            bool periodic = false) {
  Configuration cfg = Configuration::filled(1, Site({lo}), Site({hi}), 0);
  cfg.periodic = periodic;
  int prev = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    int sym = (prev == 1) ? 0 : static_cast<int>(rng() % 2);
    cfg.set(Site({x}), sym);
    prev = sym;
  }
  if (periodic && cfg.get(Site({lo})) == 1 && cfg.get(Site({hi})) == 1) cfg.set(Site({hi}), 0);
  return cfg;
}

}  // namespace

TEST_CASE("identity automaton reproduces the window") {
  const Configuration cfg = fx::ice_pole_config(5);
  const Configuration out = apply(identity_ca(2), cfg);
  CHECK(out.lo == cfg.lo);
  CHECK(out.hi == cfg.hi);
  CHECK(out.cells == cfg.cells);
}

TEST_CASE("shift automaton moves symbols and shrinks the window") {
  const Configuration cfg = fx::ice_pole_config(6);
  const Site v({1, -1});
  const CaRule ca = shift_ca(v);
  CHECK(ca.radius == 1);
  const Configuration out = apply(ca, cfg);
  CHECK(out.lo == Site({cfg.lo.c[0] + 1, cfg.lo.c[1] + 1}));
  CHECK(out.hi == Site({cfg.hi.c[0] - 1, cfg.hi.c[1] - 1}));
  for (std::int64_t x = out.lo.c[0]; x <= out.hi.c[0]; ++x)
    for (std::int64_t y = out.lo.c[1]; y <= out.hi.c[1]; ++y)
      CHECK(out.get(Site({x, y})) == cfg.get(Site({x + 1, y - 1})));
}

TEST_CASE("periodic windows keep their size under application") {
  std::mt19937_64 rng(11);
  const Configuration cfg = random_golden(rng, 0, 15, /*periodic=*/true);
  const Configuration out = apply(shift_ca(Site({2})), cfg);
  CHECK(out.lo == cfg.lo);
  CHECK(out.hi == cfg.hi);
  for (std::int64_t x = 0; x <= 15; ++x)
    CHECK(out.get(Site({x})) == cfg.get(Site({x + 2})));
}

TEST_CASE("table automaton matches its defining table") {
  // Radius-1 binary majority-with-xor table in one dimension.
  std::vector<int> table(8, 0);
  for (int i = 0; i < 8; ++i) table[static_cast<std::size_t>(i)] = ((i) ^ (i >> 1) ^ (i >> 2)) & 1;
  const CaRule ca = table_ca(1, 1, 2, table);
  CHECK(ca.radius == 1);
  std::mt19937_64 rng(5);
  Configuration cfg = Configuration::filled(1, Site({-6}), Site({6}), 0);
  for (std::int64_t x = -6; x <= 6; ++x) cfg.set(Site({x}), static_cast<int>(rng() % 2));
  const Configuration out = apply(ca, cfg);
  for (std::int64_t x = -5; x <= 5; ++x) {
    const int a = cfg.get(Site({x - 1})), b = cfg.get(Site({x})), c = cfg.get(Site({x + 1}));
    CHECK(out.get(Site({x})) == (a ^ b ^ c));
  }
}

TEST_CASE("expression automaton evaluates arithmetic over the neighbourhood") {
  const CaRule ca = expression_ca(1, 1, 2, "(x0 + x1 + x2) % 2");
  std::mt19937_64 rng(7);
  Configuration cfg = Configuration::filled(1, Site({0}), Site({9}), 0);
  for (std::int64_t x = 0; x <= 9; ++x) cfg.set(Site({x}), static_cast<int>(rng() % 2));
  const Configuration out = apply(ca, cfg);
  for (std::int64_t x = 1; x <= 8; ++x) {
    const int s = cfg.get(Site({x - 1})) + cfg.get(Site({x})) + cfg.get(Site({x + 1}));
    CHECK(out.get(Site({x})) == s % 2);
  }
}

TEST_CASE("invariance check proves the identity and the shift invariant") {
  const SftSpec gm = fx::golden_mean_spec();
  CHECK(check_invariance(identity_ca(1), gm).verdict == InvarianceVerdict::ProvedOnBlocks);
  CHECK(check_invariance(shift_ca(Site({1})), gm).verdict == InvarianceVerdict::ProvedOnBlocks);
  const SftSpec ice = fx::ice_spec();
  CHECK(check_invariance(shift_ca(Site({1, 0})), ice).verdict ==
        InvarianceVerdict::ProvedOnBlocks);
}

TEST_CASE("invariance check produces a counterexample for a symbol swap") {
  // Swapping 0 <-> 1 maps the admissible block 1 0 1 to 0 1 0 with a 1 1
  // factor forbidden in the golden-mean shift.
  const SftSpec gm = fx::golden_mean_spec();
  const CaRule swap = expression_ca(1, 0, 2, "1 - x0");
  const InvarianceReport rep = check_invariance(swap, gm);
  CHECK(rep.verdict == InvarianceVerdict::Counterexample);
  // The counterexample block itself must be admissible with an inadmissible image.
  const std::int64_t r = gm.radius + swap.radius;
  CHECK(rep.counterexample.size() == static_cast<std::size_t>(2 * r + 1));
  CHECK(gm.block_admissible(rep.counterexample, r));
}

TEST_CASE("defect field drop inequality holds for the shift on a flawed window") {
  const Configuration cfg = fx::ice_gap_config(8);
  const EnergyDropReport rep = energy_drop_check(shift_ca(Site({0, 1})), fx::ice_spec(), cfg);
  CHECK(rep.holds);
  CHECK(rep.slack >= 0);
}
