#include "defectlab/fixtures.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace defectlab {
namespace fixtures {

namespace {

// --- Six-vertex (ice) model -------------------------------------------------
// A tile is four edge arrows (n, e, s, w); 'N'/'S' on horizontal edges,
// 'E'/'W' on vertical edges.  The ice rule: exactly two arrows point into the
// vertex (in-arrows are n == 'S', s == 'N', e == 'W', w == 'E').

struct IceTile {
  char n, e, s, w;
};

const std::vector<IceTile>& ice_tile_list() {
  static const std::vector<IceTile> tiles = [] {
    std::vector<IceTile> out;
    for (char n : {'N', 'S'})
      for (char e : {'E', 'W'})
        for (char s : {'N', 'S'})
          for (char w : {'E', 'W'}) {
            const int in = (n == 'S') + (s == 'N') + (e == 'W') + (w == 'E');
            if (in == 2) out.push_back(IceTile{n, e, s, w});
          }
    return out;
  }();
  return tiles;
}

int ice_tile_index(char n, char e, char s, char w) {
  const auto& tiles = ice_tile_list();
  for (std::size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i].n == n && tiles[i].e == e && tiles[i].s == s && tiles[i].w == w)
      return static_cast<int>(i);
  return -1;
}

// --- Spiral height field for the monodromy-eight defect ---------------------
// h0(z) = |x| + |y| plus a four-sector staircase; every step between adjacent
// sites changes the total height by +1 mod 8 (walking clockwise), with the
// anomalies confined to the origin.  The fixture stores the negated field so
// counterclockwise loops accumulate +8.

std::int64_t windmill_sector(std::int64_t x, std::int64_t y) {
  if (x >= 0 && y >= 1) return 0;   // north sector
  if (x >= 1 && y <= 0) return 2;   // east sector
  if (x <= 0 && y <= -1) return 4;  // south sector
  if (x <= -1 && y >= 0) return 6;  // west sector
  return 0;                         // origin
}

std::int64_t spiral_height(std::int64_t x, std::int64_t y) {
  return -(std::abs(x) + std::abs(y) + windmill_sector(x, y));
}

// Height increments map to arrow values: +1 or -1 per unit step, with an
// arbitrary tie-break near the origin where the spiral is singular.
int height_arrow(std::int64_t delta) {
  const std::int64_t m = ((delta % 8) + 8) % 8;
  if (m == 1) return 1;
  if (m == 7) return -1;
  return 1;
}

// --- Dominoes ----------------------------------------------------------------

constexpr int DL = 0, DR = 1, DB = 2, DT = 3;

// --- Path tiles ---------------------------------------------------------------
// A tile is four edge colours (n, e, s, w) in {0 = blank, 1 = blue, 2 = red}.

struct PathTile {
  int n, e, s, w;
};

const std::vector<PathTile>& path_tile_list() {
  static const std::vector<PathTile> tiles = [] {
    std::vector<PathTile> out;
    out.push_back({0, 0, 0, 0});  // blank
    for (int c : {1, 2}) {
      out.push_back({0, c, 0, c});  // east-west strand
      out.push_back({c, 0, c, 0});  // north-south strand
      out.push_back({c, c, 0, 0});  // north-east corner
      out.push_back({0, c, c, 0});  // south-east corner
      out.push_back({0, 0, c, c});  // south-west corner
      out.push_back({c, 0, 0, c});  // north-west corner
      out.push_back({c, c, c, c});  // monochrome crossing
    }
    for (int a : {1, 2}) {
      const int b = 3 - a;
      out.push_back({b, a, b, a});  // a east-west over b north-south
      out.push_back({a, a, b, b});  // north-east a, south-west b
      out.push_back({a, b, b, a});  // north-west a, south-east b
    }
    return out;
  }();
  return tiles;
}

int path_tile_index(int n, int e, int s, int w) {
  const auto& tiles = path_tile_list();
  for (std::size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i].n == n && tiles[i].e == e && tiles[i].s == s && tiles[i].w == w)
      return static_cast<int>(i);
  return -1;
}

GroupElement colour_pair(const GroupSpecPtr& g, int colour) {
  std::vector<std::int64_t> v(2, 0);
  if (colour == 1) v[0] = 1;
  if (colour == 2) v[1] = 1;
  return abelian_element(g, v);
}

// --- 3D ball-and-pin cubes -----------------------------------------------------
// A cube is a 6-bit mask over faces; bit 2d marks a pin on the +d face and
// bit 2d+1 a pin on the -d face; exactly three pins each.

const std::vector<int>& q_masks() {
  static const std::vector<int> masks = [] {
    std::vector<int> out;
    for (int m = 0; m < 64; ++m)
      if (__builtin_popcount(static_cast<unsigned>(m)) == 3) out.push_back(m);
    return out;
  }();
  return masks;
}

int q_tile_of_mask(int mask) {
  const auto& masks = q_masks();
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (masks[i] == mask) return static_cast<int>(i);
  return -1;
}

}  // namespace

// ============================ ice ===========================================

WangTileSet ice_tiles() {
  WangTileSet w;
  w.D = 2;
  const auto& tiles = ice_tile_list();
  for (const IceTile& t : tiles)
    w.names.push_back(std::string{t.n, t.e, t.s, t.w});
  w.match.resize(2);
  for (int a = 0; a < static_cast<int>(tiles.size()); ++a)
    for (int b = 0; b < static_cast<int>(tiles.size()); ++b) {
      if (tiles[a].e == tiles[b].w) w.match[0].insert({a, b});
      if (tiles[a].n == tiles[b].s) w.match[1].insert({a, b});
    }
  return w;
}

SftSpec ice_spec() { return wang_to_sft(ice_tiles()); }

DynamicalCocycleRule ice_height_rule() {
  DynamicalCocycleRule rule;
  rule.D = 2;
  rule.radius = 0;
  rule.group = make_z();
  rule.name = "ice-height";
  const auto tiles = ice_tile_list();
  rule.step.resize(2);
  rule.step[0] = [tiles, g = rule.group](const Block& b) {
    return abelian_element(g, {tiles[static_cast<std::size_t>(b[0])].s == 'N' ? 1 : -1});
  };
  rule.step[1] = [tiles, g = rule.group](const Block& b) {
    return abelian_element(g, {tiles[static_cast<std::size_t>(b[0])].w == 'W' ? 1 : -1});
  };
  return rule;
}

Configuration ice_pole_config(std::int64_t w) {
  Configuration cfg = Configuration::filled(2, Site({-w, -w}), Site({w, w}), 0);
  auto c1 = [](std::int64_t x, std::int64_t y) {
    return height_arrow(spiral_height(x + 1, y) - spiral_height(x, y));
  };
  auto c2 = [](std::int64_t x, std::int64_t y) {
    return height_arrow(spiral_height(x, y + 1) - spiral_height(x, y));
  };
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y) {
      const char s = c1(x, y) == 1 ? 'N' : 'S';
      const char ww = c2(x, y) == 1 ? 'W' : 'E';
      const char n = c1(x, y + 1) == 1 ? 'N' : 'S';
      const char e = c2(x + 1, y) == 1 ? 'W' : 'E';
      int t = ice_tile_index(n, e, s, ww);
      if (t < 0) t = 0;  // singular core; any tile keeps the defect local
      cfg.set(Site({x, y}), t);
    }
  return cfg;
}

Configuration ice_gap_config(std::int64_t w) {
  const int upper = ice_tile_index('N', 'E', 'N', 'E');
  const int lower = ice_tile_index('S', 'E', 'S', 'E');
  Configuration cfg = Configuration::filled(2, Site({-w, -w}), Site({w, w}), 0);
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y)
      cfg.set(Site({x, y}), y >= 1 ? upper : lower);
  return cfg;
}

// ============================ dominoes ======================================

WangTileSet domino_tiles() {
  WangTileSet w;
  w.D = 2;
  w.names = {"L", "R", "B", "T"};
  w.match.resize(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if ((a == DL) == (b == DR)) w.match[0].insert({a, b});
      if ((a == DB) == (b == DT)) w.match[1].insert({a, b});
    }
  return w;
}

SftSpec domino_spec() { return wang_to_sft(domino_tiles()); }

DynamicalCocycleRule domino_rule() {
  DynamicalCocycleRule rule;
  rule.D = 2;
  rule.radius = 0;
  rule.group = make_z2z2();
  rule.name = "domino-parity";
  rule.step.resize(2);
  rule.step[0] = [g = rule.group](const Block& b) {
    return word_element(g, b[0] == DT ? "vhv" : "h");
  };
  rule.step[1] = [g = rule.group](const Block& b) {
    return word_element(g, b[0] == DR ? "hvh" : "v");
  };
  return rule;
}

Configuration domino_gap_config(std::int64_t w) {
  Configuration cfg = Configuration::filled(2, Site({-w, -w}), Site({w, w}), 0);
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y) {
      bool top;
      if (y >= 0) {
        const bool colshift = ((x % 2) + 2) % 2 == 1;
        top = colshift ? (y % 2 == 0 && y >= 2) : (y % 2 == 1);
      } else {
        top = ((y % 2) + 2) % 2 == 1;
      }
      cfg.set(Site({x, y}), top ? DT : DB);
    }
  return cfg;
}

Configuration domino_gap_opposite_config(std::int64_t w) {
  Configuration cfg = Configuration::filled(2, Site({-w, -w}), Site({w, w}), 0);
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y) {
      const std::int64_t par = (((x + y) % 2) + 2) % 2;
      bool left;
      if (x <= -1) left = par == 0;
      else if (x >= 1) left = par == 1;
      else left = ((y % 2) + 2) % 2 == 0;
      cfg.set(Site({x, y}), left ? DL : DR);
    }
  return cfg;
}

// ============================ path tiles ====================================

WangTileSet path_tiles() {
  WangTileSet w;
  w.D = 2;
  const auto& tiles = path_tile_list();
  const char* colour = "-br";  // blank, blue, red
  for (const PathTile& t : tiles)
    w.names.push_back(std::string{colour[t.n], colour[t.e], colour[t.s], colour[t.w]});
  w.match.resize(2);
  for (int a = 0; a < static_cast<int>(tiles.size()); ++a)
    for (int b = 0; b < static_cast<int>(tiles.size()); ++b) {
      if (tiles[a].e == tiles[b].w) w.match[0].insert({a, b});
      if (tiles[a].n == tiles[b].s) w.match[1].insert({a, b});
    }
  return w;
}

SftSpec path_spec() { return wang_to_sft(path_tiles()); }

DynamicalCocycleRule path_rule() {
  DynamicalCocycleRule rule;
  rule.D = 2;
  rule.radius = 0;
  rule.group = make_fg_abelian(0, {2, 2});
  rule.name = "path-parity";
  const auto tiles = path_tile_list();
  rule.step.resize(2);
  rule.step[0] = [tiles, g = rule.group](const Block& b) {
    return colour_pair(g, tiles[static_cast<std::size_t>(b[0])].s);
  };
  rule.step[1] = [tiles, g = rule.group](const Block& b) {
    return colour_pair(g, tiles[static_cast<std::size_t>(b[0])].w);
  };
  return rule;
}

Configuration path_three_defect_config() {
  const int blank = path_tile_index(0, 0, 0, 0);
  Configuration cfg = Configuration::filled(2, Site({0, 0}), Site({24, 24}), blank);
  // Endpoint A at (6,6): a blue east-west strand and a red north-south strand
  // both terminate there.
  for (std::int64_t x = 0; x <= 5; ++x) cfg.set(Site({x, 6}), path_tile_index(0, 1, 0, 1));
  for (std::int64_t y = 0; y <= 5; ++y) cfg.set(Site({6, y}), path_tile_index(2, 0, 2, 0));
  cfg.set(Site({6, 6}), path_tile_index(2, 1, 2, 1));  // crossing, strands end here
  // Endpoint B at (12,12): a red east-west strand ends.
  for (std::int64_t x = 12; x <= 24; ++x) cfg.set(Site({x, 12}), path_tile_index(0, 2, 0, 2));
  // Endpoint C at (18,18): a blue north-south strand ends.
  for (std::int64_t y = 18; y <= 24; ++y) cfg.set(Site({18, y}), path_tile_index(1, 0, 1, 0));
  return cfg;
}

// ============================ ball-and-pin cubes ============================

WangTileSet q_tiles() {
  WangTileSet w;
  w.D = 3;
  const auto& masks = q_masks();
  for (int m : masks) {
    std::string name;
    static const char* labels[6] = {"+x", "-x", "+y", "-y", "+z", "-z"};
    for (int b = 0; b < 6; ++b)
      if (m & (1 << b)) name += labels[b];
    w.names.push_back(name);
  }
  w.match.resize(3);
  for (int a = 0; a < static_cast<int>(masks.size()); ++a)
    for (int b = 0; b < static_cast<int>(masks.size()); ++b)
      for (int d = 0; d < 3; ++d) {
        const int pa = (masks[static_cast<std::size_t>(a)] >> (2 * d)) & 1;
        const int pb = (masks[static_cast<std::size_t>(b)] >> (2 * d + 1)) & 1;
        if ((pa ^ pb) == 1) w.match[static_cast<std::size_t>(d)].insert({a, b});
      }
  return w;
}

SftSpec q_spec() { return wang_to_sft(q_tiles()); }

EquivariantCochainRule q_pin_rule() {
  EquivariantCochainRule rule;
  rule.D = 3;
  rule.degree = 2;
  rule.radius = 0;
  rule.group = make_z();
  rule.name = "q-pin";
  // The square spanned by axes {i,j} based at z is read off the -k face of
  // the cube at z (k the remaining axis); a pin there means the face arrow is
  // -e_k, otherwise +e_k.  Value +1 when the arrow agrees with the
  // right-handed normal of the square.
  const auto masks = q_masks();
  auto component = [masks, g = rule.group](int k, int normal_sign) {
    return [masks, g, k, normal_sign](const Block& b) {
      const int mask = masks[static_cast<std::size_t>(b[0])];
      const int arrow = (mask >> (2 * k + 1)) & 1 ? -1 : 1;
      return abelian_element(g, {arrow == normal_sign ? 1 : -1});
    };
  };
  rule.component[{1, 2}] = component(0, 1);
  rule.component[{0, 2}] = component(1, -1);
  rule.component[{0, 1}] = component(2, 1);
  return rule;
}

Configuration q_pole_config(std::int64_t w) {
  Configuration cfg = Configuration::filled(3, Site({-w, -w, -w}), Site({w, w, w}), 0);
  // Arrow on the face between z and z + e_i: +e_i when z lies on the
  // nonnegative i-axis, else -e_i.  The cube at the origin then needs a pin
  // on all six faces, which no tile provides: a point defect with all pins
  // outward.
  auto on_axis = [](const Site& z, int i) {
    for (int j = 0; j < 3; ++j)
      if (j != i && z.c[static_cast<std::size_t>(j)] != 0) return false;
    return z.c[static_cast<std::size_t>(i)] >= 0;
  };
  for (std::int64_t x = -w; x <= w; ++x)
    for (std::int64_t y = -w; y <= w; ++y)
      for (std::int64_t z = -w; z <= w; ++z) {
        const Site s({x, y, z});
        int mask = 0;
        for (int i = 0; i < 3; ++i) {
          if (on_axis(s, i)) mask |= 1 << (2 * i);  // pin out of the +i face
          const Site below = s - Site::unit(3, i);
          if (!on_axis(below, i)) mask |= 1 << (2 * i + 1);  // pin out of -i
        }
        int t = q_tile_of_mask(mask);
        if (t < 0) t = 0;  // the six-pin origin
        cfg.set(s, t);
      }
  return cfg;
}

// ============================ golden mean shift ==============================

SftSpec golden_mean_spec() {
  SftSpec spec;
  spec.D = 1;
  spec.nsymbols = 2;
  spec.symbol_names = {"0", "1"};
  spec.radius = 1;
  spec.wang_mode = false;
  spec.admissible = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}};
  return spec;
}

Configuration golden_mean_config(std::int64_t w) {
  return Configuration::filled(1, Site({-w}), Site({w}), 0);
}

std::vector<std::string> fixture_names() {
  return {"ice-pole",    "ice-gap",          "domino-gap", "domino-gap-opposite",
          "path-three-defect", "q-pole",     "golden-mean"};
}

}  // namespace fixtures
}  // namespace defectlab
