/**
 * \file symbolic.hpp
 *
 * \brief Alphabets, subshifts of finite type, Wang tile sets, finite-window
 *        configurations, defect fields, defect regions, and codimension
 *        classification.
 *
 * Blocks over a box are stored as symbol vectors in the canonical site order
 * of box_sites (coordinate 0 slowest, last coordinate fastest).  Admissibility
 * of a block whose radius exceeds the declared SFT radius R is decided by
 * gluing: the block is admissible iff every fully contained R-sub-block is.
 */

#ifndef DEFECTLAB_SYMBOLIC_HPP_
#define DEFECTLAB_SYMBOLIC_HPP_

#include "defectlab/lattice.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace defectlab {

using Block = std::vector<int>;  // symbol indices in canonical site order

/// A Wang tile set in D dimensions: unit tiles with per-axis matching
/// relations.  (a, b) in match[d] means tile b may sit at z + e_d when tile a
/// sits at z.
struct WangTileSet {
  int D = 2;
  std::vector<std::string> names;
  std::vector<std::set<std::pair<int, int>>> match;  // one relation per axis

  int ntiles() const { return static_cast<int>(names.size()); }
  bool matches(int axis, int a, int b) const {
    return match[static_cast<std::size_t>(axis)].count({a, b}) > 0;
  }
  /// Tiles with no partner in some axis direction ("dead" tiles).
  std::vector<int> dead_tiles() const;
};

/// A subshift of finite type.  Two representations are supported:
///  - Wang mode (radius 1): admissibility is pairwise matching of adjacent
///    symbols, which scales to any dimension without materializing blocks;
///  - explicit mode: a set of admissible radius-R blocks.
struct SftSpec {
  int D = 2;
  int nsymbols = 0;
  std::vector<std::string> symbol_names;
  std::int64_t radius = 1;  // R

  bool wang_mode = false;
  std::vector<std::set<std::pair<int, int>>> match;  // wang mode, per axis
  std::set<Block> admissible;                        // explicit mode, blocks over B(R)

  /// Admissibility of a pattern on an arbitrary finite site set.
  /// Wang mode: every adjacent pair in the domain matches.  Explicit mode:
  /// every R-block fully contained in the domain is admissible.
  bool pattern_admissible(const std::map<Site, int>& pattern) const;

  /// Admissibility of a block over B(center-free) of the given radius >= R,
  /// by gluing.
  bool block_admissible(const Block& block, std::int64_t r) const;

  /// All admissible patterns over `domain` (canonically ordered site list),
  /// via depth-first search with early constraint pruning.  In explicit mode
  /// every fully contained R-block prunes as soon as it is complete.
  std::vector<Block> enumerate_admissible(const std::vector<Site>& domain) const;

  /// All admissible radius-r blocks (r >= R).
  std::vector<Block> admissible_blocks(std::int64_t r) const;
};

/// Radius-1 SFT with the tile set's matching semantics.
SftSpec wang_to_sft(const WangTileSet& w);

/// True when `block` (over B(r)) is admissible for the spec.
bool sft_admissibility_check(const SftSpec& spec, const Block& block, std::int64_t r);

/// The radius-r Wang representation of an SFT: tiles are the admissible
/// r-blocks and a matches b along axis d iff the (+d)-shifted overlap of a
/// agrees with the (-d)-overlap of b.  Requires r >= R.
WangTileSet wang_representation(const SftSpec& spec, std::int64_t r);

/// For a Wang-representation tile set built by wang_representation, the
/// blocks backing each tile (same order as names).
struct WangRepresentation {
  WangTileSet tiles;
  std::vector<Block> blocks;  // blocks over B(r)
  std::int64_t r = 0;
};
WangRepresentation wang_representation_with_blocks(const SftSpec& spec, std::int64_t r);

/// A finite rectangular window of symbols, optionally extended periodically
/// with the window extents as periods.
struct Configuration {
  int D = 2;
  Site lo, hi;             // inclusive corners
  std::vector<int> cells;  // canonical order over [lo..hi]
  bool periodic = false;

  std::int64_t extent(int axis) const { return hi.c[static_cast<std::size_t>(axis)] - lo.c[static_cast<std::size_t>(axis)] + 1; }
  bool in_window(const Site& z) const;
  /// Symbol at z; wraps when periodic, throws when outside otherwise.
  int get(const Site& z) const;
  void set(const Site& z, int symbol);
  /// True when all of B(z, r) is accessible (always true when periodic).
  bool ball_accessible(const Site& z, std::int64_t r) const;
  /// The block over B(z, r) in canonical order.
  Block read_block(const Site& z, std::int64_t r) const;

  static Configuration filled(int D, const Site& lo, const Site& hi, int symbol);
};

/// Per-site defect field values.  `value` is exact when `exact`; otherwise it
/// is a verified lower bound limited by the window ("window-bound" sentinel).
struct DefectField {
  struct Entry {
    std::int64_t value = 0;
    bool exact = false;
  };
  std::int64_t R = 1;
  std::map<Site, Entry> values;

  /// Verified lower bound at z (value when exact).
  std::int64_t lower_bound(const Site& z) const { return values.at(z).value; }
};

/// A labeled site set: an unflawed stratum G_r or the defect set.
struct Region {
  SiteSet sites;
  std::string label;
  std::int64_t r = 0;
};

/// The defect field of the configuration.  At each site z whose R-ball is
/// accessible, the field is the smallest radius at which the centered block
/// stops being admissible; equivalently R + (l-infinity distance to the
/// violation set).  Entries are flagged exact only where the window can
/// certify the value.  Throws when no R-ball fits in the window.
DefectField defect_field(const Configuration& cfg, const SftSpec& spec);

/// The unflawed stratum G_r = { z : F(z) >= r certified } and the defect set
/// (sites where the R-block is inadmissible).
std::pair<Region, Region> defect_region(const Configuration& cfg, const SftSpec& spec,
                                        std::int64_t r);

enum class DefectKind { None, DomainBoundary, CodimensionTwo, Mixed };

struct DefectClassification {
  DefectKind kind = DefectKind::None;
  std::vector<SiteSet> unflawed_components;  // components of G_r
  std::vector<SiteSet> hole_components;      // bounded complement components
  std::vector<SiteSet> defect_components;    // components of the defect set
  std::vector<bool> component_projective;    // per unflawed component: meets the
                                             // deepest window-verifiable stratum
  std::int64_t r = 0;
  std::int64_t r_max = 0;  // deepest stratum used for the projective flag
};

/// Classification of the defect structure at level r.  D = 2 gives the full
/// domain-boundary / codimension-two split; D = 3 reports domain-boundary
/// versus other only.
DefectClassification classify_defect(const Configuration& cfg, const SftSpec& spec,
                                     std::int64_t r);

/// ASCII rendering of the defect field over the window (D = 2): digits for
/// exact values capped at 9, '#' for the defect set, '.' for window-bound.
std::string render_defect_field(const Configuration& cfg, const DefectField& field);

struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace defectlab

#endif  // DEFECTLAB_SYMBOLIC_HPP_
