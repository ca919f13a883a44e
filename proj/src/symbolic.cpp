/**
 * \file symbolic.cpp
 * \brief Implementation of SFT admissibility, Wang representations,
 *        configurations, defect fields, and defect classification.
 */

#include "defectlab/symbolic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace defectlab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

constexpr std::int64_t kUnboundedValue = std::numeric_limits<std::int64_t>::max() / 4;

}  // namespace

std::vector<int> WangTileSet::dead_tiles() const {
  std::vector<int> dead;
  for (int t = 0; t < ntiles(); ++t) {
    bool alive = true;
    for (int d = 0; d < D && alive; ++d) {
      bool plus = false, minus = false;
      for (const auto& [a, b] : match[static_cast<std::size_t>(d)]) {
        if (a == t) plus = true;
        if (b == t) minus = true;
      }
      alive = plus && minus;
    }
    if (!alive) dead.push_back(t);
  }
  return dead;
}

bool SftSpec::pattern_admissible(const std::map<Site, int>& pattern) const {
  if (wang_mode) {
    for (const auto& [z, sym] : pattern)
      for (int d = 0; d < D; ++d) {
        Site n = z + Site::unit(D, d);
        auto it = pattern.find(n);
        if (it != pattern.end() &&
            !match[static_cast<std::size_t>(d)].count({sym, it->second}))
          return false;
      }
    return true;
  }
  // Explicit mode: every fully contained R-block must be admissible.
  for (const auto& [z, sym] : pattern) {
    Box ball{z, radius};
    Block blk;
    bool complete = true;
    for (const auto& s : ball.sites()) {
      auto it = pattern.find(s);
      if (it == pattern.end()) {
        complete = false;
        break;
      }
      blk.push_back(it->second);
    }
    if (complete && !admissible.count(blk)) return false;
  }
  return true;
}

bool SftSpec::block_admissible(const Block& block, std::int64_t r) const {
  require(r >= radius, "block radius below the SFT radius");
  const Box box{Site::zero(D), r};
  const std::vector<Site> sites = box.sites();
  require(block.size() == sites.size(), "block size mismatch");
  if (wang_mode) {
    // Pairwise matching of all (+axis)-adjacent positions.
    std::map<Site, int> pat;
    for (std::size_t i = 0; i < sites.size(); ++i) pat.emplace(sites[i], block[i]);
    return pattern_admissible(pat);
  }
  // Gluing: every centered R-sub-block must be admissible.
  std::map<Site, int> pat;
  for (std::size_t i = 0; i < sites.size(); ++i) pat.emplace(sites[i], block[i]);
  for (const auto& x : Box{Site::zero(D), r - radius}.sites()) {
    Block sub;
    for (const auto& s : Box{x, radius}.sites()) sub.push_back(pat.at(s));
    if (!admissible.count(sub)) return false;
  }
  return true;
}

std::vector<Block> SftSpec::enumerate_admissible(const std::vector<Site>& domain) const {
  std::vector<Block> out;
  const std::size_t n = domain.size();
  std::map<Site, std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) order.emplace(domain[i], i);

  // Wang mode: for each position, the earlier-assigned neighbours to check.
  std::vector<std::vector<std::pair<std::size_t, int>>> checks(n);  // (pos, +-axis code)
  if (wang_mode) {
    for (std::size_t i = 0; i < n; ++i)
      for (int d = 0; d < D; ++d) {
        Site plus = domain[i] + Site::unit(D, d);
        auto it = order.find(plus);
        if (it != order.end() && it->second < i)
          checks[i].push_back({it->second, d + 1});  // domain[i] -> plus
        Site minus = domain[i] - Site::unit(D, d);
        it = order.find(minus);
        if (it != order.end() && it->second < i)
          checks[i].push_back({it->second, -(d + 1)});  // minus -> domain[i]
      }
  }
  // Explicit mode: R-blocks fully inside the domain, keyed by the step at
  // which they complete.
  std::vector<std::vector<std::vector<std::size_t>>> complete_blocks(n);
  if (!wang_mode) {
    for (const auto& [z, idx] : order) {
      (void)idx;
      std::vector<std::size_t> positions;
      bool inside = true;
      std::size_t last = 0;
      for (const auto& s : Box{z, radius}.sites()) {
        auto it = order.find(s);
        if (it == order.end()) {
          inside = false;
          break;
        }
        positions.push_back(it->second);
        last = std::max(last, it->second);
      }
      if (inside) complete_blocks[last].push_back(std::move(positions));
    }
  }

  Block cur(n, 0);
  std::vector<int> stack_pos;
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int sym = 0; sym < nsymbols; ++sym) {
      cur[i] = sym;
      bool ok = true;
      if (wang_mode) {
        for (const auto& [j, code] : checks[i]) {
          const int d = std::abs(code) - 1;
          const bool forward = code > 0;  // domain[i] -> neighbour j
          const int a = forward ? sym : cur[j];
          const int b = forward ? cur[j] : sym;
          if (!match[static_cast<std::size_t>(d)].count({a, b})) {
            ok = false;
            break;
          }
        }
      } else {
        for (const auto& positions : complete_blocks[i]) {
          Block blk;
          blk.reserve(positions.size());
          for (auto p : positions) blk.push_back(cur[p]);
          if (!admissible.count(blk)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) dfs(i + 1);
    }
  };
  dfs(0);
  return out;
}

std::vector<Block> SftSpec::admissible_blocks(std::int64_t r) const {
  require(r >= radius, "block radius below the SFT radius");
  return enumerate_admissible(Box{Site::zero(D), r}.sites());
}

SftSpec wang_to_sft(const WangTileSet& w) {
  SftSpec spec;
  spec.D = w.D;
  spec.nsymbols = w.ntiles();
  spec.symbol_names = w.names;
  spec.radius = 1;
  spec.wang_mode = true;
  spec.match = w.match;
  return spec;
}

bool sft_admissibility_check(const SftSpec& spec, const Block& block, std::int64_t r) {
  return spec.block_admissible(block, r);
}

WangRepresentation wang_representation_with_blocks(const SftSpec& spec, std::int64_t r) {
  require(r >= spec.radius, "wang_representation requires r >= R");
  WangRepresentation rep;
  rep.r = r;
  rep.blocks = spec.admissible_blocks(r);
  rep.tiles.D = spec.D;
  rep.tiles.match.assign(static_cast<std::size_t>(spec.D), {});
  for (std::size_t i = 0; i < rep.blocks.size(); ++i)
    rep.tiles.names.push_back("b" + std::to_string(i));

  const std::vector<Site> sites = Box{Site::zero(spec.D), r}.sites();
  std::map<Site, std::size_t> order;
  for (std::size_t i = 0; i < sites.size(); ++i) order.emplace(sites[i], i);

  for (int d = 0; d < spec.D; ++d) {
    // a matches b along +e_d iff b_y = a_{y+e_d} whenever both y, y+e_d are
    // in B(r): the trailing overlap of a equals the leading overlap of b.
    std::vector<std::size_t> lead, trail;  // positions of the two overlaps
    for (std::size_t i = 0; i < sites.size(); ++i) {
      Site shifted = sites[i] + Site::unit(spec.D, d);
      auto it = order.find(shifted);
      if (it != order.end()) {
        lead.push_back(i);            // y with y + e_d in B(r)
        trail.push_back(it->second);  // y + e_d
      }
    }
    std::map<Block, std::vector<int>> by_lead_key;
    for (std::size_t t = 0; t < rep.blocks.size(); ++t) {
      Block key;
      key.reserve(lead.size());
      for (auto p : lead) key.push_back(rep.blocks[t][p]);
      by_lead_key[std::move(key)].push_back(static_cast<int>(t));
    }
    for (std::size_t t = 0; t < rep.blocks.size(); ++t) {
      Block key;
      key.reserve(trail.size());
      for (auto p : trail) key.push_back(rep.blocks[t][p]);
      auto it = by_lead_key.find(key);
      if (it == by_lead_key.end()) continue;
      for (int b : it->second)
        rep.tiles.match[static_cast<std::size_t>(d)].insert({static_cast<int>(t), b});
    }
  }
  return rep;
}

WangTileSet wang_representation(const SftSpec& spec, std::int64_t r) {
  return wang_representation_with_blocks(spec, r).tiles;
}

bool Configuration::in_window(const Site& z) const {
  for (int d = 0; d < D; ++d)
    if (z.c[static_cast<std::size_t>(d)] < lo.c[static_cast<std::size_t>(d)] ||
        z.c[static_cast<std::size_t>(d)] > hi.c[static_cast<std::size_t>(d)])
      return false;
  return true;
}

int Configuration::get(const Site& z) const {
  Site w = z;
  if (periodic) {
    for (int d = 0; d < D; ++d) {
      const std::int64_t e = extent(d);
      auto& x = w.c[static_cast<std::size_t>(d)];
      x = (x - lo.c[static_cast<std::size_t>(d)]) % e;
      if (x < 0) x += e;
      x += lo.c[static_cast<std::size_t>(d)];
    }
  } else if (!in_window(w)) {
    throw std::out_of_range("site outside the configuration window");
  }
  std::size_t idx = 0;
  for (int d = 0; d < D; ++d)
    idx = idx * static_cast<std::size_t>(extent(d)) +
          static_cast<std::size_t>(w.c[static_cast<std::size_t>(d)] -
                                   lo.c[static_cast<std::size_t>(d)]);
  return cells[idx];
}

void Configuration::set(const Site& z, int symbol) {
  require(in_window(z), "site outside the configuration window");
  std::size_t idx = 0;
  for (int d = 0; d < D; ++d)
    idx = idx * static_cast<std::size_t>(extent(d)) +
          static_cast<std::size_t>(z.c[static_cast<std::size_t>(d)] -
                                   lo.c[static_cast<std::size_t>(d)]);
  cells[idx] = symbol;
}

bool Configuration::ball_accessible(const Site& z, std::int64_t r) const {
  if (periodic) return true;
  for (int d = 0; d < D; ++d) {
    const auto x = z.c[static_cast<std::size_t>(d)];
    if (x - r < lo.c[static_cast<std::size_t>(d)] || x + r > hi.c[static_cast<std::size_t>(d)])
      return false;
  }
  return true;
}

Block Configuration::read_block(const Site& z, std::int64_t r) const {
  Block b;
  for (const auto& s : Box{z, r}.sites()) b.push_back(get(s));
  return b;
}

Configuration Configuration::filled(int D, const Site& lo, const Site& hi, int symbol) {
  Configuration c;
  c.D = D;
  c.lo = lo;
  c.hi = hi;
  std::size_t n = 1;
  for (int d = 0; d < D; ++d) n *= static_cast<std::size_t>(c.extent(d));
  c.cells.assign(n, symbol);
  return c;
}

namespace {

/// Max radius around z that stays inside the window (huge when periodic).
std::int64_t window_margin(const Configuration& cfg, const Site& z) {
  if (cfg.periodic) return kUnboundedValue;
  std::int64_t m = kUnboundedValue;
  for (int d = 0; d < cfg.D; ++d) {
    const auto x = z.c[static_cast<std::size_t>(d)];
    m = std::min(m, x - cfg.lo.c[static_cast<std::size_t>(d)]);
    m = std::min(m, cfg.hi.c[static_cast<std::size_t>(d)] - x);
  }
  return m;
}

/// l-infinity distance respecting periodic wrap.
std::int64_t config_dist(const Configuration& cfg, const Site& a, const Site& b) {
  if (!cfg.periodic) return linf_dist(a, b);
  std::int64_t m = 0;
  for (int d = 0; d < cfg.D; ++d) {
    const std::int64_t e = cfg.extent(d);
    std::int64_t dx = std::abs(a.c[static_cast<std::size_t>(d)] - b.c[static_cast<std::size_t>(d)]) % e;
    dx = std::min(dx, e - dx);
    m = std::max(m, dx);
  }
  return m;
}

}  // namespace

DefectField defect_field(const Configuration& cfg, const SftSpec& spec) {
  DefectField field;
  field.R = spec.radius;
  std::vector<Site> domain;
  for (const auto& z : box_sites(cfg.lo, cfg.hi))
    if (cfg.ball_accessible(z, spec.radius)) domain.push_back(z);
  if (domain.empty())
    throw WindowTooSmall("window holds no full radius-R ball");

  std::vector<Site> violations;
  for (const auto& z : domain)
    if (!spec.block_admissible(cfg.read_block(z, spec.radius), spec.radius))
      violations.push_back(z);

  for (const auto& z : domain) {
    std::int64_t d = kUnboundedValue;
    for (const auto& x : violations) d = std::min(d, config_dist(cfg, z, x));
    const std::int64_t margin = window_margin(cfg, z);
    DefectField::Entry e;
    if (!violations.empty() && spec.radius + d <= margin + 1) {
      e.value = spec.radius + d;  // first inadmissible radius, certified
      e.exact = true;
    } else {
      e.value = std::min(violations.empty() ? kUnboundedValue : spec.radius + d,
                         margin + 1);
      e.exact = false;  // window-bound: only a lower bound is certified
    }
    field.values.emplace(z, e);
  }
  return field;
}

std::pair<Region, Region> defect_region(const Configuration& cfg, const SftSpec& spec,
                                        std::int64_t r) {
  const DefectField field = defect_field(cfg, spec);
  Region gr, defect;
  gr.label = "unflawed";
  gr.r = r;
  defect.label = "defect";
  defect.r = spec.radius;
  for (const auto& [z, e] : field.values) {
    if (e.value >= r) gr.sites.insert(z);
    if (e.exact && e.value == spec.radius) defect.sites.insert(z);
  }
  return {gr, defect};
}

DefectClassification classify_defect(const Configuration& cfg, const SftSpec& spec,
                                     std::int64_t r) {
  const DefectField field = defect_field(cfg, spec);
  DefectClassification out;
  out.r = r;

  SiteSet domain, gr, defect;
  for (const auto& [z, e] : field.values) {
    domain.insert(z);
    if (e.value >= r) gr.insert(z);
    if (e.exact && e.value == spec.radius) defect.insert(z);
  }
  std::int64_t rmax = 0;
  for (const auto& [z, e] : field.values) rmax = std::max(rmax, e.value);
  out.r_max = rmax;

  out.unflawed_components = connected_components(gr);
  out.defect_components = connected_components(defect);

  SiteSet deepest;
  for (const auto& [z, e] : field.values)
    if (e.value >= rmax) deepest.insert(z);
  for (const auto& comp : out.unflawed_components) {
    bool meets = false;
    for (const auto& s : comp)
      if (deepest.count(s)) {
        meets = true;
        break;
      }
    out.component_projective.push_back(meets);
  }

  // Holes: complement components (inside the verified domain) that do not
  // touch the domain border.
  if (cfg.D == 2) {
    SiteSet complement;
    for (const auto& z : domain)
      if (!gr.count(z)) complement.insert(z);
    Site dlo = domain.begin()->dim() == 2 ? *domain.begin() : Site{};
    std::int64_t xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    bool first = true;
    for (const auto& z : domain) {
      if (first) {
        xlo = xhi = z.c[0];
        ylo = yhi = z.c[1];
        first = false;
      }
      xlo = std::min(xlo, z.c[0]);
      xhi = std::max(xhi, z.c[0]);
      ylo = std::min(ylo, z.c[1]);
      yhi = std::max(yhi, z.c[1]);
    }
    (void)dlo;
    for (auto& comp : connected_components(complement)) {
      bool touches = false;
      for (const auto& z : comp)
        if (z.c[0] == xlo || z.c[0] == xhi || z.c[1] == ylo || z.c[1] == yhi) {
          touches = true;
          break;
        }
      if (!touches) out.hole_components.push_back(std::move(comp));
    }
  }

  const bool split = out.unflawed_components.size() >= 2;
  const bool holes = !out.hole_components.empty();
  const bool any_defect = gr.size() != domain.size();
  if (cfg.D == 2) {
    if (split && holes)
      out.kind = DefectKind::Mixed;
    else if (split)
      out.kind = DefectKind::DomainBoundary;
    else if (holes)
      out.kind = DefectKind::CodimensionTwo;
    else
      out.kind = DefectKind::None;
  } else {
    if (split)
      out.kind = DefectKind::DomainBoundary;
    else
      out.kind = any_defect ? DefectKind::Mixed : DefectKind::None;
  }
  return out;
}

std::string render_defect_field(const Configuration& cfg, const DefectField& field) {
  require(cfg.D == 2, "rendering supports D = 2 only");
  std::ostringstream os;
  for (std::int64_t y = cfg.hi.c[1]; y >= cfg.lo.c[1]; --y) {
    for (std::int64_t x = cfg.lo.c[0]; x <= cfg.hi.c[0]; ++x) {
      auto it = field.values.find(Site{{x, y}});
      if (it == field.values.end()) {
        os << ' ';
      } else if (!it->second.exact) {
        os << "\u00b7";  // window-bound: the value is only a lower bound
      } else if (it->second.value == field.R) {
        os << '#';
      } else {
        os << static_cast<char>('0' + std::min<std::int64_t>(9, it->second.value));
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace defectlab
