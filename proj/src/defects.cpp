#include "defectlab/defects.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <random>
#include <stdexcept>

namespace defectlab {

namespace {

SiteSet union_of(const std::vector<SiteSet>& parts) {
  SiteSet all;
  for (const auto& p : parts) all.insert(p.begin(), p.end());
  return all;
}

// All sites at l-infinity distance <= 1 from the set (box dilation).
SiteSet dilate(const SiteSet& sites) {
  SiteSet out;
  for (const Site& z : sites)
    for (const Site& n : Box{z, 1}.sites()) out.insert(n);
  return out;
}

// Shortest trail between two sites staying inside `allowed`.
Trail trail_within(const SiteSet& allowed, const Site& from, const Site& to) {
  if (allowed.count(from) == 0 || allowed.count(to) == 0)
    throw std::invalid_argument("trail_within: endpoint outside the region");
  std::map<Site, Site> parent;
  std::deque<Site> queue{from};
  parent.emplace(from, from);
  const int D = from.dim();
  while (!queue.empty()) {
    const Site z = queue.front();
    queue.pop_front();
    if (z == to) break;
    for (int d = 0; d < D; ++d) {
      for (int sgn : {+1, -1}) {
        Site n = z;
        n.c[static_cast<std::size_t>(d)] += sgn;
        if (allowed.count(n) == 0 || parent.count(n) > 0) continue;
        parent.emplace(n, z);
        queue.push_back(n);
      }
    }
  }
  if (parent.count(to) == 0)
    throw std::invalid_argument("trail_within: endpoints not connected in the region");
  std::vector<Site> path{to};
  while (path.back() != from) path.push_back(parent.at(path.back()));
  std::reverse(path.begin(), path.end());
  return Trail(std::move(path));
}

}  // namespace

DefectReport residue_report(const Configuration& cfg, const SftSpec& spec,
                            const DynamicalCocycleRule& rule, std::int64_t r) {
  DefectReport report;
  report.r = r;
  report.classification = classify_defect(cfg, spec, r);
  report.r_max = report.classification.r_max;
  const SiteSet region = union_of(report.classification.unflawed_components);
  for (std::size_t h = 0; h < report.classification.hole_components.size(); ++h) {
    const SiteSet& hole = report.classification.hole_components[h];
    HoleResidue res;
    res.component = static_cast<int>(h);
    res.loop = loop_around(hole, region);
    const TrailValue v = evaluate_trail(rule, cfg, res.loop, &spec);
    res.value = v.value;
    // Independent homotopic loop: ring around the dilated hole.
    try {
      const Trail bigger = loop_around(dilate(hole), region);
      const TrailValue v2 = evaluate_trail(rule, cfg, bigger, &spec);
      res.homotopy_checked = v2.value == res.value;
      if (!res.homotopy_checked)
        throw std::runtime_error("residue_report: residue differs between homotopic loops");
    } catch (const NoEnclosingRing&) {
      res.homotopy_checked = false;
    }
    res.flag = is_identity(res.value) ? ResidueFlag::Inconclusive : ResidueFlag::Essential;
    report.residues.push_back(std::move(res));
  }
  return report;
}

std::vector<DPoleValue> d_pole_search(const Configuration& cfg, const SftSpec& spec,
                                      const EquivariantCochainRule& eqrule,
                                      std::int64_t r) {
  if (eqrule.degree != eqrule.D - 1)
    throw std::invalid_argument("d_pole_search: rule degree must be D-1");
  const int D = eqrule.D;
  const auto [g, defect] = defect_region(cfg, spec, r);
  std::vector<DPoleValue> out;
  for (const SiteSet& component : connected_components(defect.sites)) {
    // Center of the bounding box.
    Site lo = *component.begin(), hi = *component.begin();
    for (const Site& z : component) {
      for (int d = 0; d < D; ++d) {
        lo.c[static_cast<std::size_t>(d)] = std::min(lo.c[static_cast<std::size_t>(d)], z.c[static_cast<std::size_t>(d)]);
        hi.c[static_cast<std::size_t>(d)] = std::max(hi.c[static_cast<std::size_t>(d)], z.c[static_cast<std::size_t>(d)]);
      }
    }
    Site center = lo;
    for (int d = 0; d < D; ++d)
      center.c[static_cast<std::size_t>(d)] = (lo.c[static_cast<std::size_t>(d)] + hi.c[static_cast<std::size_t>(d)]) / 2;
    std::int64_t rho_min = 0;
    for (const Site& z : component) rho_min = std::max(rho_min, linf_dist(center, z));
    for (std::int64_t rho = rho_min + 1;; ++rho) {
      // The boundary faces have bases within B(center, rho + 1).
      bool fits = true;
      Site face_lo = center, face_hi = center;
      for (int d = 0; d < D; ++d) {
        face_lo.c[static_cast<std::size_t>(d)] -= rho + eqrule.radius;
        face_hi.c[static_cast<std::size_t>(d)] += rho + 1 + eqrule.radius;
      }
      if (!cfg.periodic && (!cfg.in_window(face_lo) || !cfg.in_window(face_hi))) fits = false;
      if (!fits) break;
      Chain cubes;
      cubes.dimension = D;
      std::vector<int> all_axes(static_cast<std::size_t>(D));
      for (int d = 0; d < D; ++d) all_axes[static_cast<std::size_t>(d)] = d;
      for (const Site& z : Box{center, rho}.sites()) cubes.add(CubicCell{z, all_axes}, 1);
      const GroupElement value = eval_equivariant(eqrule, cfg, boundary(cubes));
      out.push_back(DPoleValue{center, rho, value});
    }
  }
  return out;
}

GroupElement cgap(const Configuration& cfg, const DynamicalCocycleRule& rule,
                  const Site& y, const Site& z, const std::vector<Region>& components,
                  const std::vector<Site>& refs) {
  if (components.size() != refs.size())
    throw std::invalid_argument("cgap: one reference site per component required");
  auto component_of = [&](const Site& s) {
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i].sites.count(s) > 0) return i;
    throw std::invalid_argument("cgap: site outside every component");
  };
  const std::size_t cy = component_of(y), cz = component_of(z);
  auto value = [&](const Site& from, const Site& to, std::size_t comp) {
    return evaluate_trail(rule, cfg, trail_within(components[comp].sites, from, to)).value;
  };
  if (cy == cz) return value(z, y, cy);
  // gap(y, ref_y) * gap(ref_z, z), each within its own component.
  return mul(value(refs[cy], y, cy), value(z, refs[cz], cz));
}

GapAnalysis tilt_estimate(const Configuration& cfg, const SftSpec& spec,
                          const DynamicalCocycleRule& rule, std::int64_t r,
                          const TiltOptions& options) {
  GapAnalysis gap;
  const DefectClassification cls = classify_defect(cfg, spec, r);
  if (cls.unflawed_components.empty())
    throw std::invalid_argument("tilt_estimate: no unflawed component");
  for (const SiteSet& comp : cls.unflawed_components) {
    Region region;
    region.sites = comp;
    region.r = r;
    region.label = "component";
    gap.components.push_back(std::move(region));
    gap.refs.push_back(*comp.begin());
  }
  // Pseudonorm with a fallback for the free product of two order-two groups,
  // whose only conjugation-invariant length lives on the cyclic subgroup
  // generated by the composite step.
  auto norm = [](const GroupElement& g) -> std::int64_t {
    try {
      return pseudonorm(g);
    } catch (const NoNontrivialPseudonorm&) {
      if (const auto m = z2z2_power_of_vh(g)) return 2 * std::abs(*m);
      return static_cast<std::int64_t>(g.word.size());
    }
  };
  // Window center and maximal usable radius.
  const int D = cfg.D;
  Site center = cfg.lo;
  std::int64_t max_l = 0;
  for (int d = 0; d < D; ++d) {
    center.c[static_cast<std::size_t>(d)] =
        (cfg.lo.c[static_cast<std::size_t>(d)] + cfg.hi.c[static_cast<std::size_t>(d)]) / 2;
    max_l = std::max(max_l, cfg.extent(d) / 2);
  }
  std::vector<std::int64_t> schedule = options.schedule;
  if (schedule.empty())
    for (std::int64_t l = 4; l <= max_l; l += 4) schedule.push_back(l);
  std::sort(schedule.begin(), schedule.end());
  std::mt19937_64 rng(options.seed);
  if (gap.components.size() < 2) {
    // Two-point values inside one component are path values, not boundary
    // gaps; they can grow near a codimension-two defect without any tilt.
    gap.verdict = TiltVerdict::Inconclusive;
    gap.detail = "single unflawed component: no cross-boundary pairs";
    return gap;
  }
  // Nearby pairs (separation below a fixed cap) bucketed by their distance
  // from the window center: a diverging tilt means the gap between nearby
  // sites on opposite sides keeps growing as the pair moves outward.
  const std::int64_t sep_cap = 2 * r + 1;
  std::vector<std::vector<std::pair<Site, Site>>> buckets(schedule.size());
  auto bucket_of = [&](std::int64_t l) -> std::optional<std::size_t> {
    for (std::size_t b = 0; b < schedule.size(); ++b)
      if (l <= schedule[b]) return b;
    return std::nullopt;
  };
  for (std::size_t ci = 0; ci < gap.components.size(); ++ci)
    for (std::size_t cj = ci + 1; cj < gap.components.size(); ++cj) {
      for (const Site& y : gap.components[ci].sites)
        for (const Site& z : gap.components[cj].sites) {
          if (y == z || linf_dist(y, z) > sep_cap) continue;
          const std::int64_t l = std::max(linf_dist(y, center), linf_dist(z, center));
          if (const auto b = bucket_of(l)) buckets[*b].push_back({y, z});
        }
    }
  for (std::size_t b = 0; b < schedule.size(); ++b) {
    const std::int64_t L = schedule[b];
    auto& bucket = buckets[b];
    double best = -1.0;
    for (std::size_t trial = 0; trial < options.pairs_per_level && !bucket.empty(); ++trial) {
      const auto& [y, z] = bucket[rng() % bucket.size()];
      try {
        const GroupElement g = cgap(cfg, rule, y, z, gap.components, gap.refs);
        best = std::max(best, static_cast<double>(norm(g)));
      } catch (const WindowTooSmall&) {
        continue;
      }
    }
    if (best < 0) continue;  // empty level
    gap.slope_samples.push_back({L, best});
    gap.max_sample = std::max(gap.max_sample, best);
  }
  // Least-squares growth rate of the maximal gap against the distance L.
  if (gap.slope_samples.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(gap.slope_samples.size());
    for (const auto& [L, s] : gap.slope_samples) {
      sx += static_cast<double>(L);
      sy += s;
      sxx += static_cast<double>(L) * static_cast<double>(L);
      sxy += static_cast<double>(L) * s;
    }
    const double denom = n * sxx - sx * sx;
    gap.fit_slope = denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
  }
  if (gap.fit_slope > options.slope_threshold && gap.max_sample > options.max_threshold) {
    gap.verdict = TiltVerdict::DivergingWindowLimited;
    gap.detail = "nearby cross-boundary gaps grow with distance from the center";
  } else if (gap.max_sample <= options.max_threshold) {
    gap.verdict = TiltVerdict::Bounded;
    gap.detail = "all sampled gaps within the bounded regime";
  } else {
    gap.verdict = TiltVerdict::Inconclusive;
    gap.detail = "large gaps without clear growth";
  }
  return gap;
}

PersistenceReport persistence_experiment(const Configuration& cfg, const SftSpec& spec,
                                         const DynamicalCocycleRule& rule, const CaRule& ca,
                                         int steps, std::int64_t r) {
  PersistenceReport report;
  const DynamicalCocycleRule pulled = pullback(rule, ca);
  Configuration current = cfg;
  for (int t = 0; t <= steps; ++t) {
    PersistenceStep entry;
    entry.t = t;
    entry.report = residue_report(current, spec, rule, r);
    report.steps.push_back(std::move(entry));
    if (t == steps) break;
    Configuration next;
    try {
      next = apply(ca, current);
    } catch (const WindowTooSmall&) {
      break;  // window exhausted; report the completed prefix
    }
    // Residues of the evolved configuration against the pulled-back rule on
    // the current one, evaluated on identical loops.
    try {
      const DefectClassification cls = classify_defect(next, spec, r);
      SiteSet region;
      for (const auto& comp : cls.unflawed_components) region.insert(comp.begin(), comp.end());
      bool ok = true;
      for (const SiteSet& hole : cls.hole_components) {
        const Trail loop = loop_around(hole, region);
        const GroupElement lhs = evaluate_trail(rule, next, loop).value;
        const GroupElement rhs = evaluate_trail(pulled, current, loop).value;
        if (!(lhs == rhs)) ok = false;
      }
      report.steps.back().pullback_identity_ok = ok;
    } catch (const std::exception&) {
      report.steps.back().pullback_identity_ok = false;
    }
    current = std::move(next);
  }
  return report;
}

}  // namespace defectlab
