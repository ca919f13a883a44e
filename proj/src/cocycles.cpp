#include "defectlab/cocycles.hpp"

#include "defectlab/automaton.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace defectlab {

namespace {

// Index of site s inside the canonical ordering of B(center, r).
std::size_t ball_index(const Site& s, const Site& center, std::int64_t r) {
  std::size_t idx = 0;
  const std::size_t stride = static_cast<std::size_t>(2 * r + 1);
  for (int d = 0; d < s.dim(); ++d) {
    const std::int64_t c = s.c[static_cast<std::size_t>(d)] - center.c[static_cast<std::size_t>(d)] + r;
    idx = idx * stride + static_cast<std::size_t>(c);
  }
  return idx;
}

// Sub-block over B(offset, r) of a block over B(0, R); needs |offset| + r <= R.
Block subblock(const Block& big, std::int64_t R, const Site& offset, std::int64_t r) {
  Block out;
  Box inner{offset, r};
  out.reserve(inner.sites().size());
  for (const Site& s : inner.sites())
    out.push_back(big[ball_index(s, Site::zero(offset.dim()), R)]);
  return out;
}

Block block_of_pattern(const std::map<Site, int>& pattern, const Site& center,
                       std::int64_t r) {
  Block out;
  Box ball{center, r};
  for (const Site& s : ball.sites()) out.push_back(pattern.at(s));
  return out;
}

// Budgeted DFS over admissible patterns; throws std::length_error on budget.
bool for_each_admissible_pattern(const SftSpec& spec, const std::vector<Site>& domain,
                                 std::size_t budget,
                                 const std::function<bool(const std::map<Site, int>&)>& visit) {
  std::map<Site, int> pattern;
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == domain.size()) return visit(pattern);
    for (int s = 0; s < spec.nsymbols; ++s) {
      if (++nodes > budget) throw std::length_error("budget");
      pattern[domain[i]] = s;
      if (spec.pattern_admissible(pattern)) {
        if (!rec(i + 1)) return false;
      }
      pattern.erase(domain[i]);
    }
    return true;
  };
  return rec(0);
}

std::vector<Site> union_of_balls(const std::vector<Site>& centers, std::int64_t r) {
  SiteSet sites;
  for (const Site& c : centers)
    for (const Site& s : Box{c, r}.sites()) sites.insert(s);
  return {sites.begin(), sites.end()};
}

}  // namespace

CocycleCheckReport check_cocycle_conditions(const DynamicalCocycleRule& rule,
                                            const SftSpec& spec,
                                            std::size_t budget) {
  CocycleCheckReport report;
  const int D = rule.D;
  const std::int64_t r = rule.radius;
  for (int i = 0; i < D && report.consistent; ++i) {
    for (int j = i + 1; j < D && report.consistent; ++j) {
      const Site ei = Site::unit(D, i), ej = Site::unit(D, j);
      const auto domain = union_of_balls({Site::zero(D), ei, ej, ei + ej}, r);
      try {
        for_each_admissible_pattern(spec, domain, budget,
                                    [&](const std::map<Site, int>& pattern) {
          ++report.patterns_checked;
          const GroupElement via_i =
              mul(rule.step[static_cast<std::size_t>(j)](block_of_pattern(pattern, ei, r)),
                  rule.step[static_cast<std::size_t>(i)](block_of_pattern(pattern, Site::zero(D), r)));
          const GroupElement via_j =
              mul(rule.step[static_cast<std::size_t>(i)](block_of_pattern(pattern, ej, r)),
                  rule.step[static_cast<std::size_t>(j)](block_of_pattern(pattern, Site::zero(D), r)));
          if (!(via_i == via_j)) {
            report.consistent = false;
            report.detail = "commuting-square identity fails for axes " +
                            std::to_string(i) + "," + std::to_string(j);
            return false;
          }
          return true;
        });
      } catch (const std::length_error&) {
        report.consistent = false;
        report.detail = "enumeration budget exhausted";
      }
    }
  }
  return report;
}

TrailValue evaluate_trail(const DynamicalCocycleRule& rule, const Configuration& cfg,
                          const Trail& trail, const SftSpec* spec) {
  TrailValue out{identity(rule.group), false};
  const std::int64_t r = rule.radius;
  for (std::size_t k = 0; k + 1 < trail.sites.size(); ++k) {
    const Site& a = trail.sites[k];
    const Site& b = trail.sites[k + 1];
    const Site d = b - a;
    int axis = -1;
    std::int64_t sign = 0;
    for (int i = 0; i < rule.D; ++i) {
      if (d.c[static_cast<std::size_t>(i)] != 0) {
        axis = i;
        sign = d.c[static_cast<std::size_t>(i)];
      }
    }
    const Site base = sign > 0 ? a : b;  // the +e_axis step being (un)done
    if (!cfg.ball_accessible(base, r))
      throw WindowTooSmall("evaluate_trail: step ball leaves the window");
    const Block block = cfg.read_block(base, r);
    if (spec != nullptr) {
      const std::int64_t rc = std::max(r, spec->radius);
      if (!cfg.ball_accessible(base, rc) ||
          !spec->block_admissible(cfg.read_block(base, rc), rc))
        out.touches_defect = true;
    }
    GroupElement v = rule.step[static_cast<std::size_t>(axis)](block);
    if (sign < 0) v = inv(v);
    out.value = mul(v, out.value);
  }
  return out;
}

DynamicalCocycleRule coboundary_rule(const TransferFunction& b) {
  DynamicalCocycleRule rule;
  rule.D = b.D;
  rule.radius = b.radius + 1;
  rule.group = b.group;
  rule.name = "coboundary(" + b.name + ")";
  for (int d = 0; d < b.D; ++d) {
    const Site ed = Site::unit(b.D, d);
    rule.step.push_back([b, ed, rb = b.radius, R = rule.radius](const Block& block) {
      const GroupElement at_end = b.value(subblock(block, R, ed, rb));
      const GroupElement at_start = b.value(subblock(block, R, Site::zero(ed.dim()), rb));
      return mul(at_end, inv(at_start));
    });
  }
  return rule;
}

DynamicalCocycleRule homomorphism_rule(int D, GroupSpecPtr group,
                                       std::vector<GroupElement> images) {
  if (static_cast<int>(images.size()) != D)
    throw std::invalid_argument("homomorphism_rule: one image per axis required");
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      if (!(mul(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]) ==
            mul(images[static_cast<std::size_t>(j)], images[static_cast<std::size_t>(i)])))
        throw std::invalid_argument("homomorphism_rule: images must commute");
  DynamicalCocycleRule rule;
  rule.D = D;
  rule.radius = 0;
  rule.group = std::move(group);
  rule.name = "homomorphism";
  for (int d = 0; d < D; ++d)
    rule.step.push_back([g = images[static_cast<std::size_t>(d)]](const Block&) { return g; });
  return rule;
}

bool is_homomorphism_rule(const DynamicalCocycleRule& rule, const SftSpec& spec) {
  const auto blocks = spec.admissible_blocks(std::max(rule.radius, spec.radius));
  std::vector<GroupElement> constants;
  for (int d = 0; d < rule.D; ++d) {
    std::optional<GroupElement> value;
    for (const Block& big : blocks) {
      const Block block = rule.radius < spec.radius
                              ? subblock(big, spec.radius, Site::zero(rule.D), rule.radius)
                              : big;
      const GroupElement v = rule.step[static_cast<std::size_t>(d)](block);
      if (!value) {
        value = v;
      } else if (!(*value == v)) {
        return false;
      }
    }
    if (!value) return false;
    constants.push_back(*value);
  }
  for (std::size_t i = 0; i < constants.size(); ++i)
    for (std::size_t j = i + 1; j < constants.size(); ++j)
      if (!(mul(constants[i], constants[j]) == mul(constants[j], constants[i]))) return false;
  return true;
}

GroupElement to_two_point(const DynamicalCocycleRule& rule, const Configuration& cfg,
                          const Site& from, const Site& to) {
  std::vector<Site> sites{from};
  Site cur = from;
  for (int d = 0; d < rule.D; ++d) {
    while (cur.c[static_cast<std::size_t>(d)] != to.c[static_cast<std::size_t>(d)]) {
      cur.c[static_cast<std::size_t>(d)] +=
          cur.c[static_cast<std::size_t>(d)] < to.c[static_cast<std::size_t>(d)] ? 1 : -1;
      sites.push_back(cur);
    }
  }
  return evaluate_trail(rule, cfg, Trail(std::move(sites))).value;
}

DynamicalCocycleRule twist_by_transfer(const DynamicalCocycleRule& rule,
                                       const TransferFunction& b) {
  if (!(rule.group == nullptr) && !(b.group == nullptr) && !(*rule.group == *b.group))
    throw std::invalid_argument("twist_by_transfer: group mismatch");
  DynamicalCocycleRule out;
  out.D = rule.D;
  out.radius = std::max(rule.radius, b.radius + 1);
  out.group = rule.group;
  out.name = rule.name + "+coboundary(" + b.name + ")";
  for (int d = 0; d < rule.D; ++d) {
    const Site ed = Site::unit(rule.D, d);
    out.step.push_back([rule, b, ed, d, R = out.radius](const Block& block) {
      const GroupElement at_end = b.value(subblock(block, R, ed, b.radius));
      const GroupElement at_start = b.value(subblock(block, R, Site::zero(ed.dim()), b.radius));
      const GroupElement core =
          rule.step[static_cast<std::size_t>(d)](subblock(block, R, Site::zero(ed.dim()), rule.radius));
      return mul(at_end, mul(core, inv(at_start)));
    });
  }
  return out;
}

CohomologySearchResult cohomologous_search(const DynamicalCocycleRule& rule1,
                                           const DynamicalCocycleRule& rule2,
                                           const SftSpec& spec, std::int64_t max_radius,
                                           const std::vector<GroupElement>& candidates,
                                           std::size_t budget) {
  CohomologySearchResult result;
  std::vector<GroupElement> values = candidates;
  if (values.empty()) {
    try {
      values = all_elements(rule1.group);
    } catch (const std::exception&) {
      result.outcome = SearchOutcome::BudgetExceeded;
      result.detail = "infinite group: supply a candidate value set";
      return result;
    }
  }
  std::size_t work = 0;
  for (std::int64_t rb = 0; rb <= max_radius; ++rb) {
    const std::int64_t rmax = std::max({rule1.radius, rule2.radius, rb + 1, spec.radius});
    std::vector<Block> rb_blocks;
    std::map<Block, std::size_t> rb_index;
    struct Edge {
      std::size_t a, b;          // b(block a) = left * b(block b) * right^{-1}
      GroupElement left, right;
    };
    std::vector<Edge> edges;
    bool overflow = false;
    try {
      const auto big_blocks = spec.admissible_blocks(rmax);
      auto intern = [&](const Block& blk) {
        auto it = rb_index.find(blk);
        if (it != rb_index.end()) return it->second;
        const std::size_t id = rb_blocks.size();
        rb_index.emplace(blk, id);
        rb_blocks.push_back(blk);
        return id;
      };
      for (const Block& big : big_blocks) {
        for (int d = 0; d < rule1.D; ++d) {
          const Site ed = Site::unit(rule1.D, d);
          if ((work += 4) > budget) throw std::length_error("budget");
          const std::size_t a = intern(subblock(big, rmax, ed, rb));
          const std::size_t bidx = intern(subblock(big, rmax, Site::zero(rule1.D), rb));
          const GroupElement c1 =
              rule1.step[static_cast<std::size_t>(d)](subblock(big, rmax, Site::zero(rule1.D), rule1.radius));
          const GroupElement c2 =
              rule2.step[static_cast<std::size_t>(d)](subblock(big, rmax, Site::zero(rule1.D), rule2.radius));
          edges.push_back(Edge{a, bidx, c2, c1});
        }
      }
    } catch (const std::length_error&) {
      overflow = true;
    }
    if (overflow) {
      result.outcome = SearchOutcome::BudgetExceeded;
      result.detail = "enumeration budget exhausted at transfer radius " + std::to_string(rb);
      return result;
    }

    // Adjacency for connected-component propagation.
    std::vector<std::vector<std::size_t>> adj(rb_blocks.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].a].push_back(e);
      adj[edges[e].b].push_back(e);
    }
    std::vector<int> assigned(rb_blocks.size(), -1);
    std::vector<GroupElement> assignment(rb_blocks.size(), identity(rule1.group));
    bool feasible = true;
    for (std::size_t root = 0; root < rb_blocks.size() && feasible; ++root) {
      if (assigned[root] != -1) continue;
      bool component_ok = false;
      for (const GroupElement& seed : values) {
        if ((work += rb_blocks.size()) > budget) {
          result.outcome = SearchOutcome::BudgetExceeded;
          result.detail = "propagation budget exhausted";
          return result;
        }
        // BFS-propagate from the root; mark the visited set for rollback.
        std::vector<std::size_t> visited;
        bool ok = true;
        assignment[root] = seed;
        assigned[root] = 1;
        visited.push_back(root);
        std::vector<std::size_t> queue{root};
        while (!queue.empty() && ok) {
          const std::size_t u = queue.back();
          queue.pop_back();
          for (std::size_t e : adj[u]) {
            const Edge& ed = edges[e];
            const GroupElement want_a = mul(ed.left, mul(assignment[ed.b], inv(ed.right)));
            if (assigned[ed.a] == 1 && assigned[ed.b] == 1) {
              if (!(assignment[ed.a] == want_a)) { ok = false; break; }
            } else if (u == ed.b && assigned[ed.a] == -1) {
              assignment[ed.a] = want_a;
              assigned[ed.a] = 1;
              visited.push_back(ed.a);
              queue.push_back(ed.a);
            } else if (u == ed.a && assigned[ed.b] == -1) {
              assignment[ed.b] = mul(inv(ed.left), mul(assignment[ed.a], ed.right));
              assigned[ed.b] = 1;
              visited.push_back(ed.b);
              queue.push_back(ed.b);
            }
          }
        }
        // Final verification of every edge inside the visited set.
        if (ok) {
          for (const Edge& ed : edges) {
            if (assigned[ed.a] == 1 && assigned[ed.b] == 1 &&
                !(assignment[ed.a] == mul(ed.left, mul(assignment[ed.b], inv(ed.right))))) {
              const bool touches = std::find(visited.begin(), visited.end(), ed.a) != visited.end() ||
                                   std::find(visited.begin(), visited.end(), ed.b) != visited.end();
              if (touches) { ok = false; break; }
            }
          }
        }
        if (ok) {
          component_ok = true;
          break;
        }
        for (std::size_t v : visited) assigned[v] = -1;
      }
      if (!component_ok) feasible = false;
    }
    if (feasible) {
      result.outcome = SearchOutcome::Found;
      result.transfer_radius = rb;
      for (std::size_t i = 0; i < rb_blocks.size(); ++i)
        result.transfer_table.emplace(rb_blocks[i], assignment[i]);
      result.detail = "transfer found at radius " + std::to_string(rb);
      return result;
    }
  }
  result.outcome = SearchOutcome::NotFound;
  result.detail = "exhausted all transfers up to radius " + std::to_string(max_radius);
  return result;
}

DynamicalCocycleRule pullback(const DynamicalCocycleRule& rule, const CaRule& ca) {
  DynamicalCocycleRule out;
  out.D = rule.D;
  out.radius = rule.radius + ca.radius;
  out.group = rule.group;
  out.name = rule.name + "*pullback";
  for (int d = 0; d < rule.D; ++d) {
    out.step.push_back([rule, ca, d, R = out.radius](const Block& block) {
      Box inner{Site::zero(rule.D), rule.radius};
      Block image;
      std::vector<int> local(ca.neighbourhood.size());
      for (const Site& y : inner.sites()) {
        for (std::size_t k = 0; k < ca.neighbourhood.size(); ++k)
          local[k] = block[ball_index(y + ca.neighbourhood[k], Site::zero(rule.D), R)];
        image.push_back(ca.phi(local));
      }
      return rule.step[static_cast<std::size_t>(d)](image);
    });
  }
  return out;
}

GroupElement eval_equivariant(const EquivariantCochainRule& rule, const Configuration& cfg,
                              const Chain& chain) {
  if (chain.dimension != rule.degree)
    throw std::invalid_argument("eval_equivariant: chain dimension mismatch");
  GroupElement acc = identity(rule.group);
  for (const auto& [cell, coeff] : chain.terms) {
    auto it = rule.component.find(cell.axes);
    if (it == rule.component.end())
      throw std::invalid_argument("eval_equivariant: no component for this cell type");
    if (!cfg.ball_accessible(cell.base, rule.radius))
      throw WindowTooSmall("eval_equivariant: cell ball leaves the window");
    const GroupElement v = it->second(cfg.read_block(cell.base, rule.radius));
    acc = mul(acc, power(v, coeff));
  }
  return acc;
}

CocycleCheckReport check_equivariant_cocycle(const EquivariantCochainRule& rule,
                                             const SftSpec& spec, std::size_t budget) {
  CocycleCheckReport report;
  const int D = rule.D;
  const std::int64_t r = rule.radius;
  // Ascending (degree+1)-subsets of axes.
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int start) {
    if (static_cast<int>(cur.size()) == rule.degree + 1) {
      shapes.push_back(cur);
      return;
    }
    for (int a = start; a < D; ++a) {
      cur.push_back(a);
      gen(a + 1);
      cur.pop_back();
    }
  };
  gen(0);
  for (const auto& axes : shapes) {
    if (!report.consistent) break;
    const Chain faces = boundary_of_cell(CubicCell{Site::zero(D), axes});
    std::vector<Site> centers;
    for (const auto& [cell, coeff] : faces.terms) centers.push_back(cell.base);
    const auto domain = union_of_balls(centers, r);
    try {
      for_each_admissible_pattern(spec, domain, budget,
                                  [&](const std::map<Site, int>& pattern) {
        ++report.patterns_checked;
        GroupElement acc = identity(rule.group);
        for (const auto& [cell, coeff] : faces.terms) {
          const GroupElement v =
              rule.component.at(cell.axes)(block_of_pattern(pattern, cell.base, r));
          acc = mul(acc, power(v, coeff));
        }
        if (!is_identity(acc)) {
          report.consistent = false;
          report.detail = "coboundary does not vanish on an admissible patch";
          return false;
        }
        return true;
      });
    } catch (const std::length_error&) {
      report.consistent = false;
      report.detail = "enumeration budget exhausted";
    }
  }
  return report;
}

DynamicalCocycleRule from_equivariant(const EquivariantCochainRule& rule) {
  if (rule.degree != 1)
    throw std::invalid_argument("from_equivariant: degree-1 rules only");
  DynamicalCocycleRule out;
  out.D = rule.D;
  out.radius = rule.radius;
  out.group = rule.group;
  out.name = rule.name;
  for (int d = 0; d < rule.D; ++d) out.step.push_back(rule.component.at({d}));
  return out;
}

EquivariantCochainRule to_equivariant(const DynamicalCocycleRule& rule) {
  if (rule.group->kind != GroupKind::FgAbelian)
    throw std::invalid_argument("to_equivariant: abelian groups only");
  EquivariantCochainRule out;
  out.D = rule.D;
  out.degree = 1;
  out.radius = rule.radius;
  out.group = rule.group;
  out.name = rule.name;
  for (int d = 0; d < rule.D; ++d) out.component[{d}] = rule.step[static_cast<std::size_t>(d)];
  return out;
}

BlockRecoding recode_block(const SftSpec& spec, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("recode_block: k >= 1 required");
  BlockRecoding rec;
  rec.k = k;
  const int D = spec.D;
  Site hi = Site::zero(D);
  for (auto& c : hi.c) c = k - 1;
  const auto cube = box_sites(Site::zero(D), hi);
  // All k-cube patterns, lexicographic; defective windows must stay
  // representable, so internally inadmissible patterns are symbols with an
  // empty match row.
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (std::size_t i = 0; i < cube.size(); ++i) t *= static_cast<std::size_t>(spec.nsymbols);
    return t;
  }();
  rec.symbols.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    Block pattern(cube.size());
    std::size_t rest = code;
    for (std::size_t i = cube.size(); i-- > 0;) {
      pattern[i] = static_cast<int>(rest % static_cast<std::size_t>(spec.nsymbols));
      rest /= static_cast<std::size_t>(spec.nsymbols);
    }
    rec.symbols.push_back(std::move(pattern));
  }
  auto internally_ok = [&](const Block& pattern) {
    std::map<Site, int> p;
    for (std::size_t i = 0; i < cube.size(); ++i) p[cube[i]] = pattern[i];
    return spec.pattern_admissible(p);
  };
  std::vector<char> ok(total);
  for (std::size_t i = 0; i < total; ++i) ok[i] = internally_ok(rec.symbols[i]) ? 1 : 0;

  rec.spec.D = D;
  rec.spec.nsymbols = static_cast<int>(total);
  rec.spec.radius = 1;
  rec.spec.wang_mode = true;
  rec.spec.match.resize(static_cast<std::size_t>(D));
  for (std::size_t i = 0; i < total; ++i) rec.spec.symbol_names.push_back("p" + std::to_string(i));
  for (int d = 0; d < D; ++d) {
    Site shift = Site::zero(D);
    shift.c[static_cast<std::size_t>(d)] = k;
    for (std::size_t a = 0; a < total; ++a) {
      if (!ok[a]) continue;
      for (std::size_t b = 0; b < total; ++b) {
        if (!ok[b]) continue;
        std::map<Site, int> joint;
        for (std::size_t i = 0; i < cube.size(); ++i) {
          joint[cube[i]] = rec.symbols[a][i];
          joint[cube[i] + shift] = rec.symbols[b][i];
        }
        if (spec.pattern_admissible(joint))
          rec.spec.match[static_cast<std::size_t>(d)].insert({static_cast<int>(a), static_cast<int>(b)});
      }
    }
  }
  return rec;
}

DynamicalCocycleRule recode_rule(const DynamicalCocycleRule& rule, const SftSpec& spec,
                                 const BlockRecoding& rec) {
  DynamicalCocycleRule out;
  out.D = rule.D;
  out.radius = (rule.radius + rec.k - 1) / rec.k;
  out.group = rule.group;
  out.name = rule.name + "*recoded";
  const int D = rule.D;
  const std::int64_t k = rec.k;
  const std::int64_t rr = out.radius;
  for (int d = 0; d < D; ++d) {
    out.step.push_back([rule, rec, d, D, k, rr](const Block& coded) {
      // Assemble the original pattern covered by the coded block.
      std::map<Site, int> pattern;
      Box ball{Site::zero(D), rr};
      const auto coded_sites = ball.sites();
      Site khi = Site::zero(D);
      for (auto& c : khi.c) c = k - 1;
      const auto cube = box_sites(Site::zero(D), khi);
      for (std::size_t i = 0; i < coded_sites.size(); ++i) {
        const Block& pat = rec.symbols[static_cast<std::size_t>(coded[i])];
        for (std::size_t j = 0; j < cube.size(); ++j) {
          Site s = cube[j];
          for (int a = 0; a < D; ++a)
            s.c[static_cast<std::size_t>(a)] += k * coded_sites[i].c[static_cast<std::size_t>(a)];
          pattern[s] = pat[j];
        }
      }
      GroupElement acc = identity(rule.group);
      Site base = Site::zero(D);
      for (std::int64_t step = 0; step < k; ++step) {
        acc = mul(rule.step[static_cast<std::size_t>(d)](block_of_pattern(pattern, base, rule.radius)), acc);
        base.c[static_cast<std::size_t>(d)] += 1;
      }
      return acc;
    });
  }
  return out;
}

Configuration recode_configuration(const Configuration& cfg, const BlockRecoding& rec) {
  const int D = cfg.D;
  const std::int64_t k = rec.k;
  for (int d = 0; d < D; ++d) {
    const std::int64_t lo = cfg.lo.c[static_cast<std::size_t>(d)];
    if (((lo % k) + k) % k != 0 || cfg.extent(d) % k != 0)
      throw std::invalid_argument("recode_configuration: window not aligned to k");
  }
  std::map<Block, int> symbol_of;
  for (std::size_t i = 0; i < rec.symbols.size(); ++i)
    symbol_of.emplace(rec.symbols[i], static_cast<int>(i));
  Configuration out;
  out.D = D;
  out.periodic = cfg.periodic;
  out.lo = cfg.lo;
  out.hi = cfg.hi;
  for (int d = 0; d < D; ++d) {
    out.lo.c[static_cast<std::size_t>(d)] = cfg.lo.c[static_cast<std::size_t>(d)] / k;
    out.hi.c[static_cast<std::size_t>(d)] =
        (cfg.hi.c[static_cast<std::size_t>(d)] + 1) / k - 1;
  }
  Site khi = Site::zero(D);
  for (auto& c : khi.c) c = k - 1;
  const auto cube = box_sites(Site::zero(D), khi);
  for (const Site& u : box_sites(out.lo, out.hi)) {
    Block pattern;
    pattern.reserve(cube.size());
    for (const Site& o : cube) {
      Site s = o;
      for (int d = 0; d < D; ++d)
        s.c[static_cast<std::size_t>(d)] += k * u.c[static_cast<std::size_t>(d)];
      pattern.push_back(cfg.get(s));
    }
    out.cells.push_back(symbol_of.at(pattern));
  }
  return out;
}

}  // namespace defectlab
