#include "defectlab/json_io.hpp"

#include <map>
#include <stdexcept>

namespace defectlab {

namespace {

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::FgAbelian: return "fg-abelian";
    case GroupKind::FreeProductZ2Z2: return "z2*z2";
    case GroupKind::FreeGroup: return "free";
    case GroupKind::FiniteTable: return "table";
  }
  throw std::logic_error("unknown group kind");
}

}  // namespace

Json to_json(const GroupSpec& g) {
  Json j;
  j["kind"] = kind_name(g.kind);
  switch (g.kind) {
    case GroupKind::FgAbelian:
      j["rank"] = g.rank;
      j["torsion"] = g.torsion;
      break;
    case GroupKind::FreeProductZ2Z2:
      break;
    case GroupKind::FreeGroup:
      j["generators"] = g.free_generators;
      break;
    case GroupKind::FiniteTable:
      j["table"] = g.table;
      break;
  }
  return j;
}

GroupSpecPtr group_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "fg-abelian")
    return make_fg_abelian(j.value("rank", std::int64_t{0}),
                           j.value("torsion", std::vector<std::int64_t>{}));
  if (kind == "z2*z2") return make_z2z2();
  if (kind == "free") return make_free_group(j.at("generators").get<int>());
  if (kind == "table") return make_finite_table(j.at("table").get<std::vector<std::vector<int>>>());
  throw std::invalid_argument("unknown group kind: " + kind);
}

Json to_json(const GroupElement& e) {
  Json j;
  switch (e.spec->kind) {
    case GroupKind::FgAbelian: {
      std::vector<std::int64_t> z(e.vec.begin(), e.vec.begin() + e.spec->rank);
      std::vector<std::int64_t> t(e.vec.begin() + e.spec->rank, e.vec.end());
      j["z"] = z;
      j["t"] = t;
      break;
    }
    case GroupKind::FreeProductZ2Z2:
    case GroupKind::FreeGroup:
      j["word"] = e.word;
      break;
    case GroupKind::FiniteTable:
      j["index"] = e.index;
      break;
  }
  return j;
}

GroupElement element_from_json(GroupSpecPtr g, const Json& j) {
  switch (g->kind) {
    case GroupKind::FgAbelian: {
      std::vector<std::int64_t> coords = j.value("z", std::vector<std::int64_t>{});
      const auto t = j.value("t", std::vector<std::int64_t>{});
      if (static_cast<std::int64_t>(coords.size()) != g->rank)
        throw std::invalid_argument("element: wrong free-coordinate count");
      coords.insert(coords.end(), t.begin(), t.end());
      return abelian_element(g, std::move(coords));
    }
    case GroupKind::FreeProductZ2Z2:
    case GroupKind::FreeGroup:
      return word_element(g, j.at("word").get<std::string>());
    case GroupKind::FiniteTable:
      return table_element(g, j.at("index").get<int>());
  }
  throw std::logic_error("unknown group kind");
}

Json to_json(const FgAbelianGroup& g) {
  Json j;
  j["rank"] = g.rank;
  Json torsion = Json::array();
  for (const BigInt& t : g.torsion) torsion.push_back(t.str());
  j["torsion"] = torsion;
  j["name"] = g.to_string();
  return j;
}

Json to_json(const WangTileSet& w) {
  Json j;
  j["dimension"] = w.D;
  j["tiles"] = w.names;
  Json match = Json::array();
  for (const auto& rel : w.match) {
    Json pairs = Json::array();
    for (const auto& [a, b] : rel) pairs.push_back({a, b});
    match.push_back(pairs);
  }
  j["match"] = match;
  return j;
}

WangTileSet tiles_from_json(const Json& j) {
  WangTileSet w;
  w.D = j.at("dimension").get<int>();
  w.names = j.at("tiles").get<std::vector<std::string>>();
  for (const auto& rel : j.at("match")) {
    std::set<std::pair<int, int>> pairs;
    for (const auto& p : rel) pairs.insert({p.at(0).get<int>(), p.at(1).get<int>()});
    w.match.push_back(std::move(pairs));
  }
  if (static_cast<int>(w.match.size()) != w.D)
    throw std::invalid_argument("tiles: one match relation per axis required");
  return w;
}

Json to_json(const SftSpec& s) {
  Json j;
  j["dimension"] = s.D;
  j["symbols"] = s.symbol_names.empty() ? [&] {
    std::vector<std::string> names;
    for (int i = 0; i < s.nsymbols; ++i) names.push_back(std::to_string(i));
    return names;
  }() : s.symbol_names;
  j["radius"] = s.radius;
  j["mode"] = s.wang_mode ? "wang" : "explicit";
  if (s.wang_mode) {
    Json match = Json::array();
    for (const auto& rel : s.match) {
      Json pairs = Json::array();
      for (const auto& [a, b] : rel) pairs.push_back({a, b});
      match.push_back(pairs);
    }
    j["match"] = match;
  } else {
    Json blocks = Json::array();
    for (const Block& b : s.admissible) blocks.push_back(b);
    j["admissible"] = blocks;
  }
  return j;
}

SftSpec spec_from_json(const Json& j) {
  SftSpec s;
  s.D = j.at("dimension").get<int>();
  s.symbol_names = j.at("symbols").get<std::vector<std::string>>();
  s.nsymbols = static_cast<int>(s.symbol_names.size());
  s.radius = j.at("radius").get<std::int64_t>();
  s.wang_mode = j.at("mode").get<std::string>() == "wang";
  if (s.wang_mode) {
    for (const auto& rel : j.at("match")) {
      std::set<std::pair<int, int>> pairs;
      for (const auto& p : rel) pairs.insert({p.at(0).get<int>(), p.at(1).get<int>()});
      s.match.push_back(std::move(pairs));
    }
  } else {
    for (const auto& b : j.at("admissible")) s.admissible.insert(b.get<Block>());
  }
  return s;
}

Json to_json(const Configuration& c) {
  Json j;
  j["dimension"] = c.D;
  j["origin"] = c.lo.c;
  std::vector<std::int64_t> shape;
  for (int d = 0; d < c.D; ++d) shape.push_back(c.extent(d));
  j["shape"] = shape;
  j["cells"] = c.cells;  // row-major: coordinate 0 slowest
  j["periodic"] = c.periodic;
  return j;
}

Configuration configuration_from_json(const Json& j) {
  Configuration c;
  c.D = j.at("dimension").get<int>();
  c.lo = Site(j.at("origin").get<std::vector<std::int64_t>>());
  const auto shape = j.at("shape").get<std::vector<std::int64_t>>();
  if (static_cast<int>(shape.size()) != c.D)
    throw std::invalid_argument("configuration: shape/dimension mismatch");
  c.hi = c.lo;
  std::int64_t total = 1;
  for (int d = 0; d < c.D; ++d) {
    c.hi.c[static_cast<std::size_t>(d)] += shape[static_cast<std::size_t>(d)] - 1;
    total *= shape[static_cast<std::size_t>(d)];
  }
  c.cells = j.at("cells").get<std::vector<int>>();
  if (static_cast<std::int64_t>(c.cells.size()) != total)
    throw std::invalid_argument("configuration: cell count mismatch");
  c.periodic = j.value("periodic", false);
  return c;
}

Json rule_to_json(const DynamicalCocycleRule& rule, const SftSpec& spec) {
  Json j;
  j["dimension"] = rule.D;
  j["radius"] = rule.radius;
  j["group"] = to_json(*rule.group);
  j["name"] = rule.name;
  Json steps = Json::array();
  const auto blocks = spec.admissible_blocks(std::max(rule.radius, spec.radius));
  for (int d = 0; d < rule.D; ++d) {
    Json table = Json::array();
    for (const Block& big : blocks) {
      // Restrict to the rule's own radius when the spec radius is larger.
      Block b = big;
      if (rule.radius < spec.radius) {
        const auto inner = Box{Site::zero(rule.D), rule.radius}.sites();
        const auto outer = Box{Site::zero(rule.D), spec.radius}.sites();
        std::map<Site, int> pattern;
        for (std::size_t i = 0; i < outer.size(); ++i) pattern[outer[i]] = big[i];
        b.clear();
        for (const Site& s : inner) b.push_back(pattern.at(s));
      }
      table.push_back({{"block", big}, {"value", to_json(rule.step[static_cast<std::size_t>(d)](b))}});
    }
    steps.push_back(table);
  }
  j["table_radius"] = std::max(rule.radius, spec.radius);
  j["steps"] = steps;
  return j;
}

DynamicalCocycleRule rule_from_json(const Json& j) {
  DynamicalCocycleRule rule;
  rule.D = j.at("dimension").get<int>();
  rule.radius = j.at("table_radius").get<std::int64_t>();
  rule.group = group_from_json(j.at("group"));
  rule.name = j.value("name", std::string{});
  const auto& steps = j.at("steps");
  for (int d = 0; d < rule.D; ++d) {
    auto table = std::make_shared<std::map<Block, GroupElement>>();
    for (const auto& entry : steps.at(static_cast<std::size_t>(d)))
      table->emplace(entry.at("block").get<Block>(),
                     element_from_json(rule.group, entry.at("value")));
    rule.step.push_back([table, g = rule.group](const Block& b) {
      auto it = table->find(b);
      if (it == table->end()) throw std::invalid_argument("cocycle table: unknown block");
      return it->second;
    });
  }
  return rule;
}

Json to_json(const CaRule& ca, int nsymbols) {
  Json j;
  j["dimension"] = ca.D;
  j["radius"] = ca.radius;
  j["name"] = ca.name;
  j["nsymbols"] = nsymbols;
  // Tabulate phi over the full box neighbourhood.
  const auto box = Box{Site::zero(ca.D), ca.radius}.sites();
  std::int64_t total = 1;
  for (std::size_t i = 0; i < box.size(); ++i) total *= nsymbols;
  std::vector<int> table(static_cast<std::size_t>(total));
  std::map<Site, std::size_t> offset_index;
  for (std::size_t i = 0; i < ca.neighbourhood.size(); ++i)
    offset_index[ca.neighbourhood[i]] = i;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    std::vector<int> full(box.size());
    for (std::size_t i = box.size(); i-- > 0;) {
      full[i] = static_cast<int>(rest % nsymbols);
      rest /= nsymbols;
    }
    std::vector<int> local(ca.neighbourhood.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      auto it = offset_index.find(box[i]);
      if (it != offset_index.end()) local[it->second] = full[i];
    }
    table[static_cast<std::size_t>(code)] = ca.phi(local);
  }
  j["table"] = table;
  return j;
}

CaRule ca_from_json(const Json& j) {
  CaRule ca = table_ca(j.at("dimension").get<int>(), j.at("radius").get<std::int64_t>(),
                       j.at("nsymbols").get<int>(), j.at("table").get<std::vector<int>>());
  ca.name = j.value("name", std::string{});
  return ca;
}

namespace {

Json site_json(const Site& s) { return Json(s.c); }

Json siteset_json(const SiteSet& ss) {
  Json arr = Json::array();
  for (const Site& s : ss) arr.push_back(site_json(s));
  return arr;
}

}  // namespace

Json to_json(const DefectReport& report) {
  Json j;
  const auto& cls = report.classification;
  const char* kind = "none";
  switch (cls.kind) {
    case DefectKind::None: kind = "none"; break;
    case DefectKind::DomainBoundary: kind = "domain-boundary"; break;
    case DefectKind::CodimensionTwo: kind = "codimension-two"; break;
    case DefectKind::Mixed: kind = "mixed"; break;
  }
  j["kind"] = kind;
  j["r"] = report.r;
  j["r_max"] = report.r_max;
  j["unflawed_components"] = cls.unflawed_components.size();
  j["hole_components"] = cls.hole_components.size();
  Json defects = Json::array();
  for (const auto& comp : cls.defect_components) defects.push_back(siteset_json(comp));
  j["defect_components"] = defects;
  Json residues = Json::array();
  for (const auto& res : report.residues) {
    Json r;
    r["component"] = res.component;
    r["value"] = to_json(res.value);
    r["value_text"] = res.value.to_string();
    r["homotopy_checked"] = res.homotopy_checked;
    r["essential"] = res.flag == ResidueFlag::Essential;
    Json loop = Json::array();
    for (const Site& s : res.loop.sites) loop.push_back(site_json(s));
    r["loop"] = loop;
    residues.push_back(r);
  }
  j["residues"] = residues;
  return j;
}

Json to_json(const GapAnalysis& gap) {
  Json j;
  j["components"] = gap.components.size();
  Json refs = Json::array();
  for (const Site& s : gap.refs) refs.push_back(site_json(s));
  j["refs"] = refs;
  Json samples = Json::array();
  for (const auto& [L, s] : gap.slope_samples) samples.push_back({{"L", L}, {"slope", s}});
  j["samples"] = samples;
  const char* verdict = "inconclusive";
  if (gap.verdict == TiltVerdict::Bounded) verdict = "bounded";
  if (gap.verdict == TiltVerdict::DivergingWindowLimited) verdict = "diverging(window-limited)";
  j["verdict"] = verdict;
  j["fit_slope"] = gap.fit_slope;
  j["max_sample"] = gap.max_sample;
  j["detail"] = gap.detail;
  return j;
}

Json to_json(const TileComplex& tc) {
  Json j;
  j["dimension"] = tc.D;
  std::vector<std::size_t> counts;
  for (const auto& layer : tc.cells) counts.push_back(layer.size());
  j["cells"] = counts;
  j["euler_characteristic"] = tc.euler_characteristic();
  Json bnds = Json::array();
  for (int d = 1; d <= tc.D; ++d) {
    const IntegerMatrix& m = tc.bnd[static_cast<std::size_t>(d)];
    Json triplets = Json::array();
    for (std::int64_t i = 0; i < m.rows; ++i)
      for (std::int64_t c = 0; c < m.cols; ++c)
        if (m.at(i, c) != 0)
          triplets.push_back({i, c, static_cast<std::int64_t>(m.at(i, c))});
    bnds.push_back({{"degree", d}, {"rows", m.rows}, {"cols", m.cols}, {"entries", triplets}});
  }
  j["boundary"] = bnds;
  return j;
}

}  // namespace defectlab
