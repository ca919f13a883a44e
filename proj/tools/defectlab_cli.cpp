// Command-line front end: fixture emission, defect analysis, residues,
// tilt estimates, persistence experiments, (co)homology reports and small
// group computations.  JSON is the single interchange format; analysis
// errors exit with status 2 and a machine-readable JSON object on stderr.

#include "defectlab/complexes.hpp"
#include "defectlab/defects.hpp"
#include "defectlab/fixtures.hpp"
#include "defectlab/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace dl = defectlab;
namespace fx = defectlab::fixtures;

namespace {

struct Fixture {
  dl::SftSpec spec;
  std::optional<dl::DynamicalCocycleRule> rule;
  std::optional<dl::EquivariantCochainRule> eqrule;
  dl::Configuration cfg;
};

Fixture load_fixture(const std::string& name) {
  if (name == "ice-pole") return {fx::ice_spec(), fx::ice_height_rule(), {}, fx::ice_pole_config()};
  if (name == "ice-gap") return {fx::ice_spec(), fx::ice_height_rule(), {}, fx::ice_gap_config()};
  if (name == "domino-gap")
    return {fx::domino_spec(), fx::domino_rule(), {}, fx::domino_gap_config()};
  if (name == "domino-gap-opposite")
    return {fx::domino_spec(), fx::domino_rule(), {}, fx::domino_gap_opposite_config()};
  if (name == "path-three-defect")
    return {fx::path_spec(), fx::path_rule(), {}, fx::path_three_defect_config()};
  if (name == "q-pole") return {fx::q_spec(), {}, fx::q_pin_rule(), fx::q_pole_config()};
  if (name == "golden-mean") return {fx::golden_mean_spec(), {}, {}, fx::golden_mean_config()};
  throw std::invalid_argument("unknown fixture: " + name);
}

dl::WangTileSet load_tileset(const std::string& name) {
  if (name == "ice") return fx::ice_tiles();
  if (name == "dominoes") return fx::domino_tiles();
  if (name == "paths") return fx::path_tiles();
  if (name == "ice-cubes-3d") return fx::q_tiles();
  throw std::invalid_argument("unknown tile set: " + name);
}

bool is_tileset_name(const std::string& name) {
  return name == "ice" || name == "dominoes" || name == "paths" || name == "ice-cubes-3d";
}

// Group grammar: terms joined by '+', each "Z", "Z^k" or "Z/n".
dl::FgAbelianGroup parse_group(const std::string& text) {
  std::int64_t rank = 0;
  std::vector<dl::BigInt> torsion;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term.erase(std::remove_if(term.begin(), term.end(), ::isspace), term.end());
    if (term.empty()) continue;
    if (term == "Z" || term == "z") {
      ++rank;
    } else if (term.rfind("Z^", 0) == 0 || term.rfind("z^", 0) == 0) {
      rank += std::stoll(term.substr(2));
    } else if (term.rfind("Z/", 0) == 0 || term.rfind("z/", 0) == 0) {
      torsion.push_back(std::stoll(term.substr(2)));
    } else if (term == "0") {
      // trivial summand
    } else {
      throw std::invalid_argument("cannot parse group term: " + term);
    }
  }
  return dl::canonical_cyclic_sum(rank, std::move(torsion));
}

dl::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return dl::Json::parse(in);
}

void write_output(const dl::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    out << j.dump(2) << "\n";
  }
}

// Project file: {"sft": ..., "configurations": [{"name": ..., <config>}],
// "cocycles": [{"name": ..., <rule>}], "cas": [{"name": ..., <ca>}]}.
struct Project {
  dl::SftSpec spec;
  std::map<std::string, dl::Configuration> configurations;
  std::map<std::string, dl::DynamicalCocycleRule> cocycles;
  std::map<std::string, dl::CaRule> cas;
};

Project load_project(const std::string& path) {
  const dl::Json j = load_json_file(path);
  Project p;
  p.spec = dl::spec_from_json(j.at("sft"));
  for (const auto& c : j.value("configurations", dl::Json::array()))
    p.configurations.emplace(c.at("name").get<std::string>(), dl::configuration_from_json(c));
  for (const auto& c : j.value("cocycles", dl::Json::array()))
    p.cocycles.emplace(c.at("name").get<std::string>(), dl::rule_from_json(c));
  for (const auto& c : j.value("cas", dl::Json::array()))
    p.cas.emplace(c.at("name").get<std::string>(), dl::ca_from_json(c));
  return p;
}

std::string residue_text(const dl::GroupElement& v) {
  if (v.spec->kind == dl::GroupKind::FgAbelian && v.spec->rank == 1 && v.spec->torsion.empty())
    return std::to_string(v.vec[0]);
  return v.to_string();
}

dl::CaRule parse_ca(const std::string& text, int D, int nsymbols) {
  if (text.empty() || text == "identity") return dl::identity_ca(D);
  if (text.rfind("shift:", 0) == 0) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text.substr(6));
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(std::stoll(part));
    if (static_cast<int>(v.size()) != D)
      throw std::invalid_argument("shift vector dimension mismatch");
    return dl::shift_ca(dl::Site(v));
  }
  if (text.rfind("expr:", 0) == 0) return dl::expression_ca(D, 1, nsymbols, text.substr(5));
  throw std::invalid_argument("unknown automaton: " + text +
                              " (use identity, shift:v1,...,vD or expr:<expression>)");
}

int run(int argc, char** argv) {
  CLI::App app{"defectlab: algebraic invariants of defects in tilings and subshifts"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for sampled schedules");

  // fixtures list|emit
  auto* fixtures_cmd = app.add_subcommand("fixtures", "list or emit bundled fixtures");
  auto* fixtures_list = fixtures_cmd->add_subcommand("list", "list fixture names");
  auto* fixtures_emit = fixtures_cmd->add_subcommand("emit", "emit a fixture or tile set as JSON");
  std::string emit_name, emit_out;
  fixtures_emit->add_option("name", emit_name, "fixture or tile set name")->required();
  fixtures_emit->add_option("-o,--output", emit_out, "output file (default stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "defect field and classification");
  std::string an_project, an_config, an_fixture;
  std::int64_t an_radius = -1;
  bool an_ascii = false;
  analyze_cmd->add_option("project", an_project, "project JSON file");
  analyze_cmd->add_option("--config", an_config, "configuration name in the project");
  analyze_cmd->add_option("--fixture", an_fixture, "bundled fixture name");
  analyze_cmd->add_option("--radius,-r", an_radius, "stratum level (default R+1)");
  analyze_cmd->add_flag("--ascii", an_ascii, "also print the ASCII defect map");

  // residue
  auto* residue_cmd = app.add_subcommand("residue", "cocycle residues around defects");
  std::string re_project, re_config, re_cocycle, re_fixture;
  std::int64_t re_radius = -1;
  residue_cmd->add_option("project", re_project, "project JSON file");
  residue_cmd->add_option("--config", re_config, "configuration name");
  residue_cmd->add_option("--cocycle", re_cocycle, "cocycle name");
  residue_cmd->add_option("--fixture", re_fixture, "bundled fixture name");
  residue_cmd->add_option("--radius,-r", re_radius, "stratum level (default R+1)");

  // tilt
  auto* tilt_cmd = app.add_subcommand("tilt", "gap divergence estimate across boundaries");
  std::string ti_project, ti_config, ti_cocycle, ti_fixture;
  std::int64_t ti_radius = -1;
  tilt_cmd->add_option("project", ti_project, "project JSON file");
  tilt_cmd->add_option("--config", ti_config, "configuration name");
  tilt_cmd->add_option("--cocycle", ti_cocycle, "cocycle name");
  tilt_cmd->add_option("--fixture", ti_fixture, "bundled fixture name");
  tilt_cmd->add_option("--radius,-r", ti_radius, "stratum level (default R+1)");

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "persistence under an automaton");
  std::string ev_fixture, ev_ca = "identity";
  int ev_steps = 1;
  std::int64_t ev_radius = -1;
  evolve_cmd->add_option("--fixture", ev_fixture, "bundled fixture name")->required();
  evolve_cmd->add_option("--steps", ev_steps, "number of steps")->required();
  evolve_cmd->add_option("--ca", ev_ca, "identity, shift:v1,...,vD or expr:<expression>");
  evolve_cmd->add_option("--radius,-r", ev_radius, "stratum level (default R+1)");

  // homology
  auto* homology_cmd = app.add_subcommand("homology", "(co)homology of tile complexes");
  std::string ho_kind = "tile", ho_name, ho_coeff = "Z";
  std::int64_t ho_radius = 1;
  int ho_degree = -1;
  homology_cmd->add_option("--kind", ho_kind, "tile | invariant | conway-lagarias")->required();
  homology_cmd->add_option("--fixture", ho_name, "tile set or fixture name")->required();
  homology_cmd->add_option("--radius,-r", ho_radius, "representation radius (invariant kind)");
  homology_cmd->add_option("--coeff", ho_coeff, "coefficient group, e.g. Z, Z/2, Z^2+Z/3");
  homology_cmd->add_option("--degree,-d", ho_degree, "single degree (default: all)");

  // check-cocycle
  auto* check_cmd = app.add_subcommand("check-cocycle", "verify the cocycle identities");
  std::string ch_fixture;
  check_cmd->add_option("--fixture", ch_fixture, "bundled fixture or tile set name")->required();

  // cohomologous
  auto* coh_cmd = app.add_subcommand("cohomologous", "search for a transfer between two cocycles");
  std::string co_fixture, co_rule2;
  std::int64_t co_max_radius = 1;
  coh_cmd->add_option("--fixture", co_fixture, "bundled fixture name")->required();
  coh_cmd->add_option("--rule2", co_rule2, "JSON file with the second cocycle (default: the fixture rule)");
  coh_cmd->add_option("--max-radius", co_max_radius, "largest transfer radius to try");

  // ext
  auto* ext_cmd = app.add_subcommand("ext", "Ext(H, G) for finitely generated abelian groups");
  std::string ext_h, ext_g;
  ext_cmd->add_option("H", ext_h, "e.g. Z/4")->required();
  ext_cmd->add_option("G", ext_g, "e.g. Z/6")->required();

  CLI11_PARSE(app, argc, argv);

  // Parallelism cap; analyses currently run on one thread, so any valid cap
  // is honoured trivially, but a malformed value is still rejected.
  if (const char* threads = std::getenv("DEFECTLAB_THREADS")) {
    const std::string t(threads);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t == "0")
      throw std::invalid_argument("DEFECTLAB_THREADS must be a positive integer");
  }

  if (fixtures_cmd->parsed()) {
    if (fixtures_list->parsed() || !fixtures_emit->parsed()) {
      for (const std::string& n : {std::string("ice"), std::string("dominoes"),
                                   std::string("paths"), std::string("ice-cubes-3d")})
        std::cout << n << " (tile set)\n";
      for (const std::string& n : fx::fixture_names()) std::cout << n << "\n";
      return 0;
    }
    dl::Json j;
    if (is_tileset_name(emit_name)) {
      j = dl::to_json(load_tileset(emit_name));
    } else {
      const Fixture f = load_fixture(emit_name);
      j["sft"] = dl::to_json(f.spec);
      dl::Json cfg = dl::to_json(f.cfg);
      cfg["name"] = emit_name;
      j["configurations"] = dl::Json::array({cfg});
      dl::Json cocycles = dl::Json::array();
      if (f.rule && f.spec.nsymbols <= 32) {
        dl::Json r = dl::rule_to_json(*f.rule, f.spec);
        r["name"] = f.rule->name;
        cocycles.push_back(r);
      }
      j["cocycles"] = cocycles;
      j["cas"] = dl::Json::array();
    }
    write_output(j, emit_out);
    return 0;
  }

  if (analyze_cmd->parsed()) {
    dl::SftSpec spec;
    dl::Configuration cfg;
    if (!an_fixture.empty()) {
      Fixture f = load_fixture(an_fixture);
      spec = std::move(f.spec);
      cfg = std::move(f.cfg);
    } else {
      Project p = load_project(an_project);
      spec = std::move(p.spec);
      cfg = p.configurations.at(an_config);
    }
    const std::int64_t r = an_radius < 0 ? spec.radius + 1 : an_radius;
    const auto cls = dl::classify_defect(cfg, spec, r);
    dl::Json j;
    const char* kind = "none";
    switch (cls.kind) {
      case dl::DefectKind::None: kind = "none"; break;
      case dl::DefectKind::DomainBoundary: kind = "domain-boundary"; break;
      case dl::DefectKind::CodimensionTwo: kind = "codimension-two"; break;
      case dl::DefectKind::Mixed: kind = "mixed"; break;
    }
    j["kind"] = kind;
    j["r"] = cls.r;
    j["unflawed_components"] = cls.unflawed_components.size();
    j["hole_components"] = cls.hole_components.size();
    j["defect_components"] = cls.defect_components.size();
    std::cout << j.dump(2) << "\n";
    if (an_ascii && spec.D == 2) {
      const auto field = dl::defect_field(cfg, spec);
      std::cout << dl::render_defect_field(cfg, field);
    }
    return 0;
  }

  if (residue_cmd->parsed()) {
    Fixture f;
    dl::DynamicalCocycleRule rule;
    if (!re_fixture.empty()) {
      f = load_fixture(re_fixture);
    } else {
      Project p = load_project(re_project);
      f.spec = std::move(p.spec);
      f.cfg = p.configurations.at(re_config);
      f.rule = p.cocycles.at(re_cocycle);
    }
    const std::int64_t r = re_radius < 0 ? f.spec.radius + 1 : re_radius;
    if (f.eqrule) {
      const auto poles = dl::d_pole_search(f.cfg, f.spec, *f.eqrule, r);
      for (const auto& p : poles)
        std::cout << residue_text(p.value) << "\n";
      return 0;
    }
    if (!f.rule) throw std::invalid_argument("fixture carries no cocycle");
    const auto report = dl::residue_report(f.cfg, f.spec, *f.rule, r);
    for (const auto& res : report.residues) std::cout << residue_text(res.value) << "\n";
    if (report.residues.empty()) std::cout << "no codimension-two holes\n";
    return 0;
  }

  if (tilt_cmd->parsed()) {
    Fixture f;
    if (!ti_fixture.empty()) {
      f = load_fixture(ti_fixture);
    } else {
      Project p = load_project(ti_project);
      f.spec = std::move(p.spec);
      f.cfg = p.configurations.at(ti_config);
      f.rule = p.cocycles.at(ti_cocycle);
    }
    if (!f.rule) throw std::invalid_argument("fixture carries no cocycle");
    const std::int64_t r = ti_radius < 0 ? f.spec.radius + 1 : ti_radius;
    dl::TiltOptions options;
    options.seed = seed;
    const auto gap = dl::tilt_estimate(f.cfg, f.spec, *f.rule, r, options);
    std::cout << dl::to_json(gap).dump(2) << "\n";
    return 0;
  }

  if (evolve_cmd->parsed()) {
    Fixture f = load_fixture(ev_fixture);
    if (!f.rule) throw std::invalid_argument("fixture carries no cocycle");
    const std::int64_t r = ev_radius < 0 ? f.spec.radius + 1 : ev_radius;
    const dl::CaRule ca = parse_ca(ev_ca, f.spec.D, f.spec.nsymbols);
    const auto report = dl::persistence_experiment(f.cfg, f.spec, *f.rule, ca, ev_steps, r);
    dl::Json steps = dl::Json::array();
    for (const auto& step : report.steps) {
      dl::Json s = dl::to_json(step.report);
      s["t"] = step.t;
      s["pullback_identity_ok"] = step.pullback_identity_ok;
      steps.push_back(s);
    }
    std::cout << dl::Json{{"steps", steps}}.dump(2) << "\n";
    return 0;
  }

  if (homology_cmd->parsed()) {
    const dl::FgAbelianGroup coeff = parse_group(ho_coeff);
    if (ho_kind == "conway-lagarias") {
      const auto tiles = is_tileset_name(ho_name) ? load_tileset(ho_name)
                                                  : dl::wang_representation(
                                                        load_fixture(ho_name).spec, ho_radius);
      const auto group = dl::conway_lagarias_abelianized(tiles);
      std::cout << group.group.to_string() << "\n";
      return 0;
    }
    if (ho_kind == "tile") {
      const auto tiles = is_tileset_name(ho_name) ? load_tileset(ho_name)
                                                  : dl::wang_representation(
                                                        load_fixture(ho_name).spec, ho_radius);
      const auto tc = dl::build_tile_complex(tiles);
      dl::Json j;
      for (int d = 0; d <= tc.D; ++d) {
        if (ho_degree >= 0 && d != ho_degree) continue;
        j["H_" + std::to_string(d)] = dl::tile_homology(tc, d, coeff).to_string();
        j["H^" + std::to_string(d)] = dl::tile_cohomology(tc, d, coeff).to_string();
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (ho_kind == "invariant") {
      const dl::SftSpec spec = load_fixture(ho_name).spec;
      const int d = ho_degree < 0 ? 1 : ho_degree;
      const auto g = dl::invariant_cohomology(spec, ho_radius, d, coeff);
      std::cout << g.to_string() << "\n";
      return 0;
    }
    throw std::invalid_argument("unknown homology kind: " + ho_kind);
  }

  if (check_cmd->parsed()) {
    if (is_tileset_name(ch_fixture)) {
      const auto tiles = load_tileset(ch_fixture);
      const dl::SftSpec spec = dl::wang_to_sft(tiles);
      dl::DynamicalCocycleRule rule;
      if (ch_fixture == "ice") rule = fx::ice_height_rule();
      else if (ch_fixture == "dominoes") rule = fx::domino_rule();
      else if (ch_fixture == "paths") rule = fx::path_rule();
      else {
        const auto rep = dl::check_equivariant_cocycle(fx::q_pin_rule(), spec);
        std::cout << (rep.consistent ? "ok" : "FAIL: " + rep.detail) << "\n";
        return rep.consistent ? 0 : 2;
      }
      const auto rep = dl::check_cocycle_conditions(rule, spec);
      std::cout << (rep.consistent ? "ok" : "FAIL: " + rep.detail) << "\n";
      return rep.consistent ? 0 : 2;
    }
    const Fixture f = load_fixture(ch_fixture);
    if (f.eqrule) {
      const auto rep = dl::check_equivariant_cocycle(*f.eqrule, f.spec);
      std::cout << (rep.consistent ? "ok" : "FAIL: " + rep.detail) << "\n";
      return rep.consistent ? 0 : 2;
    }
    if (!f.rule) throw std::invalid_argument("fixture carries no cocycle");
    const auto rep = dl::check_cocycle_conditions(*f.rule, f.spec);
    std::cout << (rep.consistent ? "ok" : "FAIL: " + rep.detail) << "\n";
    return rep.consistent ? 0 : 2;
  }

  if (coh_cmd->parsed()) {
    const Fixture f = load_fixture(co_fixture);
    if (!f.rule) throw std::invalid_argument("fixture carries no cocycle");
    dl::DynamicalCocycleRule rule2 = co_rule2.empty() ? *f.rule
                                                      : dl::rule_from_json(load_json_file(co_rule2));
    std::vector<dl::GroupElement> candidates;
    if (f.rule->group->kind == dl::GroupKind::FreeProductZ2Z2) {
      // Infinite groups need an explicit candidate set; short words suffice
      // for the bundled fixtures.
      for (const char* w : {"", "v", "h", "vh", "hv", "vhv", "hvh"})
        candidates.push_back(dl::word_element(f.rule->group, w));
    }
    const auto result = dl::cohomologous_search(*f.rule, rule2, f.spec, co_max_radius, candidates);
    const char* outcome = result.outcome == dl::SearchOutcome::Found
                              ? "found"
                              : result.outcome == dl::SearchOutcome::NotFound ? "not-found"
                                                                              : "budget-exceeded";
    dl::Json j;
    j["outcome"] = outcome;
    j["transfer_radius"] = result.transfer_radius;
    j["detail"] = result.detail;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (ext_cmd->parsed()) {
    const auto result = dl::ext_group(parse_group(ext_h), parse_group(ext_g));
    std::cout << result.to_string() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    dl::Json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
