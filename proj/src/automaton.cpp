#include "defectlab/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace defectlab {

namespace {

// True when the rule is structurally a (shifted) projection: a single
// neighbourhood site copied through unchanged.  Such rules map any subshift
// into itself, so invariance needs no block scan.
bool is_projection(const CaRule& ca, int nsymbols) {
  if (ca.neighbourhood.size() != 1) return false;
  for (int s = 0; s < nsymbols; ++s) {
    if (ca.phi(std::vector<int>{s}) != s) return false;
  }
  return true;
}

// Budgeted DFS over admissible patterns on `domain`, invoking `visit` on each
// complete pattern.  Returns false when the node budget is exhausted.
bool for_each_admissible(const SftSpec& spec, const std::vector<Site>& domain,
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

}  // namespace

CaRule identity_ca(int D) {
  CaRule ca;
  ca.D = D;
  ca.neighbourhood = {Site::zero(D)};
  ca.radius = 0;
  ca.phi = [](const std::vector<int>& x) { return x[0]; };
  ca.name = "identity";
  return ca;
}

CaRule shift_ca(const Site& v) {
  CaRule ca;
  ca.D = v.dim();
  ca.neighbourhood = {v};
  ca.radius = 0;
  for (std::int64_t c : v.c) ca.radius = std::max(ca.radius, c < 0 ? -c : c);
  ca.phi = [](const std::vector<int>& x) { return x[0]; };
  ca.name = "shift";
  return ca;
}

CaRule table_ca(int D, std::int64_t q, int nsymbols, std::vector<int> table) {
  Box hood{Site::zero(D), q};
  const auto sites = hood.sites();
  std::size_t expected = 1;
  for (std::size_t i = 0; i < sites.size(); ++i) expected *= static_cast<std::size_t>(nsymbols);
  if (table.size() != expected) throw std::invalid_argument("table_ca: table size mismatch");
  CaRule ca;
  ca.D = D;
  ca.neighbourhood = sites;
  ca.radius = q;
  ca.phi = [table = std::move(table), nsymbols](const std::vector<int>& x) {
    std::size_t idx = 0;
    for (int s : x) idx = idx * static_cast<std::size_t>(nsymbols) + static_cast<std::size_t>(s);
    return table[idx];
  };
  ca.name = "table";
  return ca;
}

namespace {

// Minimal arithmetic expression evaluator over variables x0, x1, ...
// Grammar: expr := term (('+'|'-') term)* ; term := factor (('*'|'%') factor)* ;
// factor := integer | 'x' integer | '(' expr ')' | '-' factor.
struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;
  const std::vector<int>& vars;

  void skip() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }

  long long parse_expr() {
    long long v = parse_term();
    for (skip(); pos < s.size() && (s[pos] == '+' || s[pos] == '-'); skip()) {
      char op = s[pos++];
      long long w = parse_term();
      v = op == '+' ? v + w : v - w;
    }
    return v;
  }

  long long parse_term() {
    long long v = parse_factor();
    for (skip(); pos < s.size() && (s[pos] == '*' || s[pos] == '%'); skip()) {
      char op = s[pos++];
      long long w = parse_factor();
      if (op == '*') {
        v *= w;
      } else {
        if (w == 0) throw std::invalid_argument("expression: modulo by zero");
        v = ((v % w) + w) % w;
      }
    }
    return v;
  }

  long long parse_factor() {
    skip();
    if (pos >= s.size()) throw std::invalid_argument("expression: unexpected end");
    if (s[pos] == '-') {
      ++pos;
      return -parse_factor();
    }
    if (s[pos] == '(') {
      ++pos;
      long long v = parse_expr();
      skip();
      if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("expression: missing ')'");
      ++pos;
      return v;
    }
    if (s[pos] == 'x') {
      ++pos;
      std::size_t i = parse_int();
      if (i >= vars.size()) throw std::invalid_argument("expression: variable out of range");
      return vars[i];
    }
    return static_cast<long long>(parse_int());
  }

  std::size_t parse_int() {
    skip();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("expression: number expected");
    std::size_t v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      v = v * 10 + static_cast<std::size_t>(s[pos++] - '0');
    return v;
  }
};

}  // namespace

CaRule expression_ca(int D, std::int64_t q, int nsymbols, const std::string& expr) {
  Box hood{Site::zero(D), q};
  CaRule ca;
  ca.D = D;
  ca.neighbourhood = hood.sites();
  ca.radius = q;
  ca.phi = [expr, nsymbols](const std::vector<int>& x) {
    ExprParser p{expr, 0, x};
    long long v = p.parse_expr();
    p.skip();
    if (p.pos != expr.size()) throw std::invalid_argument("expression: trailing input");
    long long m = ((v % nsymbols) + nsymbols) % nsymbols;
    return static_cast<int>(m);
  };
  ca.name = "expr:" + expr;
  // Validate totality once on the all-zero neighbourhood.
  ca.phi(std::vector<int>(ca.neighbourhood.size(), 0));
  return ca;
}

Configuration apply(const CaRule& ca, const Configuration& cfg) {
  if (ca.D != cfg.D) throw std::invalid_argument("apply: dimension mismatch");
  Configuration out;
  out.D = cfg.D;
  out.periodic = cfg.periodic;
  if (cfg.periodic) {
    out.lo = cfg.lo;
    out.hi = cfg.hi;
  } else {
    out.lo = cfg.lo;
    out.hi = cfg.hi;
    for (int d = 0; d < cfg.D; ++d) {
      out.lo.c[static_cast<std::size_t>(d)] += ca.radius;
      out.hi.c[static_cast<std::size_t>(d)] -= ca.radius;
      if (out.lo.c[static_cast<std::size_t>(d)] > out.hi.c[static_cast<std::size_t>(d)])
        throw WindowTooSmall("apply: window smaller than twice the rule radius");
    }
  }
  const auto sites = box_sites(out.lo, out.hi);
  out.cells.resize(sites.size());
  std::vector<int> local(ca.neighbourhood.size());
  std::size_t i = 0;
  for (const Site& z : sites) {
    for (std::size_t k = 0; k < ca.neighbourhood.size(); ++k)
      local[k] = cfg.get(z + ca.neighbourhood[k]);
    out.cells[i++] = ca.phi(local);
  }
  return out;
}

InvarianceReport check_invariance(const CaRule& ca, const SftSpec& spec,
                                  std::size_t budget) {
  InvarianceReport report;
  if (is_projection(ca, spec.nsymbols)) {
    report.verdict = InvarianceVerdict::ProvedOnBlocks;
    report.detail = "projection rule: images are shifted configurations";
    return report;
  }
  const std::int64_t R = spec.radius;
  const std::int64_t q = ca.radius;
  Box outer{Site::zero(spec.D), R + q};
  const auto domain = outer.sites();
  const auto inner = Box{Site::zero(spec.D), R}.sites();
  std::vector<int> local(ca.neighbourhood.size());
  Block image(inner.size());
  try {
    bool ok = for_each_admissible(spec, domain, budget,
                                  [&](const std::map<Site, int>& pattern) {
      for (std::size_t i = 0; i < inner.size(); ++i) {
        for (std::size_t k = 0; k < ca.neighbourhood.size(); ++k)
          local[k] = pattern.at(inner[i] + ca.neighbourhood[k]);
        image[i] = ca.phi(local);
      }
      if (!spec.block_admissible(image, R)) {
        report.verdict = InvarianceVerdict::Counterexample;
        report.counterexample.clear();
        for (const Site& z : domain) report.counterexample.push_back(pattern.at(z));
        report.detail = "image of an admissible block is inadmissible";
        return false;
      }
      return true;
    });
    if (ok && report.verdict != InvarianceVerdict::Counterexample) {
      report.verdict = InvarianceVerdict::ProvedOnBlocks;
      report.detail = "all admissible blocks map to admissible blocks";
    }
  } catch (const std::length_error&) {
    report.verdict = InvarianceVerdict::Inconclusive;
    report.detail = "enumeration budget exhausted";
  }
  return report;
}

EnergyDropReport energy_drop_check(const CaRule& ca, const SftSpec& spec,
                                   const Configuration& cfg) {
  EnergyDropReport report;
  const Configuration image = apply(ca, cfg);
  const DefectField before = defect_field(cfg, spec);
  const DefectField after = defect_field(image, spec);
  bool first = true;
  for (const auto& [z, entry] : after.values) {
    auto it = before.values.find(z);
    if (it == before.values.end()) continue;
    if (!entry.exact || !it->second.exact) continue;
    const std::int64_t slack = entry.value - (it->second.value - ca.radius);
    if (first || slack < report.slack) {
      report.slack = slack;
      report.worst = z;
      first = false;
    }
  }
  report.holds = first || report.slack >= 0;
  return report;
}

}  // namespace defectlab
