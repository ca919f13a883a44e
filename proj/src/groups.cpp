/**
 * \file groups.cpp
 * \brief Implementation of group arithmetic, pseudonorms, Ext/Hom/tensor for
 *        finitely generated abelian groups, Smith normal form, and homology.
 */

#include "defectlab/groups.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace defectlab {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / big_gcd(a, b) * b;
}

std::string reduce_z2z2(const std::string& w) {
  std::string out;
  for (char ch : w) {
    require(ch == 'v' || ch == 'h', "Z/2*Z/2 words use letters v, h");
    if (!out.empty() && out.back() == ch)
      out.pop_back();
    else
      out.push_back(ch);
  }
  return out;
}

bool is_inverse_pair(char a, char b) {
  return a != b && std::tolower(a) == std::tolower(b);
}

std::string reduce_free(const std::string& w, int generators) {
  std::string out;
  for (char ch : w) {
    const char lower = static_cast<char>(std::tolower(ch));
    require(lower >= 'a' && lower < 'a' + generators, "letter outside generator range");
    if (!out.empty() && is_inverse_pair(out.back(), ch))
      out.pop_back();
    else
      out.push_back(ch);
  }
  return out;
}

std::int64_t mod_into(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  if (r < 0) r += n;
  return r;
}

}  // namespace

std::optional<BigInt> FgAbelianGroup::order() const {
  if (rank > 0) return std::nullopt;
  BigInt o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

std::string FgAbelianGroup::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank == 1) {
    os << "Z";
    first = false;
  } else if (rank > 1) {
    os << "Z^" << rank;
    first = false;
  }
  for (const auto& t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

FgAbelianGroup canonical_cyclic_sum(std::int64_t rank, std::vector<BigInt> orders) {
  std::vector<BigInt> t;
  for (auto& o : orders)
    if (o > 1) t.push_back(o);
  // Repeatedly replace non-chain pairs (a, b) by (gcd, lcm).
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (t[i] % t[j] == 0 || t[j] % t[i] == 0) continue;
        BigInt g = big_gcd(t[i], t[j]);
        BigInt l = big_lcm(t[i], t[j]);
        t[i] = g;
        t[j] = l;
        changed = true;
      }
    std::erase_if(t, [](const BigInt& x) { return x <= 1; });
  }
  std::sort(t.begin(), t.end());
  FgAbelianGroup out;
  out.rank = rank;
  out.torsion = std::move(t);
  return out;
}

void GroupSpec::validate() const {
  switch (kind) {
    case GroupKind::FgAbelian:
      require(rank >= 0, "negative rank");
      for (auto n : torsion) require(n >= 2, "torsion order must be >= 2");
      break;
    case GroupKind::FreeProductZ2Z2:
      break;
    case GroupKind::FreeGroup:
      require(free_generators >= 1 && free_generators <= 26, "1..26 free generators");
      break;
    case GroupKind::FiniteTable: {
      const int n = static_cast<int>(table.size());
      require(n >= 1, "empty table");
      for (const auto& row : table) {
        require(static_cast<int>(row.size()) == n, "table not square");
        for (int x : row) require(x >= 0 && x < n, "table entry out of range");
      }
      for (int i = 0; i < n; ++i)
        require(table[0][static_cast<std::size_t>(i)] == i &&
                    table[static_cast<std::size_t>(i)][0] == i,
                "element 0 must be the identity");
      for (int i = 0; i < n; ++i) {
        bool has_inv = false;
        for (int j = 0; j < n; ++j)
          if (table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0 &&
              table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == 0)
            has_inv = true;
        require(has_inv, "missing inverse");
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            const int ij = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const int jk = table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            require(table[static_cast<std::size_t>(ij)][static_cast<std::size_t>(k)] ==
                        table[static_cast<std::size_t>(i)][static_cast<std::size_t>(jk)],
                    "table not associative");
          }
      break;
    }
  }
}

GroupSpecPtr make_fg_abelian(std::int64_t rank, std::vector<std::int64_t> torsion) {
  auto s = std::make_shared<GroupSpec>();
  s->kind = GroupKind::FgAbelian;
  s->rank = rank;
  s->torsion = std::move(torsion);
  s->validate();
  return s;
}

GroupSpecPtr make_z() { return make_fg_abelian(1); }

GroupSpecPtr make_z2z2() {
  auto s = std::make_shared<GroupSpec>();
  s->kind = GroupKind::FreeProductZ2Z2;
  return s;
}

GroupSpecPtr make_free_group(int generators) {
  auto s = std::make_shared<GroupSpec>();
  s->kind = GroupKind::FreeGroup;
  s->free_generators = generators;
  s->validate();
  return s;
}

GroupSpecPtr make_finite_table(std::vector<std::vector<int>> table) {
  auto s = std::make_shared<GroupSpec>();
  s->kind = GroupKind::FiniteTable;
  s->table = std::move(table);
  s->validate();
  return s;
}

bool GroupElement::operator==(const GroupElement& o) const {
  require(spec && o.spec && *spec == *o.spec, "group spec mismatch");
  switch (spec->kind) {
    case GroupKind::FgAbelian:
      return vec == o.vec;
    case GroupKind::FreeProductZ2Z2:
    case GroupKind::FreeGroup:
      return word == o.word;
    case GroupKind::FiniteTable:
      return index == o.index;
  }
  return false;
}

std::string GroupElement::to_string() const {
  switch (spec->kind) {
    case GroupKind::FgAbelian: {
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < vec.size(); ++i)
        os << (i ? "," : "") << vec[i];
      os << ")";
      return os.str();
    }
    case GroupKind::FreeProductZ2Z2:
    case GroupKind::FreeGroup:
      return word.empty() ? "e" : word;
    case GroupKind::FiniteTable:
      return "#" + std::to_string(index);
  }
  return "";
}

GroupElement identity(const GroupSpecPtr& spec) {
  GroupElement e;
  e.spec = spec;
  if (spec->kind == GroupKind::FgAbelian)
    e.vec.assign(static_cast<std::size_t>(spec->rank) + spec->torsion.size(), 0);
  return e;
}

GroupElement abelian_element(const GroupSpecPtr& spec, std::vector<std::int64_t> coords) {
  require(spec->kind == GroupKind::FgAbelian, "not an FgAbelian spec");
  require(coords.size() == static_cast<std::size_t>(spec->rank) + spec->torsion.size(),
          "coordinate count mismatch");
  GroupElement g;
  g.spec = spec;
  g.vec = std::move(coords);
  for (std::size_t k = 0; k < spec->torsion.size(); ++k) {
    auto& x = g.vec[static_cast<std::size_t>(spec->rank) + k];
    x = mod_into(x, spec->torsion[k]);
  }
  return g;
}

GroupElement word_element(const GroupSpecPtr& spec, const std::string& word) {
  GroupElement g;
  g.spec = spec;
  if (spec->kind == GroupKind::FreeProductZ2Z2)
    g.word = reduce_z2z2(word);
  else if (spec->kind == GroupKind::FreeGroup)
    g.word = reduce_free(word, spec->free_generators);
  else
    throw std::invalid_argument("word_element requires a word group spec");
  return g;
}

GroupElement table_element(const GroupSpecPtr& spec, int index) {
  require(spec->kind == GroupKind::FiniteTable, "not a FiniteTable spec");
  require(index >= 0 && index < static_cast<int>(spec->table.size()), "index out of range");
  GroupElement g;
  g.spec = spec;
  g.index = index;
  return g;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  require(a.spec && b.spec && *a.spec == *b.spec, "group spec mismatch");
  GroupElement r;
  r.spec = a.spec;
  switch (a.spec->kind) {
    case GroupKind::FgAbelian: {
      r.vec = a.vec;
      for (std::size_t i = 0; i < r.vec.size(); ++i) r.vec[i] += b.vec[i];
      for (std::size_t k = 0; k < a.spec->torsion.size(); ++k) {
        auto& x = r.vec[static_cast<std::size_t>(a.spec->rank) + k];
        x = mod_into(x, a.spec->torsion[k]);
      }
      break;
    }
    case GroupKind::FreeProductZ2Z2:
      r.word = reduce_z2z2(a.word + b.word);
      break;
    case GroupKind::FreeGroup:
      r.word = reduce_free(a.word + b.word, a.spec->free_generators);
      break;
    case GroupKind::FiniteTable:
      r.index = a.spec->table[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(b.index)];
      break;
  }
  return r;
}

GroupElement inv(const GroupElement& a) {
  GroupElement r;
  r.spec = a.spec;
  switch (a.spec->kind) {
    case GroupKind::FgAbelian: {
      r.vec = a.vec;
      for (std::size_t i = 0; i < static_cast<std::size_t>(a.spec->rank); ++i)
        r.vec[i] = -r.vec[i];
      for (std::size_t k = 0; k < a.spec->torsion.size(); ++k) {
        auto& x = r.vec[static_cast<std::size_t>(a.spec->rank) + k];
        x = mod_into(-x, a.spec->torsion[k]);
      }
      break;
    }
    case GroupKind::FreeProductZ2Z2:
      // Letters are involutions, so the inverse is the reversed word.
      r.word.assign(a.word.rbegin(), a.word.rend());
      break;
    case GroupKind::FreeGroup: {
      for (auto it = a.word.rbegin(); it != a.word.rend(); ++it) {
        const char ch = *it;
        r.word.push_back(std::isupper(ch) ? static_cast<char>(std::tolower(ch))
                                          : static_cast<char>(std::toupper(ch)));
      }
      break;
    }
    case GroupKind::FiniteTable: {
      const int n = static_cast<int>(a.spec->table.size());
      for (int j = 0; j < n; ++j)
        if (a.spec->table[static_cast<std::size_t>(a.index)][static_cast<std::size_t>(j)] == 0) {
          r.index = j;
          break;
        }
      break;
    }
  }
  return r;
}

bool is_identity(const GroupElement& a) { return a == identity(a.spec); }

GroupElement power(const GroupElement& a, std::int64_t n) {
  GroupElement base = n < 0 ? inv(a) : a;
  std::int64_t k = n < 0 ? -n : n;
  GroupElement acc = identity(a.spec);
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

std::int64_t pseudonorm(const GroupElement& g) {
  switch (g.spec->kind) {
    case GroupKind::FgAbelian: {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < static_cast<std::size_t>(g.spec->rank); ++i)
        s += std::abs(g.vec[i]);
      for (std::size_t k = 0; k < g.spec->torsion.size(); ++k) {
        const std::int64_t n = g.spec->torsion[k];
        const std::int64_t x = g.vec[static_cast<std::size_t>(g.spec->rank) + k];
        s += std::min(x, n - x);
      }
      return s;
    }
    case GroupKind::FreeGroup: {
      // Abelianize, then take the l1 norm of the exponent vector.
      std::vector<std::int64_t> e(static_cast<std::size_t>(g.spec->free_generators), 0);
      for (char ch : g.word) {
        const int i = std::tolower(ch) - 'a';
        e[static_cast<std::size_t>(i)] += std::isupper(ch) ? -1 : 1;
      }
      std::int64_t s = 0;
      for (auto x : e) s += std::abs(x);
      return s;
    }
    case GroupKind::FreeProductZ2Z2:
      throw NoNontrivialPseudonorm(
          "Z/2 * Z/2 admits no nontrivial pseudonorm; recode into a cyclic subgroup first");
    case GroupKind::FiniteTable:
      throw NoNontrivialPseudonorm("no designated pseudonorm for table groups");
  }
  return 0;
}

std::optional<std::int64_t> z2z2_power_of_vh(const GroupElement& w) {
  require(w.spec->kind == GroupKind::FreeProductZ2Z2, "not a Z/2 * Z/2 element");
  const std::string& s = w.word;
  if (s.empty()) return 0;
  if (s.size() % 2 != 0) return std::nullopt;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2)
    if (s[i] != s[0] || s[i + 1] == s[0]) return std::nullopt;
  const std::int64_t m = static_cast<std::int64_t>(s.size() / 2);
  return s[0] == 'v' ? m : -m;
}

std::vector<GroupElement> all_elements(const GroupSpecPtr& spec) {
  std::vector<GroupElement> out;
  if (spec->kind == GroupKind::FiniteTable) {
    for (int i = 0; i < static_cast<int>(spec->table.size()); ++i)
      out.push_back(table_element(spec, i));
    return out;
  }
  require(spec->kind == GroupKind::FgAbelian && spec->rank == 0,
          "all_elements requires a finite group");
  std::vector<std::int64_t> coords(spec->torsion.size(), 0);
  while (true) {
    out.push_back(abelian_element(spec, coords));
    std::size_t k = 0;
    while (k < coords.size()) {
      if (++coords[k] < spec->torsion[k]) break;
      coords[k] = 0;
      ++k;
    }
    if (k == coords.size()) break;
    if (coords.empty()) break;
  }
  return out;
}

namespace {

/// G/nG for finitely generated abelian G: (Z/n)^rank + sum Z/gcd(n, m_j).
std::vector<BigInt> quotient_by_multiples(const FgAbelianGroup& G, const BigInt& n,
                                          std::int64_t* extra_rank) {
  std::vector<BigInt> orders;
  *extra_rank = 0;
  for (std::int64_t i = 0; i < G.rank; ++i) orders.push_back(n);
  for (const auto& m : G.torsion) orders.push_back(big_gcd(n, m));
  return orders;
}

}  // namespace

FgAbelianGroup ext_group(const FgAbelianGroup& H, const FgAbelianGroup& G) {
  std::vector<BigInt> orders;
  for (const auto& n : H.torsion) {
    std::int64_t dummy = 0;
    auto q = quotient_by_multiples(G, n, &dummy);
    orders.insert(orders.end(), q.begin(), q.end());
  }
  return canonical_cyclic_sum(0, std::move(orders));
}

FgAbelianGroup hom_group(const FgAbelianGroup& H, const FgAbelianGroup& G) {
  // Hom(Z, G) = G; Hom(Z/n, G) = n-torsion of G = sum Z/gcd(n, m_j).
  std::int64_t rank = H.rank * G.rank;
  std::vector<BigInt> orders;
  for (std::int64_t i = 0; i < H.rank; ++i)
    for (const auto& m : G.torsion) orders.push_back(m);
  for (const auto& n : H.torsion)
    for (const auto& m : G.torsion) orders.push_back(big_gcd(n, m));
  return canonical_cyclic_sum(rank, std::move(orders));
}

FgAbelianGroup tensor_group(const FgAbelianGroup& H, const FgAbelianGroup& G) {
  std::int64_t rank = H.rank * G.rank;
  std::vector<BigInt> orders;
  for (std::int64_t i = 0; i < H.rank; ++i)
    for (const auto& m : G.torsion) orders.push_back(m);
  for (const auto& n : H.torsion) {
    for (std::int64_t i = 0; i < G.rank; ++i) orders.push_back(n);
    for (const auto& m : G.torsion) orders.push_back(big_gcd(n, m));
  }
  return canonical_cyclic_sum(rank, std::move(orders));
}

IntegerMatrix IntegerMatrix::identity(std::int64_t n) {
  IntegerMatrix m(n, n);
  for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntegerMatrix matmul(const IntegerMatrix& a, const IntegerMatrix& b) {
  require(a.cols == b.rows, "matmul shape mismatch");
  IntegerMatrix r(a.rows, b.cols);
  for (std::int64_t i = 0; i < a.rows; ++i)
    for (std::int64_t k = 0; k < a.cols; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::int64_t j = 0; j < b.cols; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

BigInt determinant(const IntegerMatrix& m) {
  require(m.rows == m.cols, "determinant of non-square matrix");
  IntegerMatrix a = m;
  const std::int64_t n = a.rows;
  BigInt prev = 1;
  int sign = 1;
  for (std::int64_t k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      std::int64_t p = -1;
      for (std::int64_t i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (std::int64_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
      sign = -sign;
    }
    for (std::int64_t i = k + 1; i < n; ++i)
      for (std::int64_t j = k + 1; j < n; ++j)
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

namespace {

struct SnfWorker {
  IntegerMatrix S, U, V;

  explicit SnfWorker(const IntegerMatrix& M)
      : S(M), U(IntegerMatrix::identity(M.rows)), V(IntegerMatrix::identity(M.cols)) {}

  void swap_rows(std::int64_t a, std::int64_t b) {
    if (a == b) return;
    for (std::int64_t j = 0; j < S.cols; ++j) std::swap(S.at(a, j), S.at(b, j));
    for (std::int64_t j = 0; j < U.cols; ++j) std::swap(U.at(a, j), U.at(b, j));
  }
  void swap_cols(std::int64_t a, std::int64_t b) {
    if (a == b) return;
    for (std::int64_t i = 0; i < S.rows; ++i) std::swap(S.at(i, a), S.at(i, b));
    for (std::int64_t i = 0; i < V.rows; ++i) std::swap(V.at(i, a), V.at(i, b));
  }
  void add_row(std::int64_t dst, std::int64_t src, const BigInt& k) {  // row dst += k * row src
    if (k == 0) return;
    for (std::int64_t j = 0; j < S.cols; ++j) S.at(dst, j) += k * S.at(src, j);
    for (std::int64_t j = 0; j < U.cols; ++j) U.at(dst, j) += k * U.at(src, j);
  }
  void add_col(std::int64_t dst, std::int64_t src, const BigInt& k) {  // col dst += k * col src
    if (k == 0) return;
    for (std::int64_t i = 0; i < S.rows; ++i) S.at(i, dst) += k * S.at(i, src);
    for (std::int64_t i = 0; i < V.rows; ++i) V.at(i, dst) += k * V.at(i, src);
  }
  void negate_row(std::int64_t r) {
    for (std::int64_t j = 0; j < S.cols; ++j) S.at(r, j) = -S.at(r, j);
    for (std::int64_t j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
  }

  // Moves a minimal-magnitude nonzero entry of S[t.., t..] to (t, t).
  bool pivot_to(std::int64_t t) {
    std::int64_t bi = -1, bj = -1;
    BigInt best = 0;
    for (std::int64_t i = t; i < S.rows; ++i)
      for (std::int64_t j = t; j < S.cols; ++j) {
        BigInt a = S.at(i, j) < 0 ? BigInt(-S.at(i, j)) : S.at(i, j);
        if (a != 0 && (bi < 0 || a < best)) {
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    const std::int64_t n = std::min(S.rows, S.cols);
    for (std::int64_t t = 0; t < n; ++t) {
      if (!pivot_to(t)) break;
      bool clean = false;
      while (!clean) {
        clean = true;
        for (std::int64_t i = t + 1; i < S.rows; ++i) {
          if (S.at(i, t) == 0) continue;
          BigInt q = S.at(i, t) / S.at(t, t);
          add_row(i, t, -q);
          if (S.at(i, t) != 0) {
            swap_rows(t, i);
            clean = false;
          }
        }
        for (std::int64_t j = t + 1; j < S.cols; ++j) {
          if (S.at(t, j) == 0) continue;
          BigInt q = S.at(t, j) / S.at(t, t);
          add_col(j, t, -q);
          if (S.at(t, j) != 0) {
            swap_cols(t, j);
            clean = false;
          }
        }
        if (!clean) continue;
        // Enforce divisibility of every remaining entry by the pivot.
        for (std::int64_t i = t + 1; i < S.rows && clean; ++i)
          for (std::int64_t j = t + 1; j < S.cols && clean; ++j)
            if (S.at(i, j) % S.at(t, t) != 0) {
              add_row(t, i, 1);
              clean = false;
            }
      }
      if (S.at(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

SmithResult smith_normal_form(const IntegerMatrix& M) {
  SnfWorker w(M);
  w.run();
  return SmithResult{std::move(w.S), std::move(w.U), std::move(w.V)};
}

FgAbelianGroup cokernel(const IntegerMatrix& M) {
  SmithResult snf = smith_normal_form(M);
  const std::int64_t n = std::min(M.rows, M.cols);
  std::int64_t rank_m = 0;
  std::vector<BigInt> torsion;
  for (std::int64_t i = 0; i < n; ++i) {
    const BigInt& s = snf.S.at(i, i);
    if (s == 0) break;
    ++rank_m;
    if (s > 1) torsion.push_back(s);
  }
  return canonical_cyclic_sum(M.rows - rank_m, std::move(torsion));
}

IntegerMatrix kernel_basis(const IntegerMatrix& M) {
  SmithResult snf = smith_normal_form(M);
  const std::int64_t n = std::min(M.rows, M.cols);
  std::int64_t r = 0;
  while (r < n && snf.S.at(r, r) != 0) ++r;
  IntegerMatrix K(M.cols, M.cols - r);
  for (std::int64_t i = 0; i < M.cols; ++i)
    for (std::int64_t j = r; j < M.cols; ++j) K.at(i, j - r) = snf.V.at(i, j);
  return K;
}

std::int64_t matrix_rank(const IntegerMatrix& M) {
  SmithResult snf = smith_normal_form(M);
  const std::int64_t n = std::min(M.rows, M.cols);
  std::int64_t r = 0;
  while (r < n && snf.S.at(r, r) != 0) ++r;
  return r;
}

std::int64_t matrix_rank_mod_p(const IntegerMatrix& M, std::int64_t p) {
  require(p >= 2, "modulus must be >= 2");
  if (p == 2) {
    // Packed GF(2) elimination.
    const std::int64_t words = (M.cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(
        static_cast<std::size_t>(M.rows),
        std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
    for (std::int64_t i = 0; i < M.rows; ++i)
      for (std::int64_t j = 0; j < M.cols; ++j)
        if (M.at(i, j) % 2 != 0)
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j / 64)] ^=
              (std::uint64_t{1} << (j % 64));
    std::int64_t rank = 0;
    for (std::int64_t col = 0; col < M.cols && rank < M.rows; ++col) {
      const std::size_t w = static_cast<std::size_t>(col / 64);
      const std::uint64_t bit = std::uint64_t{1} << (col % 64);
      std::int64_t pivot = -1;
      for (std::int64_t i = rank; i < M.rows; ++i)
        if (rows[static_cast<std::size_t>(i)][w] & bit) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
      for (std::int64_t i = 0; i < M.rows; ++i) {
        if (i == rank) continue;
        if (rows[static_cast<std::size_t>(i)][w] & bit)
          for (std::int64_t k = 0; k < words; ++k)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ^=
                rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
      }
      ++rank;
    }
    return rank;
  }
  // Generic small prime.
  std::vector<std::vector<std::int64_t>> a(
      static_cast<std::size_t>(M.rows),
      std::vector<std::int64_t>(static_cast<std::size_t>(M.cols), 0));
  for (std::int64_t i = 0; i < M.rows; ++i)
    for (std::int64_t j = 0; j < M.cols; ++j) {
      BigInt v = M.at(i, j) % p;
      if (v < 0) v += p;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v.convert_to<std::int64_t>();
    }
  auto mod_inv = [p](std::int64_t x) {
    std::int64_t r = 1, b = x % p, e = p - 2;  // Fermat (p prime)
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::int64_t rank = 0;
  for (std::int64_t col = 0; col < M.cols && rank < M.rows; ++col) {
    std::int64_t pivot = -1;
    for (std::int64_t i = rank; i < M.rows; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    const std::int64_t iv = mod_inv(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)]);
    for (std::int64_t j = col; j < M.cols; ++j)
      a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
          a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] * iv % p;
    for (std::int64_t i = 0; i < M.rows; ++i) {
      if (i == rank) continue;
      const std::int64_t f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (std::int64_t j = col; j < M.cols; ++j) {
        auto& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        x = (x - f * a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] % p + p * p) % p;
      }
    }
    ++rank;
  }
  return rank;
}

FgAbelianGroup homology_of_pair(const IntegerMatrix& d_in, const IntegerMatrix& d_out) {
  require(d_in.rows == d_out.cols, "homology_of_pair: shape mismatch");
  {
    IntegerMatrix comp = matmul(d_out, d_in);
    for (const auto& x : comp.data) require(x == 0, "d_out * d_in != 0");
  }
  // Kernel of d_out: the trailing columns of V form a basis of a saturated
  // sublattice, so coordinates of kernel vectors in this basis are integral.
  IntegerMatrix K = kernel_basis(d_out);
  const std::int64_t k = K.cols;
  if (k == 0) return FgAbelianGroup{};
  // Express the columns of d_in in kernel coordinates via the SNF of K
  // (diagonal entries are all 1 because the basis extends to a basis of Z^n).
  SmithResult snf = smith_normal_form(K);
  IntegerMatrix Ub = matmul(snf.U, d_in);  // S * (V^{-1} x) = U b
  IntegerMatrix X(k, d_in.cols);
  for (std::int64_t j = 0; j < d_in.cols; ++j) {
    std::vector<BigInt> y(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
      const BigInt& s = snf.S.at(i, i);
      require(s != 0 && Ub.at(i, j) % s == 0, "image not contained in kernel");
      y[static_cast<std::size_t>(i)] = Ub.at(i, j) / s;
    }
    for (std::int64_t i = k; i < Ub.rows; ++i)
      require(Ub.at(i, j) == 0, "image not contained in kernel");
    for (std::int64_t i = 0; i < k; ++i) {
      BigInt acc = 0;
      for (std::int64_t l = 0; l < k; ++l) acc += snf.V.at(i, l) * y[static_cast<std::size_t>(l)];
      X.at(i, j) = acc;
    }
  }
  return cokernel(X);
}

FgAbelianGroup homology_of_pair_with_coefficients(const IntegerMatrix& d_in,
                                                  const IntegerMatrix& d_out,
                                                  const FgAbelianGroup& G) {
  const FgAbelianGroup H = homology_of_pair(d_in, d_out);
  // H (x) G part.
  FgAbelianGroup tens = tensor_group(H, G);
  // Tor(H_prev, G): the torsion of the previous homology group equals the
  // Smith diagonal entries (> 1) of d_out, because ker(boundary below) is
  // saturated.  Tor(Z/s, G) = s-torsion of G.
  SmithResult snf = smith_normal_form(d_out);
  std::vector<BigInt> orders;
  const std::int64_t n = std::min(d_out.rows, d_out.cols);
  for (std::int64_t i = 0; i < n; ++i) {
    const BigInt& s = snf.S.at(i, i);
    if (s > 1)
      for (const auto& m : G.torsion) orders.push_back(big_gcd(s, m));
  }
  for (const auto& t : tens.torsion) orders.push_back(t);
  return canonical_cyclic_sum(tens.rank, std::move(orders));
}

}  // namespace defectlab
