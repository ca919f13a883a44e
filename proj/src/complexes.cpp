#include "defectlab/complexes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace defectlab {

namespace {

std::string node_key(int tile, const CubicCell& cell) {
  std::ostringstream os;
  os << tile << '|';
  for (std::int64_t c : cell.base.c) os << c << ',';
  os << '|';
  for (int a : cell.axes) os << a << ',';
  return os.str();
}

// All cells of the unit cube [0,1]^D: ascending axis subsets with base
// offsets in {0,1}^D vanishing on the spanned axes.
std::vector<CubicCell> cube_cells(int D, int dim) {
  std::vector<CubicCell> out;
  std::vector<int> axes;
  std::function<void(int)> pick = [&](int start) {
    if (static_cast<int>(axes.size()) == dim) {
      std::vector<int> free_axes;
      for (int a = 0; a < D; ++a)
        if (std::find(axes.begin(), axes.end(), a) == axes.end()) free_axes.push_back(a);
      const std::size_t nfree = free_axes.size();
      for (std::size_t bits = 0; bits < (std::size_t{1} << nfree); ++bits) {
        Site base = Site::zero(D);
        for (std::size_t i = 0; i < nfree; ++i)
          if (bits & (std::size_t{1} << i)) base.c[static_cast<std::size_t>(free_axes[i])] = 1;
        out.push_back(CubicCell{base, axes});
      }
      return;
    }
    for (int a = start; a < D; ++a) {
      axes.push_back(a);
      pick(a + 1);
      axes.pop_back();
    }
  };
  pick(0);
  std::sort(out.begin(), out.end());
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::int64_t TileComplex::cell_class(int d, int tile, const CubicCell& cell) const {
  auto it = index.find({d, node_key(tile, cell)});
  if (it == index.end()) throw std::out_of_range("TileComplex::cell_class: unknown cell");
  return it->second;
}

std::int64_t TileComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = 0; d <= D; ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(cells[static_cast<std::size_t>(d)].size());
  return chi;
}

TileComplex build_tile_complex(const WangTileSet& tiles) {
  TileComplex tc;
  tc.D = tiles.D;
  const int T = tiles.ntiles();
  tc.cells.resize(static_cast<std::size_t>(tc.D) + 1);
  tc.bnd.resize(static_cast<std::size_t>(tc.D) + 1);

  for (int dim = 0; dim <= tc.D; ++dim) {
    const auto shapes = cube_cells(tc.D, dim);
    // Node ids: tile * shapes.size() + shape index.
    std::map<CubicCell, std::size_t> shape_index;
    for (std::size_t i = 0; i < shapes.size(); ++i) shape_index.emplace(shapes[i], i);
    UnionFind uf(static_cast<std::size_t>(T) * shapes.size());
    auto node = [&](int tile, const CubicCell& cell) {
      return static_cast<std::size_t>(tile) * shapes.size() + shape_index.at(cell);
    };
    for (int axis = 0; axis < tc.D; ++axis) {
      for (const auto& [a, b] : tiles.match[static_cast<std::size_t>(axis)]) {
        for (const CubicCell& cell : shapes) {
          if (cell.base.c[static_cast<std::size_t>(axis)] != 1) continue;
          CubicCell lower = cell;
          lower.base.c[static_cast<std::size_t>(axis)] = 0;
          uf.unite(node(a, cell), node(b, lower));
        }
      }
    }
    // Enumerate classes in deterministic order.
    std::map<std::size_t, std::int64_t> root_class;
    for (int t = 0; t < T; ++t) {
      for (const CubicCell& cell : shapes) {
        const std::size_t root = uf.find(node(t, cell));
        auto [it, inserted] = root_class.emplace(root, static_cast<std::int64_t>(tc.cells[static_cast<std::size_t>(dim)].size()));
        if (inserted) tc.cells[static_cast<std::size_t>(dim)].push_back(CellRef{t, cell});
        tc.index[{dim, node_key(t, cell)}] = it->second;
      }
    }
  }

  for (int dim = 1; dim <= tc.D; ++dim) {
    const auto& upper = tc.cells[static_cast<std::size_t>(dim)];
    const auto& lower = tc.cells[static_cast<std::size_t>(dim) - 1];
    IntegerMatrix m(static_cast<std::int64_t>(lower.size()), static_cast<std::int64_t>(upper.size()));
    for (std::size_t j = 0; j < upper.size(); ++j) {
      const Chain faces = boundary_of_cell(upper[j].cell);
      for (const auto& [face, coeff] : faces.terms)
        m.at(tc.cell_class(dim - 1, upper[j].tile, face), static_cast<std::int64_t>(j)) += coeff;
    }
    tc.bnd[static_cast<std::size_t>(dim)] = std::move(m);
  }
  tc.bnd[0] = IntegerMatrix(1, static_cast<std::int64_t>(tc.cells[0].size()));  // zero map
  return tc;
}

namespace {

IntegerMatrix boundary_in(const TileComplex& tc, int d) {
  if (d >= tc.D) {
    // No cells above the top dimension: zero map into C_d.
    return IntegerMatrix(static_cast<std::int64_t>(tc.cells[static_cast<std::size_t>(d)].size()), 1);
  }
  return tc.bnd[static_cast<std::size_t>(d) + 1];
}

IntegerMatrix boundary_out(const TileComplex& tc, int d) {
  if (d == 0) return IntegerMatrix(1, static_cast<std::int64_t>(tc.cells[0].size()));
  return tc.bnd[static_cast<std::size_t>(d)];
}

bool is_integers(const FgAbelianGroup& g) { return g.rank == 1 && g.torsion.empty(); }

IntegerMatrix transpose(const IntegerMatrix& m) {
  IntegerMatrix t(m.cols, m.rows);
  for (std::int64_t i = 0; i < m.rows; ++i)
    for (std::int64_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

}  // namespace

FgAbelianGroup tile_homology(const TileComplex& tc, int d, const FgAbelianGroup& coefficients) {
  if (d < 0 || d > tc.D) return FgAbelianGroup{};
  const IntegerMatrix d_in = boundary_in(tc, d);
  const IntegerMatrix d_out = boundary_out(tc, d);
  if (is_integers(coefficients)) return homology_of_pair(d_in, d_out);
  return homology_of_pair_with_coefficients(d_in, d_out, coefficients);
}

FgAbelianGroup tile_homology(const TileComplex& tc, int d) {
  return tile_homology(tc, d, FgAbelianGroup{1, {}});
}

FgAbelianGroup tile_cohomology(const TileComplex& tc, int d, const FgAbelianGroup& coefficients) {
  if (d < 0 || d > tc.D) return FgAbelianGroup{};
  const FgAbelianGroup hd = tile_homology(tc, d);
  FgAbelianGroup out = hom_group(hd, coefficients);
  if (d >= 1) {
    const FgAbelianGroup hprev = tile_homology(tc, d - 1);
    const FgAbelianGroup ext = ext_group(hprev, coefficients);
    std::vector<BigInt> orders;
    for (const BigInt& t : out.torsion) orders.push_back(t);
    for (const BigInt& t : ext.torsion) orders.push_back(t);
    out = canonical_cyclic_sum(out.rank + ext.rank, std::move(orders));
  }
  return out;
}

std::vector<BigInt> AbelianizedTileGroup::project(const std::vector<BigInt>& colour_vector) const {
  if (static_cast<std::int64_t>(colour_vector.size()) != ncolours)
    throw std::invalid_argument("project: colour vector length mismatch");
  std::vector<BigInt> out;
  for (const auto& row : torsion_rows) {
    BigInt v = 0;
    for (std::size_t i = 0; i < row.size(); ++i) v += row[i] * colour_vector[i];
    out.push_back(v);
  }
  for (std::size_t k = 0; k < torsion_rows.size(); ++k) {
    const BigInt m = torsion_orders[k];
    out[k] = ((out[k] % m) + m) % m;
  }
  for (const auto& row : free_rows) {
    BigInt v = 0;
    for (std::size_t i = 0; i < row.size(); ++i) v += row[i] * colour_vector[i];
    out.push_back(v);
  }
  return out;
}

AbelianizedTileGroup conway_lagarias_abelianized(const WangTileSet& tiles) {
  if (tiles.D != 2)
    throw std::invalid_argument("conway_lagarias_abelianized: two-dimensional tile sets only");
  const TileComplex tc = build_tile_complex(tiles);
  const std::int64_t m = static_cast<std::int64_t>(tc.cells[1].size());  // edge colours
  const int T = tiles.ntiles();

  // Per-axis balance constraints: the exponents of all horizontal-edge
  // colours sum to zero, likewise vertical.
  IntegerMatrix kappa(2, m);
  for (std::int64_t c = 0; c < m; ++c) {
    const int axis = tc.cells[1][static_cast<std::size_t>(c)].cell.axes[0];
    kappa.at(axis, c) = 1;
  }
  const IntegerMatrix K = kernel_basis(kappa);  // m x k, saturated

  // Tile relations south + east - north - west inside the colour lattice.
  IntegerMatrix rel(m, T);
  for (int t = 0; t < T; ++t) {
    auto cls = [&](const CubicCell& cell) { return tc.cell_class(1, t, cell); };
    const CubicCell south{Site({0, 0}), {0}};
    const CubicCell north{Site({0, 1}), {0}};
    const CubicCell west{Site({0, 0}), {1}};
    const CubicCell east{Site({1, 0}), {1}};
    rel.at(cls(south), t) += 1;
    rel.at(cls(east), t) += 1;
    rel.at(cls(north), t) -= 1;
    rel.at(cls(west), t) -= 1;
  }

  // Relations lie inside ker(kappa); express them in the kernel basis.
  const SmithResult ks = smith_normal_form(K);
  const std::int64_t k = K.cols;
  auto solve_in_kernel = [&](const std::vector<BigInt>& v) {
    // K y = v via the Smith form S = U K V: y = V S^+ U v.
    std::vector<BigInt> uv(static_cast<std::size_t>(ks.U.rows));
    for (std::int64_t i = 0; i < ks.U.rows; ++i) {
      BigInt s = 0;
      for (std::int64_t j = 0; j < ks.U.cols; ++j) s += ks.U.at(i, j) * v[static_cast<std::size_t>(j)];
      uv[static_cast<std::size_t>(i)] = s;
    }
    std::vector<BigInt> w(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
      const BigInt s = ks.S.at(i, i);
      if (s == 0) {
        if (uv[static_cast<std::size_t>(i)] != 0)
          throw std::invalid_argument("vector outside the balanced-colour lattice");
        w[static_cast<std::size_t>(i)] = 0;
      } else {
        if (uv[static_cast<std::size_t>(i)] % s != 0)
          throw std::invalid_argument("vector outside the balanced-colour lattice");
        w[static_cast<std::size_t>(i)] = uv[static_cast<std::size_t>(i)] / s;
      }
    }
    for (std::int64_t i = k; i < ks.S.rows; ++i)
      if (uv[static_cast<std::size_t>(i)] != 0)
        throw std::invalid_argument("vector outside the balanced-colour lattice");
    std::vector<BigInt> y(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i) {
      BigInt s = 0;
      for (std::int64_t j = 0; j < k; ++j) s += ks.V.at(i, j) * w[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = s;
    }
    return y;
  };

  IntegerMatrix X(k, T);
  for (int t = 0; t < T; ++t) {
    std::vector<BigInt> v(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = rel.at(i, t);
    const auto y = solve_in_kernel(v);
    for (std::int64_t i = 0; i < k; ++i) X.at(i, t) = y[static_cast<std::size_t>(i)];
  }

  AbelianizedTileGroup out;
  out.ncolours = m;
  out.group = cokernel(X);
  const SmithResult xs = smith_normal_form(X);
  const std::int64_t rdiag = std::min(xs.S.rows, xs.S.cols);
  // Quotient coordinates of a balanced colour vector v: write v = K y, then
  // take U_X y.  Because the kernel basis is saturated (all Smith invariants
  // of K equal 1), M = V_K S^+ U_K is an integral left inverse of K on the
  // balanced sublattice, so the composite U_X M is a single integer matrix.
  for (std::int64_t i = 0; i < k; ++i)
    if (ks.S.at(i, i) != 1)
      throw std::logic_error("kernel basis not saturated");
  IntegerMatrix M(k, m);
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = 0; j < m; ++j) {
      BigInt s = 0;
      for (std::int64_t l = 0; l < k; ++l) s += ks.V.at(i, l) * ks.U.at(l, j);
      M.at(i, j) = s;
    }
  const IntegerMatrix Q = matmul(xs.U, M);  // quotient coordinates of colour vectors
  for (std::int64_t i = 0; i < k; ++i) {
    std::vector<BigInt> row(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = Q.at(i, j);
    const BigInt s = i < rdiag ? xs.S.at(i, i) : BigInt(0);
    if (s == 0) {
      out.free_rows.push_back(std::move(row));
    } else if (s > 1) {
      out.torsion_rows.push_back(std::move(row));
      out.torsion_orders.push_back(static_cast<std::int64_t>(s));
    }  // s == 1: coordinate dies in the quotient
  }
  return out;
}

FgAbelianGroup invariant_cohomology(const SftSpec& spec, std::int64_t r, int d,
                                    const FgAbelianGroup& coefficients) {
  if (r < spec.radius)
    throw std::invalid_argument("invariant_cohomology: r below the spec radius");
  const WangTileSet rep = wang_representation(spec, r);
  const TileComplex tc = build_tile_complex(rep);
  return tile_cohomology(tc, d, coefficients);
}

IntegerMatrix ComplexMap::matrix(int d) const {
  const auto& map_d = cell_map[static_cast<std::size_t>(d)];
  IntegerMatrix m(static_cast<std::int64_t>(target.cells[static_cast<std::size_t>(d)].size()),
                  static_cast<std::int64_t>(source.cells[static_cast<std::size_t>(d)].size()));
  for (std::size_t c = 0; c < map_d.size(); ++c)
    m.at(map_d[c], static_cast<std::int64_t>(c)) += 1;
  return m;
}

bool ComplexMap::is_chain_map() const {
  for (int d = 1; d <= source.D; ++d) {
    const IntegerMatrix lhs = matmul(target.bnd[static_cast<std::size_t>(d)], matrix(d));
    const IntegerMatrix rhs = matmul(matrix(d - 1), source.bnd[static_cast<std::size_t>(d)]);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

namespace {

ComplexMap map_from_tile_map(const WangTileSet& source_tiles, const WangTileSet& target_tiles,
                             const std::vector<int>& tile_map) {
  ComplexMap cm;
  cm.source = build_tile_complex(source_tiles);
  cm.target = build_tile_complex(target_tiles);
  cm.cell_map.resize(static_cast<std::size_t>(cm.source.D) + 1);
  for (int d = 0; d <= cm.source.D; ++d) {
    auto& md = cm.cell_map[static_cast<std::size_t>(d)];
    md.assign(cm.source.cells[static_cast<std::size_t>(d)].size(), 0);
    // Every (tile, cube-cell) pair of the source must map consistently across
    // its glued class.
    std::vector<char> seen(md.size(), 0);
    const auto shapes = cube_cells(cm.source.D, d);
    for (int t = 0; t < source_tiles.ntiles(); ++t) {
      for (const CubicCell& cell : shapes) {
        const std::int64_t src = cm.source.cell_class(d, t, cell);
        const std::int64_t dst = cm.target.cell_class(d, tile_map[static_cast<std::size_t>(t)], cell);
        if (seen[static_cast<std::size_t>(src)] && md[static_cast<std::size_t>(src)] != dst)
          throw std::logic_error("cell map not well-defined on glued classes");
        md[static_cast<std::size_t>(src)] = dst;
        seen[static_cast<std::size_t>(src)] = 1;
      }
    }
  }
  if (!cm.is_chain_map()) throw std::logic_error("induced map is not a chain map");
  return cm;
}

}  // namespace

ComplexMap connecting_map(const SftSpec& spec, std::int64_t r) {
  const WangRepresentation source = wang_representation_with_blocks(spec, r + 1);
  const WangRepresentation target = wang_representation_with_blocks(spec, r);
  std::map<Block, int> target_index;
  for (std::size_t i = 0; i < target.blocks.size(); ++i)
    target_index.emplace(target.blocks[i], static_cast<int>(i));
  std::vector<int> tile_map;
  const auto outer = Box{Site::zero(spec.D), r + 1}.sites();
  const auto inner = Box{Site::zero(spec.D), r}.sites();
  for (const Block& big : source.blocks) {
    Block central;
    central.reserve(inner.size());
    std::map<Site, int> pattern;
    for (std::size_t i = 0; i < outer.size(); ++i) pattern[outer[i]] = big[i];
    for (const Site& s : inner) central.push_back(pattern.at(s));
    tile_map.push_back(target_index.at(central));
  }
  return map_from_tile_map(source.tiles, target.tiles, tile_map);
}

ComplexMap ca_induced_map(const SftSpec& spec, const CaRule& ca, std::int64_t r) {
  const WangRepresentation source = wang_representation_with_blocks(spec, r + ca.radius);
  const WangRepresentation target = wang_representation_with_blocks(spec, r);
  std::map<Block, int> target_index;
  for (std::size_t i = 0; i < target.blocks.size(); ++i)
    target_index.emplace(target.blocks[i], static_cast<int>(i));
  const auto outer = Box{Site::zero(spec.D), r + ca.radius}.sites();
  const auto inner = Box{Site::zero(spec.D), r}.sites();
  std::vector<int> tile_map;
  for (const Block& big : source.blocks) {
    std::map<Site, int> pattern;
    for (std::size_t i = 0; i < outer.size(); ++i) pattern[outer[i]] = big[i];
    Block image;
    std::vector<int> local(ca.neighbourhood.size());
    for (const Site& y : inner) {
      for (std::size_t k = 0; k < ca.neighbourhood.size(); ++k)
        local[k] = pattern.at(y + ca.neighbourhood[k]);
      image.push_back(ca.phi(local));
    }
    auto it = target_index.find(image);
    if (it == target_index.end())
      throw std::invalid_argument("ca_induced_map: rule does not preserve the subshift");
    tile_map.push_back(it->second);
  }
  return map_from_tile_map(source.tiles, target.tiles, tile_map);
}

namespace {

// Dense linear algebra over Z/p.
using ModRow = std::vector<std::int64_t>;
using ModMatrix = std::vector<ModRow>;

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t result = 1, base = ((a % p) + p) % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Column-reduces `m` in place; returns pivot row per column rank order.
std::int64_t mod_rank(ModMatrix m, std::int64_t p) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::int64_t rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    const std::int64_t invp = mod_inverse(m[row][col], p);
    for (std::size_t j = 0; j < cols; ++j) m[row][j] = m[row][j] * invp % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] % p == 0) continue;
      const std::int64_t f = m[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
    }
    ++row;
    ++rank;
  }
  return rank;
}

ModMatrix to_modmatrix(const IntegerMatrix& m, std::int64_t p) {
  ModMatrix out(static_cast<std::size_t>(m.rows), ModRow(static_cast<std::size_t>(m.cols)));
  for (std::int64_t i = 0; i < m.rows; ++i)
    for (std::int64_t j = 0; j < m.cols; ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<std::int64_t>(((m.at(i, j) % p) + p) % p);
  return out;
}

// Nullspace basis (as columns) of m over Z/p.
std::vector<ModRow> mod_nullspace(ModMatrix m, std::int64_t p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::int64_t> pivot_of_col(cols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    const std::int64_t invp = mod_inverse(m[row][col], p);
    for (std::size_t j = 0; j < cols; ++j) m[row][j] = m[row][j] * invp % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] % p == 0) continue;
      const std::int64_t f = m[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
    }
    pivot_of_col[col] = static_cast<std::int64_t>(row);
    ++row;
  }
  std::vector<ModRow> basis;
  for (std::size_t col = 0; col < cols; ++col) {
    if (pivot_of_col[col] != -1) continue;
    ModRow v(cols, 0);
    v[col] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] != -1)
        v[c] = ((-m[static_cast<std::size_t>(pivot_of_col[c])][col]) % p + p) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Greedy extension: columns of `extra` that enlarge the span of `base`.
std::vector<ModRow> extend_basis(const std::vector<ModRow>& base,
                                 const std::vector<ModRow>& extra, std::int64_t p) {
  std::vector<ModRow> chosen;
  auto rank_of = [&](const std::vector<ModRow>& cols) {
    if (cols.empty()) return std::int64_t{0};
    ModMatrix m(cols[0].size(), ModRow(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
    return mod_rank(std::move(m), p);
  };
  std::vector<ModRow> current = base;
  std::int64_t rank = rank_of(current);
  for (const ModRow& v : extra) {
    current.push_back(v);
    const std::int64_t r2 = rank_of(current);
    if (r2 > rank) {
      rank = r2;
      chosen.push_back(v);
    } else {
      current.pop_back();
    }
  }
  return chosen;
}

// Solves A x = b over Z/p where A's columns are `cols`; returns coefficients
// or empty on failure.
std::optional<ModRow> mod_solve(const std::vector<ModRow>& cols, const ModRow& b,
                                std::int64_t p) {
  if (cols.empty()) {
    for (std::int64_t v : b)
      if (v % p != 0) return std::nullopt;
    return ModRow{};
  }
  const std::size_t rows = cols[0].size(), n = cols.size();
  ModMatrix m(rows, ModRow(n + 1));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  for (std::size_t i = 0; i < rows; ++i) m[i][n] = ((b[i] % p) + p) % p;
  std::vector<std::int64_t> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    const std::int64_t invp = mod_inverse(m[row][col], p);
    for (std::size_t j = 0; j <= n; ++j) m[row][j] = m[row][j] * invp % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] % p == 0) continue;
      const std::int64_t f = m[i][col];
      for (std::size_t j = 0; j <= n; ++j)
        m[i][j] = ((m[i][j] - f * m[row][j]) % p + p) % p;
    }
    pivot_of_col[col] = static_cast<std::int64_t>(row);
    ++row;
  }
  ModRow x(n, 0);
  for (std::size_t col = 0; col < n; ++col)
    if (pivot_of_col[col] != -1) x[col] = m[static_cast<std::size_t>(pivot_of_col[col])][n];
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s = (s + x[j] * cols[j][i]) % p;
    if (((s - b[i]) % p + p) % p != 0) return std::nullopt;
  }
  return x;
}

}  // namespace

CohomologyMapModP induced_map_on_cohomology(const ComplexMap& cm, int d, std::int64_t p) {
  CohomologyMapModP out;
  out.p = p;
  out.degree = d;
  auto cohomology_basis = [&](const TileComplex& tc) {
    const IntegerMatrix delta_up = transpose(boundary_in(tc, d));   // C^d -> C^{d+1}
    const IntegerMatrix delta_dn = transpose(boundary_out(tc, d));  // C^{d-1} -> C^d
    const auto cocycles = mod_nullspace(to_modmatrix(delta_up, p), p);
    std::vector<ModRow> cobounds;
    const ModMatrix dn = to_modmatrix(delta_dn, p);
    const std::size_t nd = tc.cells[static_cast<std::size_t>(d)].size();
    for (std::size_t j = 0; j < (dn.empty() ? 0 : dn[0].size()); ++j) {
      ModRow col(nd);
      for (std::size_t i = 0; i < nd; ++i) col[i] = dn[i][j];
      cobounds.push_back(std::move(col));
    }
    const std::vector<ModRow> hbasis = extend_basis(cobounds, cocycles, p);
    return std::make_pair(cobounds, hbasis);
  };
  const auto [cob_t, h_t] = cohomology_basis(cm.target);
  const auto [cob_s, h_s] = cohomology_basis(cm.source);
  out.dim_target = static_cast<std::int64_t>(h_t.size());
  out.dim_source = static_cast<std::int64_t>(h_s.size());
  const auto& map_d = cm.cell_map[static_cast<std::size_t>(d)];
  std::vector<ModRow> columns;  // image of each target basis vector in H^d(source)
  for (const ModRow& f : h_t) {
    ModRow g(cm.source.cells[static_cast<std::size_t>(d)].size(), 0);
    for (std::size_t c = 0; c < map_d.size(); ++c)
      g[c] = f[static_cast<std::size_t>(map_d[c])];
    std::vector<ModRow> solve_cols = cob_s;
    solve_cols.insert(solve_cols.end(), h_s.begin(), h_s.end());
    const auto x = mod_solve(solve_cols, g, p);
    if (!x) throw std::logic_error("pullback of a cocycle is not a cocycle class");
    ModRow coords(h_s.size(), 0);
    for (std::size_t i = 0; i < h_s.size(); ++i) coords[i] = (*x)[cob_s.size() + i];
    columns.push_back(std::move(coords));
  }
  out.matrix.assign(static_cast<std::size_t>(out.dim_source),
                    ModRow(static_cast<std::size_t>(out.dim_target), 0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < columns[j].size(); ++i) out.matrix[i][j] = columns[j][i];
  ModMatrix m = out.matrix;
  out.rank = m.empty() ? 0 : mod_rank(std::move(m), p);
  out.isomorphism = out.rank == out.dim_source && out.rank == out.dim_target;
  return out;
}

std::vector<StabilizationRow> stabilization_scan(const SftSpec& spec, int d, std::int64_t p,
                                                 std::int64_t r_from, std::int64_t r_to) {
  std::vector<StabilizationRow> rows;
  for (std::int64_t r = r_from; r <= r_to; ++r) {
    const ComplexMap cm = connecting_map(spec, r);
    const CohomologyMapModP induced = induced_map_on_cohomology(cm, d, p);
    StabilizationRow row;
    row.r = r;
    row.dim = induced.dim_target;  // H^d at radius r
    row.map_rank = induced.rank;
    row.map_isomorphism = induced.isomorphism;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace defectlab
