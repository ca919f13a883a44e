/**
 * \file groups.hpp
 *
 * \brief Exact arithmetic in the coefficient groups used by the library:
 *        finitely generated abelian groups, the infinite dihedral free
 *        product Z/2 * Z/2, free groups, and finite groups given by a
 *        multiplication table.  Also: pseudonorms, Ext groups, Smith normal
 *        form of integer matrices, and homology of a pair of matrices.
 */

#ifndef DEFECTLAB_GROUPS_HPP_
#define DEFECTLAB_GROUPS_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace defectlab {

using BigInt = boost::multiprecision::cpp_int;

enum class GroupKind { FgAbelian, FreeProductZ2Z2, FreeGroup, FiniteTable };

/// Isomorphism type of a finitely generated abelian group:
/// Z^rank + Z/t_1 + ... + Z/t_K with the divisor chain t_1 | t_2 | ... .
struct FgAbelianGroup {
  std::int64_t rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, divisor chain

  bool operator==(const FgAbelianGroup&) const = default;
  bool trivial() const { return rank == 0 && torsion.empty(); }
  /// Order for finite groups; nullopt when rank > 0.
  std::optional<BigInt> order() const;
  std::string to_string() const;  // e.g. "Z^2 + Z/2 + Z/6", "0"
};

/// Canonical divisor-chain form of a direct sum of cyclic groups with the
/// given orders (entries <= 1 are dropped).
FgAbelianGroup canonical_cyclic_sum(std::int64_t rank, std::vector<BigInt> orders);

/// Description of a concrete group for element-level arithmetic.
struct GroupSpec {
  GroupKind kind = GroupKind::FgAbelian;
  // FgAbelian: free rank and torsion orders (not necessarily a chain).
  std::int64_t rank = 0;
  std::vector<std::int64_t> torsion;
  // FreeGroup: number of generators (named a, b, c, ...).
  int free_generators = 0;
  // FiniteTable: table[i][j] = index of element i * j; identity has index 0.
  std::vector<std::vector<int>> table;

  bool operator==(const GroupSpec&) const = default;
  /// Validates invariants (torsion >= 2; FiniteTable is a group).
  void validate() const;
};

using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

GroupSpecPtr make_fg_abelian(std::int64_t rank, std::vector<std::int64_t> torsion = {});
GroupSpecPtr make_z();          // infinite cyclic
GroupSpecPtr make_z2z2();       // Z/2 * Z/2 with generators v, h
GroupSpecPtr make_free_group(int generators);
GroupSpecPtr make_finite_table(std::vector<std::vector<int>> table);

/// An element of a group described by a GroupSpec.  The payload in use
/// depends on the spec kind; elements are kept in canonical/reduced form.
struct GroupElement {
  GroupSpecPtr spec;
  std::vector<std::int64_t> vec;  // FgAbelian: free coords then torsion coords
  std::string word;               // FreeProductZ2Z2: letters 'v','h' (reduced);
                                  // FreeGroup: 'a'..'z' with 'A'..'Z' inverses
  int index = 0;                  // FiniteTable

  bool operator==(const GroupElement& o) const;
  std::string to_string() const;
};

GroupElement identity(const GroupSpecPtr& spec);
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
bool is_identity(const GroupElement& a);
GroupElement power(const GroupElement& a, std::int64_t n);

/// Element constructors.
GroupElement abelian_element(const GroupSpecPtr& spec, std::vector<std::int64_t> coords);
GroupElement word_element(const GroupSpecPtr& spec, const std::string& word);
GroupElement table_element(const GroupSpecPtr& spec, int index);

/// Conjugation-invariant subadditive pseudonorm.
///  - FgAbelian: sum of |free coords| plus sum of min(t, n-t) per torsion coord;
///  - FreeGroup: abelianize, then the FgAbelian norm;
///  - FreeProductZ2Z2: throws NoNontrivialPseudonorm (callers recode first);
///  - FiniteTable: throws NoNontrivialPseudonorm.
std::int64_t pseudonorm(const GroupElement& g);

struct NoNontrivialPseudonorm : std::domain_error {
  using std::domain_error::domain_error;
};

/// If w lies in the infinite cyclic subgroup generated by "vh" in Z/2 * Z/2,
/// returns the exponent m with w = (vh)^m; otherwise nullopt.
std::optional<std::int64_t> z2z2_power_of_vh(const GroupElement& w);

/// All elements of a finite group spec (FgAbelian rank 0 or FiniteTable).
std::vector<GroupElement> all_elements(const GroupSpecPtr& spec);

/// Ext(H, G) = direct sum over the torsion orders n of H of G/nG,
/// in canonical divisor-chain form.  Ext(Z^R, G) = 0.
FgAbelianGroup ext_group(const FgAbelianGroup& H, const FgAbelianGroup& G);

/// Hom(H, G) for finitely generated abelian H, G:
/// G^rank(H) + sum over torsion orders n of H of the n-torsion subgroup of G.
FgAbelianGroup hom_group(const FgAbelianGroup& H, const FgAbelianGroup& G);

/// Tensor product H (x) G of finitely generated abelian groups.
FgAbelianGroup tensor_group(const FgAbelianGroup& H, const FgAbelianGroup& G);

/// Dense exact integer matrix.
struct IntegerMatrix {
  std::int64_t rows = 0, cols = 0;
  std::vector<BigInt> data;  // row-major

  IntegerMatrix() = default;
  IntegerMatrix(std::int64_t r, std::int64_t c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c)) {}
  BigInt& at(std::int64_t i, std::int64_t j) { return data[static_cast<std::size_t>(i * cols + j)]; }
  const BigInt& at(std::int64_t i, std::int64_t j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
  static IntegerMatrix identity(std::int64_t n);
  bool operator==(const IntegerMatrix&) const = default;
};

IntegerMatrix matmul(const IntegerMatrix& a, const IntegerMatrix& b);
BigInt determinant(const IntegerMatrix& m);  // square matrices (Bareiss)

/// Smith normal form: S = U * M * V with U, V unimodular and S diagonal with
/// a divisor chain s_1 | s_2 | ... (nonnegative diagonal).
struct SmithResult {
  IntegerMatrix S, U, V;
};
SmithResult smith_normal_form(const IntegerMatrix& M);

/// Isomorphism type of coker(M) = Z^rows / column span of M.
FgAbelianGroup cokernel(const IntegerMatrix& M);

/// A basis of ker(M) (as columns of the returned matrix).
IntegerMatrix kernel_basis(const IntegerMatrix& M);

/// Rank of M over Z (equivalently over Q).
std::int64_t matrix_rank(const IntegerMatrix& M);

/// Rank of M over the field Z/p (p prime).
std::int64_t matrix_rank_mod_p(const IntegerMatrix& M, std::int64_t p);

/// Homology ker(d_out) / im(d_in) over Z.  Requires d_out * d_in = 0.
/// d_in maps into the common space Z^n (n = d_out.cols = d_in.rows).
FgAbelianGroup homology_of_pair(const IntegerMatrix& d_in, const IntegerMatrix& d_out);

/// Homology of the same pair with coefficients in a finitely generated
/// abelian group G, via H (x) G + Tor(H_prev, G), where the torsion of the
/// previous homology group is read off the Smith normal form of d_out.
FgAbelianGroup homology_of_pair_with_coefficients(const IntegerMatrix& d_in,
                                                  const IntegerMatrix& d_out,
                                                  const FgAbelianGroup& G);

}  // namespace defectlab

#endif  // DEFECTLAB_GROUPS_HPP_
