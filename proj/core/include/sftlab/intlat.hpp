#ifndef SFTLAB_INTLAT_HPP_
#define SFTLAB_INTLAT_HPP_

// Exact integer linear algebra: Smith and Hermite normal forms, lattice
// membership, finitely generated abelian groups and pointed isomorphism.

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sftlab {

using Integer = mpz_class;
using Rational = mpq_class;

namespace intlat {

/// Dense row-major matrix of arbitrary-precision integers.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(const std::vector<std::vector<Integer>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  std::vector<Integer> operator*(std::span<const Integer> v) const;
  bool operator==(const Matrix& other) const = default;

  /// Fraction-free (Bareiss) elimination; exact for any size.
  Integer determinant() const;
  /// Inverse of a unimodular matrix; throws InvalidArgument otherwise.
  Matrix unimodular_inverse() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  bool is_zero() const;
  bool is_nonnegative() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);
/// Rows separated by " / ", entries by spaces.
std::string to_inline_string(const Matrix& m);

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , the
/// nonzero entries positive and first.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

/// Pivot rule: smallest nonzero absolute value in the active block, ties broken
/// by row-major position. The result is re-verified before it is returned.
SmithDecomposition smith(const Matrix& m);
bool verify_smith(const Matrix& m, const SmithDecomposition& s);

/// Row-style Hermite normal form: U * M = H, U unimodular, H in row echelon
/// form with positive pivots and entries above each pivot reduced to [0, pivot).
struct HermiteDecomposition {
  Matrix U;
  Matrix H;
  std::vector<std::size_t> pivot_cols;
};

HermiteDecomposition hermite(const Matrix& m);

/// Invariant-factor form. Two groups are isomorphic iff the values are equal.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // each >= 2, d_1 | d_2 | ...

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::size_t generator_count() const { return torsion.size() + free_rank; }
  bool operator==(const FgAbelianGroup&) const = default;
  /// "0", "Z/2", "Z/2 + Z/6 + Z^2", ...
  std::string to_string() const;
};

/// Z^m / M Z^n for an m x n matrix M.
FgAbelianGroup cokernel(const Matrix& m);

/// Cokernel together with the coordinate map from Z^m onto the canonical
/// generators (torsion generators first, then free ones).
class CokernelCoordinates {
 public:
  explicit CokernelCoordinates(const Matrix& m);

  const FgAbelianGroup& group() const { return group_; }
  /// Canonical coordinates of the class of x, torsion entries reduced.
  std::vector<Integer> coordinates(std::span<const Integer> x) const;

 private:
  FgAbelianGroup group_;
  Matrix u_;
  std::vector<std::size_t> torsion_rows_;
  std::vector<std::size_t> free_rows_;
};

struct PointedGroup {
  FgAbelianGroup group;
  std::vector<Integer> marked;  // canonical coordinates, torsion part reduced

  bool operator==(const PointedGroup&) const = default;
  std::string to_string() const;
};

/// Reduces torsion coordinates into [0, d_i).
std::vector<Integer> reduce_element(const FgAbelianGroup& g, std::vector<Integer> x);

/// (coker M, class of x) in canonical coordinates.
PointedGroup pointed_cokernel(const Matrix& m, std::span<const Integer> x);

struct LatticeMembership {
  bool member = false;
  /// v = sum_j coefficients[j] * generators[j] when member.
  std::vector<Integer> coefficients;
  /// When not a member: a rational functional that is integral on every
  /// generator but not on v.
  std::vector<Rational> separator;
};

LatticeMembership lattice_member(std::span<const Integer> v,
                                 const std::vector<std::vector<Integer>>& generators);

enum class Verdict { yes, no, undecided };
std::string_view verdict_name(Verdict v);

struct PointedIso {
  Verdict verdict = Verdict::undecided;
  /// Column j is the image of canonical generator j; present iff verdict == yes.
  std::optional<Matrix> isomorphism;
  std::string reason;
};

/// Decides whether an isomorphism of the underlying groups carries the marked
/// element of p to that of q. Complete up to the enumeration cap on the
/// automorphisms of the torsion subgroup; `undecided` is returned only when
/// that cap is exceeded and no invariant separates the two.
PointedIso pointed_iso(const PointedGroup& p, const PointedGroup& q,
                       std::size_t enumeration_cap = std::size_t{1} << 20);

/// Independent re-check of a claimed pointed isomorphism.
bool verify_pointed_iso(const PointedGroup& p, const PointedGroup& q, const Matrix& iso);

}  // namespace intlat
}  // namespace sftlab

#endif  // SFTLAB_INTLAT_HPP_
