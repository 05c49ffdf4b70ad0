#pragma once

#include <gmpxx.h>

#include <vector>

namespace klat {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;

/// Dense matrix with arbitrary-precision integer entries, row major.
class IntMat {
public:
  IntMat() = default;
  IntMat(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  static IntMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  IntMat transposed() const;
  bool is_symmetric() const;
  bool is_zero() const;

  bool operator==(const IntMat&) const = default;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

IntMat operator*(const IntMat& a, const IntMat& b);

/// Dense matrix with exact rational entries, row major.
class RatMat {
public:
  RatMat() = default;
  RatMat(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  bool operator==(const RatMat&) const = default;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

RatMat operator*(const RatMat& a, const RatMat& b);
RatMat to_rat(const IntMat& m);

/// Smith normal form u*m*v = d with u, v unimodular and the diagonal of d
/// nonnegative, each entry dividing the next.
struct SmithResult {
  IntMat d, u, v;
  /// Diagonal entries of d that are > 1 (the nontrivial invariant factors).
  std::vector<Int> nontrivial_factors() const;
};
SmithResult smith_normal_form(const IntMat& m);

/// Determinant by fraction-free Bareiss elimination.
Int determinant(const IntMat& m);

/// Exact definiteness test: the k-th leading principal minor must have sign
/// (-1)^k for every k.
bool is_negative_definite(const IntMat& gram);

/// Hermite-style row basis of the integer row span of m: the nonzero rows of
/// the row echelon form with positive pivots and reduced entries above them.
IntMat hermite_row_basis(const IntMat& m);

/// Inverse of a square rational matrix; throws std::domain_error if singular.
RatMat rat_inverse(const RatMat& m);

}  // namespace klat
