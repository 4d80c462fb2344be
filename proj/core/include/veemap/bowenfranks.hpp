#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "veemap/rational.hpp"

namespace veemap {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  /// Throws Error on ragged input.
  explicit IntMatrix(const std::vector<std::vector<BigInt>>& rows);
  static IntMatrix from_ints(const std::vector<std::vector<long long>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<std::vector<BigInt>> to_rows() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

/// Fraction-free (Bareiss) determinant; throws Error unless square.
BigInt determinant(const IntMatrix& a);

struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

/// u * a * v = d with u, v unimodular, d diagonal, non-negative, d_i | d_{i+1}.
/// Pivot: smallest non-zero absolute value, ties broken row-major.
SnfResult smith_normal_form(const IntMatrix& a);

struct AbelianGroup {
  /// Z/f for each entry, 0 meaning Z; entries 1 dropped; finite factors in
  /// divisibility order, then the free rank as trailing zeros.
  std::vector<BigInt> invariant_factors;

  bool trivial() const noexcept { return invariant_factors.empty(); }
  /// e.g. "0", "Z/6", "Z^2", "Z/2 x Z/4 x Z".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Cokernel of a: Z^rows / a Z^cols.
AbelianGroup cokernel(const IntMatrix& a);
/// Z^n / (I - A) Z^n; throws Error unless square.
AbelianGroup bf_group(const IntMatrix& a);

struct BfEntry {
  IntMatrix matrix;
  AbelianGroup group;
  BigInt det_i_minus_a;
};

struct BfReport {
  std::vector<BfEntry> entries;
  /// One line per matrix.
  std::string to_text() const;
};

BfReport bf_trivial_report(const std::vector<IntMatrix>& matrices);

}  // namespace veemap
