#include "veemap/bowenfranks.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "veemap/error.hpp"

namespace veemap {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(const std::vector<std::vector<BigInt>>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged integer matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::from_ints(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<BigInt>> big;
  for (const auto& r : rows) big.emplace_back(r.begin(), r.end());
  return IntMatrix(big);
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::vector<BigInt>> IntMatrix::to_rows() const {
  std::vector<std::vector<BigInt>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                                                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix difference dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

BigInt determinant(const IntMatrix& input) {
  if (!input.square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  SnfResult r{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
  IntMatrix& d = r.d;
  const std::size_t rows = a.rows(), cols = a.cols();
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // smallest non-zero |entry| in the trailing block, first in row-major order
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi == rows || abs_big(d(i, j)) < abs_big(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;  // trailing block is zero
      swap_rows(d, t, pi);
      swap_rows(r.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(r.v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        const BigInt q = d(i, t) / d(t, t);
        add_row(d, i, t, q);
        add_row(r.u, i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        const BigInt q = d(t, j) / d(t, t);
        add_col(d, j, t, q);
        add_col(r.v, j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide the rest of the block; otherwise fold in an offending row
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(d, t, bad, BigInt(-1));
      add_row(r.u, t, bad, BigInt(-1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) r.u(t, j) = -r.u(t, j);
    }
  }
  return r;
}

AbelianGroup cokernel(const IntMatrix& a) {
  const SnfResult s = smith_normal_form(a);
  AbelianGroup g;
  std::size_t free_rank = a.rows();
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    const BigInt& x = s.d(i, i);
    if (x == 0) continue;
    --free_rank;
    if (x != 1) g.invariant_factors.push_back(x);
  }
  for (std::size_t k = 0; k < free_rank; ++k) g.invariant_factors.push_back(0);
  return g;
}

AbelianGroup bf_group(const IntMatrix& a) {
  if (!a.square()) throw Error("Bowen-Franks group needs a square matrix");
  return cokernel(IntMatrix::identity(a.rows()) - a);
}

std::string AbelianGroup::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::ostringstream out;
  std::size_t free_rank = 0;
  bool first = true;
  for (const auto& f : invariant_factors) {
    if (f == 0) {
      ++free_rank;
      continue;
    }
    out << (first ? "" : " x ") << "Z/" << f;
    first = false;
  }
  if (free_rank > 0) {
    out << (first ? "" : " x ") << "Z";
    if (free_rank > 1) out << "^" << free_rank;
  }
  return out.str();
}

std::string BfReport::to_text() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << e.matrix.rows() << "x" << e.matrix.cols() << " det(I-A)=" << e.det_i_minus_a
        << " BF=" << e.group.to_string();
    if (e.group.trivial()) out << " (trivial)";
    out << "\n";
  }
  return out.str();
}

BfReport bf_trivial_report(const std::vector<IntMatrix>& matrices) {
  BfReport report;
  for (const auto& m : matrices)
    report.entries.push_back(BfEntry{m, bf_group(m), determinant(IntMatrix::identity(m.rows()) - m)});
  return report;
}

}  // namespace veemap
