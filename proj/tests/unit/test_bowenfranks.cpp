#include <doctest/doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "veemap/bowenfranks.hpp"
#include "veemap/error.hpp"

using namespace veemap;

namespace {

bool diagonal_chain(const IntMatrix& d) {
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

bool unimodular(const IntMatrix& m) {
  const BigInt det = determinant(m);
  return det == 1 || det == -1;
}

oracle::Matrix to_ll(const IntMatrix& m) {
  oracle::Matrix out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = static_cast<long long>(m(i, j));
  return out;
}

std::vector<long long> finite_factors(const AbelianGroup& g) {
  std::vector<long long> out;
  for (const auto& f : g.invariant_factors) out.push_back(static_cast<long long>(f));
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-5, 5);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

}  // namespace

TEST_SUITE("matrices") {
  TEST_CASE("construction and arithmetic") {
    CHECK_THROWS_AS(IntMatrix(std::vector<std::vector<BigInt>>{{1, 2}, {3}}), Error);
    const IntMatrix a = IntMatrix::from_ints({{1, 2}, {3, 4}});
    CHECK(a * IntMatrix::identity(2) == a);
    CHECK(a - a == IntMatrix(2, 2));
    CHECK(a * a == IntMatrix::from_ints({{7, 10}, {15, 22}}));
    CHECK(determinant(a) == -2);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), Error);
    CHECK(determinant(IntMatrix(0, 0)) == 1);
  }

  TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
      const IntMatrix m = random_matrix(rng, n, n);
      CHECK(determinant(m) == oracle::cofactor_det(to_ll(m)));
    }
  }
}

TEST_SUITE("smith normal form") {
  TEST_CASE("diag(2,3) becomes diag(1,6)") {
    const IntMatrix a = IntMatrix::from_ints({{2, 0}, {0, 3}});
    const SnfResult r = smith_normal_form(a);
    CHECK(r.d == IntMatrix::from_ints({{1, 0}, {0, 6}}));
    CHECK(r.u * a * r.v == r.d);
    CHECK(oracle::killed_counts(to_ll(a)) == oracle::killed_counts_of({1, 6}, 6));
    CHECK(cokernel(a).to_string() == "Z/6");
  }

  TEST_CASE("zero matrix") {
    const IntMatrix z(3, 3);
    const SnfResult r = smith_normal_form(z);
    CHECK(r.d == z);
    CHECK(unimodular(r.u));
    CHECK(unimodular(r.v));
    CHECK(cokernel(z).invariant_factors == std::vector<BigInt>{0, 0, 0});
  }

  TEST_CASE("identity matrix") {
    const SnfResult r = smith_normal_form(IntMatrix::identity(4));
    CHECK(r.d == IntMatrix::identity(4));
    CHECK(cokernel(IntMatrix::identity(4)).trivial());
  }

  TEST_CASE("rectangular input") {
    const IntMatrix a = IntMatrix::from_ints({{2, 4, 4}, {-6, 6, 12}});
    const SnfResult r = smith_normal_form(a);
    CHECK(r.u * a * r.v == r.d);
    CHECK(r.d == IntMatrix::from_ints({{2, 0, 0}, {0, 6, 0}}));
    CHECK(cokernel(a).to_string() == "Z/2 x Z/6");
  }

  TEST_CASE("random matrices: factorization, unimodularity, divisibility, permutations") {
    std::mt19937_64 rng(20240);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = 1 + static_cast<std::size_t>(rng() % 5), cols = 1 + static_cast<std::size_t>(rng() % 5);
      const IntMatrix a = random_matrix(rng, rows, cols);
      const SnfResult r = smith_normal_form(a);
      CHECK(r.u * a * r.v == r.d);
      CHECK(unimodular(r.u));
      CHECK(unimodular(r.v));
      CHECK(diagonal_chain(r.d));

      std::vector<std::size_t> rp(rows), cp(cols);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      IntMatrix p(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) p(i, j) = a(rp[i], cp[j]);
      CHECK(smith_normal_form(p).d == r.d);
    }
  }

  TEST_CASE("random square matrices: the group order is |det|") {
    std::mt19937_64 rng(99);
    int compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
      const IntMatrix a = random_matrix(rng, n, n);
      const BigInt det = determinant(IntMatrix::identity(n) - a);
      const AbelianGroup g = bf_group(a);
      if (det == 0) {
        CHECK(std::find(g.invariant_factors.begin(), g.invariant_factors.end(), BigInt(0)) != g.invariant_factors.end());
        continue;
      }
      BigInt order = 1;
      for (const auto& f : g.invariant_factors) order *= f;
      CHECK(order == abs(det));
      if (n <= 3 && abs(det) <= 12) {
        const long long o = static_cast<long long>(abs(det));
        CHECK(oracle::killed_counts(to_ll(IntMatrix::identity(n) - a)) == oracle::killed_counts_of(finite_factors(g), o));
        ++compared;
      }
    }
    CHECK(compared > 10);
  }

  TEST_CASE("large entries stay exact") {
    IntMatrix a(2, 2);
    a(0, 0) = BigInt("123456789012345678901234567890");
    a(1, 1) = BigInt("987654321098765432109876543210");
    const SnfResult r = smith_normal_form(a);
    CHECK(r.u * a * r.v == r.d);
    CHECK(r.d(0, 0) * r.d(1, 1) == a(0, 0) * a(1, 1));
  }
}

TEST_SUITE("groups") {
  TEST_CASE("printing") {
    CHECK(AbelianGroup{}.to_string() == "0");
    CHECK(AbelianGroup{{0, 0}}.to_string() == "Z^2");
    CHECK(AbelianGroup{{2, 4, 0}}.to_string() == "Z/2 x Z/4 x Z");
  }
}

TEST_SUITE("Bowen-Franks") {
  TEST_CASE("three-symbol matrix is trivial") {
    const IntMatrix a = IntMatrix::from_ints(fx::as_ll(fx::kThreeMatrix));
    CHECK(bf_group(a).trivial());
    CHECK(determinant(IntMatrix::identity(3) - a) == -1);
    CHECK(oracle::cofactor_det(to_ll(IntMatrix::identity(3) - a)) == -1);
  }

  TEST_CASE("six-symbol matrix is trivial") {
    const IntMatrix a = IntMatrix::from_ints(fx::as_ll(fx::kSixMatrix));
    CHECK(bf_group(a).trivial());
    CHECK(oracle::cofactor_det(to_ll(IntMatrix::identity(6) - a)) == 1);
  }

  TEST_CASE("full 2-shift") { CHECK(bf_group(IntMatrix::from_ints({{2}})).trivial()); }

  TEST_CASE("identity gives a free group") {
    CHECK(bf_group(IntMatrix::identity(3)).invariant_factors == std::vector<BigInt>{0, 0, 0});
  }

  TEST_CASE("all-ones 2x2") {
    // I - A = [[0,-1],[-1,0]] is unimodular.
    const IntMatrix a = IntMatrix::from_ints({{1, 1}, {1, 1}});
    CHECK(determinant(IntMatrix::identity(2) - a) == -1);
    CHECK(bf_group(a).trivial());
    CHECK(cokernel(a).to_string() == "Z");
  }

  TEST_CASE("cyclic examples") {
    CHECK(bf_group(IntMatrix::from_ints({{3}})).to_string() == "Z/2");
    CHECK(bf_group(IntMatrix::from_ints({{0, 1}, {1, 0}})).to_string() == "Z");
  }

  TEST_CASE("non-square input is refused") { CHECK_THROWS_AS(bf_group(IntMatrix(2, 3)), Error); }

  TEST_CASE("report") {
    CHECK(bf_trivial_report({}).entries.empty());
    CHECK(bf_trivial_report({}).to_text().empty());
    const BfReport r = bf_trivial_report({IntMatrix::from_ints(fx::as_ll(fx::kThreeMatrix)),
                                          IntMatrix::from_ints(fx::as_ll(fx::kSixMatrix))});
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].det_i_minus_a == -1);
    CHECK(r.entries[1].det_i_minus_a == 1);
    CHECK(r.entries[0].group.trivial());
    CHECK(r.entries[1].group.trivial());
    const std::string text = r.to_text();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  }
}
