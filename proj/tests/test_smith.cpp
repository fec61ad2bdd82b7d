#include <doctest.h>

#include <random>

#include "thetapi/oracle.hpp"
#include "thetapi/smith.hpp"

using namespace thetapi;

namespace {

IntMatrix make(std::size_t r, std::size_t c, std::initializer_list<long> values) {
  IntMatrix m(r, c);
  std::size_t k = 0;
  for (long v : values) m.data[k++] = v;
  return m;
}

// Determinant by fraction-free Bareiss elimination.
mpz_class det(IntMatrix a) {
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

void check_contract(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  REQUIRE(s.U.rows == m.rows);
  REQUIRE(s.V.cols == m.cols);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.V * s.V_inverse == IntMatrix::identity(m.cols));
  CHECK(abs(det(s.U)) == 1);
  CHECK(abs(det(s.V)) == 1);
  for (std::size_t i = 0; i < s.D.rows; ++i)
    for (std::size_t j = 0; j < s.D.cols; ++j)
      if (i != j) CHECK(s.D(i, j) == 0);
  const auto f = s.invariant_factors();
  for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
  for (const auto& d : f) CHECK(d > 0);
  CHECK(f == oracle::invariant_factors(m));
}

}  // namespace

TEST_SUITE("smith") {

TEST_CASE("worked examples") {
  auto s = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
  CHECK(s.D == make(2, 2, {2, 0, 0, 4}));
  CHECK(smith_normal_form(IntMatrix::identity(3)).D == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix(2, 3)).D == IntMatrix(2, 3));
  check_contract(make(2, 2, {2, 4, 6, 8}));
}

TEST_CASE("empty and degenerate shapes") {
  for (auto [r, c] : {std::pair{0, 0}, {0, 3}, {3, 0}, {1, 1}}) {
    IntMatrix m(r, c);
    auto s = smith_normal_form(m);
    CHECK(s.U.rows == static_cast<std::size_t>(r));
    CHECK(s.V.rows == static_cast<std::size_t>(c));
    CHECK(s.invariant_factors().empty());
  }
  check_contract(make(1, 1, {-7}));
  check_contract(make(1, 4, {6, 10, 15, 0}));
  check_contract(make(3, 1, {0, -4, 6}));
}

TEST_CASE("divisibility needs the fix-up step") {
  // diag(2, 3) has Smith form diag(1, 6)
  auto s = smith_normal_form(make(2, 2, {2, 0, 0, 3}));
  CHECK(s.invariant_factors() == std::vector<mpz_class>{1, 6});
  check_contract(make(3, 3, {4, 0, 0, 0, 6, 0, 0, 0, 10}));
}

TEST_CASE("reference implementation sanity") {
  CHECK(oracle::invariant_factors(make(2, 2, {2, 4, 6, 8})) == std::vector<mpz_class>{2, 4});
  CHECK(oracle::invariant_factors(make(2, 2, {2, 0, 0, 3})) == std::vector<mpz_class>{1, 6});
  CHECK(oracle::invariant_factors(make(2, 3, {0, 0, 0, 0, 0, 5})) == std::vector<mpz_class>{5});
}

TEST_CASE("random matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = rng() % 7, c = rng() % 7;
    IntMatrix m(r, c);
    for (auto& x : m.data) x = static_cast<long>(rng() % 41) - 20;
    check_contract(m);
  }
}

TEST_CASE("large entries stay exact") {
  IntMatrix m(2, 2);
  m(0, 0) = mpz_class("123456789012345678901234567890");
  m(0, 1) = mpz_class("987654321098765432109876543210");
  m(1, 0) = 3;
  m(1, 1) = 7;
  check_contract(m);
}

}  // TEST_SUITE
