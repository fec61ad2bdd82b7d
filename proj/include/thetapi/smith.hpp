// Smith normal form over the integers with unimodular transforms.
#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace thetapi {

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;  // row-major

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static IntMatrix identity(std::size_t n);

  mpz_class& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool operator==(const IntMatrix& other) const = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// U * A * V = D with U, V unimodular, D diagonal with d_1 | d_2 | .. and
/// d_i >= 0. V_inverse is kept alongside V.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix V_inverse;

  /// Nonzero diagonal entries of D, in order.
  std::vector<mpz_class> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

}  // namespace thetapi
