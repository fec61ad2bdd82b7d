#include "thetapi/smith.hpp"

#include <algorithm>
#include <utility>

#include "thetapi/error.hpp"

namespace thetapi {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols == b.rows, "matrix product: shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

namespace {

class Reducer {
 public:
  explicit Reducer(const IntMatrix& a)
      : A(a), U(IntMatrix::identity(a.rows)), V(IntMatrix::identity(a.cols)), Vi(IntMatrix::identity(a.cols)) {}

  IntMatrix A, U, V, Vi;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vi.cols; ++c) std::swap(Vi(i, c), Vi(j, c));
  }

  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, const mpz_class& q) {
    for (std::size_t c = 0; c < A.cols; ++c)
      if (A(t, c) != 0) A(i, c) -= q * A(t, c);
    for (std::size_t c = 0; c < U.cols; ++c)
      if (U(t, c) != 0) U(i, c) -= q * U(t, c);
  }

  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, const mpz_class& q) {
    for (std::size_t r = 0; r < A.rows; ++r)
      if (A(r, t) != 0) A(r, j) -= q * A(r, t);
    for (std::size_t r = 0; r < V.rows; ++r)
      if (V(r, t) != 0) V(r, j) -= q * V(r, t);
    for (std::size_t c = 0; c < Vi.cols; ++c)
      if (Vi(j, c) != 0) Vi(t, c) += q * Vi(j, c);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
    for (std::size_t c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
  }

  // Smallest |entry| in the trailing block, first in row-major order on ties.
  bool bring_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < A.rows; ++i)
      for (std::size_t j = t; j < A.cols; ++j) {
        if (A(i, j) == 0) continue;
        if (!found || mpz_cmpabs(A(i, j).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void run() {
    const std::size_t n = std::min(A.rows, A.cols);
    for (std::size_t t = 0; t < n; ++t) {
      if (!bring_pivot(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < A.rows; ++i) {
          if (A(i, t) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          row_sub(i, t, q);
          if (A(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < A.cols; ++j) {
          if (A(t, j) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          col_sub(j, t, q);
          if (A(t, j) != 0) dirty = true;
        }
        if (dirty) {
          bring_pivot(t);
          continue;
        }
        // Divisibility: fold an offending row into the pivot row and retry.
        std::size_t bad = A.rows;
        for (std::size_t i = t + 1; i < A.rows && bad == A.rows; ++i)
          for (std::size_t j = t + 1; j < A.cols; ++j)
            if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
        if (bad == A.rows) break;
        row_sub(t, bad, mpz_class(-1));
      }
      if (A(t, t) < 0) negate_row(t);
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  Reducer r(a);
  r.run();
  return SmithForm{std::move(r.U), std::move(r.A), std::move(r.V), std::move(r.Vi)};
}

}  // namespace thetapi
