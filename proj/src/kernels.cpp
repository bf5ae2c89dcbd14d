#include "sll/kernels.hpp"

#include "sll/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sll::kernels {

namespace {

std::uint8_t exp_positive(const Matrix& l, double t) {
  const Matrix e = matrix_exp(-t * l);
  const double floor = kExpPositivityFloor * e.cwiseAbs().maxCoeff();
  return e.minCoeff() > floor ? 1 : 0;
}

double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::uint8_t> positive_on_grid(const Matrix& l, std::span<const double> t_grid) {
  const auto count = static_cast<std::int64_t>(t_grid.size());
  std::vector<std::uint8_t> flags(t_grid.size(), 0);
  // exceptions may not cross the parallel region; keep the first and rethrow
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    try {
      flags[k] = exp_positive(l, t_grid[k]);
    } catch (...) {
#pragma omp critical(sll_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return flags;
}

Matrix pairwise_resistance(const Matrix& s) {
  const Eigen::Index n = s.rows();
  Matrix r = Matrix::Zero(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) r(i, j) = s(i, i) + s(j, j) - s(i, j) - s(j, i);
  }
  return r;
}

std::int64_t triangle_violations(const Matrix& r, double tol) {
  const Eigen::Index n = r.rows();
  const Matrix root = r.unaryExpr([](double x) { return safe_sqrt(x); });
  std::int64_t bad = 0;
#pragma omp parallel for reduction(+ : bad) schedule(static)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (root(i, k) + root(k, j) < root(i, j) - tol) ++bad;
  return bad;
}

Matrix kronecker_sum(const Matrix& a) {
  const Eigen::Index m = a.rows();
  Matrix k = Matrix::Zero(m * m, m * m);
  // row (i + m*j) <-> entry (i, j) of A X + X A^T
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index row = i + m * j;
      for (Eigen::Index p = 0; p < m; ++p) {
        k(row, p + m * j) += a(i, p);
        k(row, i + m * p) += a(j, p);
      }
    }
  }
  return k;
}

namespace serial {

std::vector<std::uint8_t> positive_on_grid(const Matrix& l, std::span<const double> t_grid) {
  std::vector<std::uint8_t> flags;
  flags.reserve(t_grid.size());
  for (double t : t_grid) flags.push_back(exp_positive(l, t));
  return flags;
}

Matrix pairwise_resistance(const Matrix& s) {
  const Eigen::Index n = s.rows();
  Matrix r = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) r(i, j) = s(i, i) + s(j, j) - s(i, j) - s(j, i);
  return r;
}

std::int64_t triangle_violations(const Matrix& r, double tol) {
  const Eigen::Index n = r.rows();
  std::int64_t bad = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (safe_sqrt(r(i, k)) + safe_sqrt(r(k, j)) < safe_sqrt(r(i, j)) - tol) ++bad;
  return bad;
}

Matrix kronecker_sum(const Matrix& a) {
  const Eigen::Index m = a.rows();
  const Matrix ident = Matrix::Identity(m, m);
  Matrix k(m * m, m * m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c)
      k.block(r * m, c * m, m, m) = ident(r, c) * a + a(r, c) * ident;
  return k;
}

}  // namespace serial

}  // namespace sll::kernels
