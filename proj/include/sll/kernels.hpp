#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP version in
// sll::kernels and a plain serial reference in sll::kernels::serial with
// identical results; tests and the benchmark compare the two.

#include "sll/core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sll::kernels {

/// Entries of exp(-L t) must exceed this fraction of the largest entry to
/// count as positive; absorbs LU round-off in structurally zero blocks.
inline constexpr double kExpPositivityFloor = 1e-13;

/// flags[k] = 1 iff exp(-L t_k) is entrywise positive.
std::vector<std::uint8_t> positive_on_grid(const Matrix& l, std::span<const double> t_grid);

/// R_ij = (e_i - e_j)^T S (e_i - e_j) evaluated pair by pair.
Matrix pairwise_resistance(const Matrix& s);

/// Number of ordered triples (i, k, j) with sqrt R_ik + sqrt R_kj < sqrt R_ij - tol.
std::int64_t triangle_violations(const Matrix& r, double tol);

/// I (x) A + A (x) I, the column-major vectorization of X -> A X + X A^T.
Matrix kronecker_sum(const Matrix& a);

int max_threads();

namespace serial {
std::vector<std::uint8_t> positive_on_grid(const Matrix& l, std::span<const double> t_grid);
Matrix pairwise_resistance(const Matrix& s);
std::int64_t triangle_violations(const Matrix& r, double tol);
Matrix kronecker_sum(const Matrix& a);
}  // namespace serial

}  // namespace sll::kernels
