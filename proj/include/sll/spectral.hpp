#pragma once

#include "sll/core.hpp"
#include "sll/graph_model.hpp"

#include <vector>

namespace sll {

/// Eigenvalues sorted by ascending real part (ties by imaginary part), with
/// exact conjugate pairs and the indices classified as zero.
struct Spectrum {
  std::vector<Complex> values;
  std::vector<std::size_t> zero_indices;
  double zero_tol = 0.0;

  double spectral_radius() const;
  std::size_t zero_count() const noexcept { return zero_indices.size(); }
  bool is_zero(std::size_t i) const;
  std::vector<Complex> nonzero() const;
};

struct Projector {
  enum class Kind { Averaging, Range };
  Matrix matrix;
  Kind kind = Kind::Averaging;
};

inline constexpr Eigen::Index kSpectrumSizeCap = 2000;

/// zero_rel is relative to max(1, ||M||_F).
Spectrum spectrum(const Matrix& m, double zero_rel = 1e-9);
/// Real symmetric input; eigenvalues ascending.
Vector symmetric_eigenvalues(const Matrix& m);

/// Number of singular values <= tol * sigma_max.
int corank(const Matrix& m, double tol = 1e-9);

Projector averaging_projector(int n);
Projector range_projector(int n);

/// Moore-Penrose pseudoinverse by SVD; singular values <= rcond * sigma_max are dropped.
Matrix pinv_svd(const Matrix& m, double rcond = 1e-9);

/// (L + gamma J)^{-1} - J / gamma for weight-balanced corank-1 L.
Matrix pinv_shifted(const Matrix& l, double gamma = 1.0, const Tolerances& tol = {});

/// Scaling and squaring with diagonal Pade approximants up to degree 13.
Matrix matrix_exp(const Matrix& m);

/// M[alpha] - M[alpha,beta] M[beta]^{-1} M[beta,alpha], ordered as p.alpha().
Matrix schur_complement(const Matrix& m, const NodePartition& p, double condition_cap = 1e12);
/// 2-norm condition number of M[beta].
double interior_condition(const Matrix& m, const NodePartition& p);

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

/// Whether -L is marginally stable: Re(lambda) >= -tol for every eigenvalue,
/// the numerically zero ones are semisimple and all others have Re > tol.
bool is_marginally_stable_neg(const Matrix& l, double tol = 1e-9);

}  // namespace sll
