#pragma once

#include "sll/core.hpp"
#include "sll/graph_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sll {

enum class ResistanceGate { NormalEEP, NonnegativeBalanced };

struct ResistanceReport {
  Matrix r_matrix;
  double r_tot = 0.0;
  /// n * trace((L+)_s); equals r_tot.
  double r_tot_trace = 0.0;
  std::optional<double> k_f_lyapunov;
  std::optional<double> k_f_spectral;
  ResistanceGate gate = ResistanceGate::NormalEEP;
  /// max |pairwise quadratic form - matrix formula|
  double pairwise_deviation = 0.0;
  bool metric_ok = false;
  bool edm_ok = false;
};

struct LyapunovSolution {
  Matrix q_basis;  // (n-1) x n, orthonormal rows spanning 1-perp
  Matrix s_matrix;
  Matrix x_matrix;  // 2 Q^T S Q
  double residual = 0.0;
  double s_min_eigenvalue = 0.0;
  double k_f = 0.0;
};

enum class LyapunovMethod { Auto, Kronecker, Schur };

inline constexpr Eigen::Index kKroneckerLyapunovCap = 64;

/// Householder reflector sending 1/sqrt(n) to e_1; rows 2..n.
Matrix orthonormal_complement_basis(int n);

/// Solves A S + S A^T = C.
Matrix solve_lyapunov(const Matrix& a, const Matrix& c, LyapunovMethod method = LyapunovMethod::Auto);

ResistanceReport effective_resistance(const Matrix& l, const Tolerances& tol = {});

/// R from a symmetric psd-corank-1 matrix S: diag(S) 1^T + 1 diag(S)^T - 2 S.
Matrix resistance_matrix(const Matrix& s);

bool is_euclidean_distance_matrix(const Matrix& r, double tol);
bool metric_check(const Matrix& r, double tol);

LyapunovSolution kirchhoff_index_lyapunov(const Matrix& l, const Tolerances& tol = {},
                                          const std::optional<Matrix>& basis = std::nullopt,
                                          LyapunovMethod method = LyapunovMethod::Auto);
double kirchhoff_index_spectral(const Matrix& l, const Tolerances& tol = {});

struct RtotKfGap {
  double r_tot = 0.0;
  double k_f = 0.0;
  double gap = 0.0;
};
RtotKfGap rtot_kf_gap(const Matrix& l, const Tolerances& tol = {});

/// Unweighted directed cycle 0 -> 1 -> ... -> n-1 -> 0.
SignedDigraph directed_cycle(int n);

}  // namespace sll
