#pragma once

#include "sll/core.hpp"
#include "sll/eep.hpp"

#include <optional>
#include <utility>

namespace sll {

struct PinvIdentities {
  double eq1_residual = 0.0;  // max(||L L+ - Pi||_F, ||L+ L - Pi||_F)
  double eq2_residual = 0.0;  // max(||L+ 1||, ||(L+)^T 1||)
  double eq3_residual = 0.0;  // max(||Pi L+ - L+||_F, ||L+ Pi - L+||_F)
  double eq4_residual = 0.0;  // ||shifted - svd||_F / ||svd||_F
  bool eq1 = false;
  bool eq2 = false;
  bool eq3 = false;
  bool eq4 = false;

  bool all() const noexcept { return eq1 && eq2 && eq3 && eq4; }
};

struct ClosureReport {
  Matrix l_dagger;
  PinvIdentities identities;
  double involution_residual = 0.0;  // ||(L+)+ - L||_F / ||L||_F
  bool involution_ok = false;
  std::pair<bool, bool> eep_preserved{false, false};
  EEPCertificate eep_l;
  EEPCertificate eep_dagger;
  std::optional<std::pair<bool, bool>> normal_preserved;
  std::pair<int, int> corank_pair{0, 0};
  std::vector<Complex> dagger_spectrum;
  Vector sym_spectrum;         // eigenvalues of L_s
  Vector dagger_sym_spectrum;  // eigenvalues of (L+)_s
  bool sym_psd_corank1 = false;
  bool dagger_sym_psd_corank1 = false;
  /// L is not normal but L_s is still psd of corank 1.
  bool psd_without_normality = false;
  double noncommutation_gap = 0.0;
};

/// L+ by the shifted formula, cross-checked against the SVD route.
Matrix laplacian_pinv(const Matrix& l, const Tolerances& tol = {});

ClosureReport verify_closure(const Matrix& l, const Tolerances& tol = {});

/// ||(L+)_s - (L_s)+||_F.
double noncommutation_gap(const Matrix& l, const Tolerances& tol = {});

/// Symmetric matrix with eigenvalues >= -tau and exactly one |lambda| <= tau.
bool is_psd_corank1(const Matrix& sym, double zero_rel = 1e-9);

/// Checks that (L+)_s is psd of corank 1 for a strongly connected,
/// weight-balanced, nonnegative digraph.
bool nonneg_symmetrized_psd(const Matrix& l, const Tolerances& tol = {});

}  // namespace sll
