#pragma once

#include "sll/core.hpp"

#include <optional>
#include <vector>

namespace sll {

/// Evidence for the strong Perron-Frobenius property of a matrix.
struct PFCertificate {
  bool holds = false;
  double rho = 0.0;
  /// Perron candidate minus the largest modulus among the remaining eigenvalues.
  double dominance_gap = 0.0;
  /// Minimum entries of the dominant right/left eigenvectors, scaled to unit
  /// max-norm with the largest-magnitude entry positive.
  double right_vec_min = 0.0;
  double left_vec_min = 0.0;
  bool simple = false;
};

enum class StabilityLinkage { Consistent, Inconsistent, NotApplicable };

struct EEPCertificate {
  bool holds = false;
  /// Minimal valid shift; absent when no finite shift can exist.
  std::optional<double> d_star;
  double d_used = 0.0;
  PFCertificate pf_forward;
  PFCertificate pf_transpose;
  int corank = 0;
  bool weight_balanced = false;
  bool marginally_stable = false;
  StabilityLinkage linkage = StabilityLinkage::NotApplicable;
  std::optional<double> empirical_t0;
};

struct EEPOptions {
  double margin_rel = 0.05;
  double margin_abs = 1e-6;
  double zero_rel = 1e-9;
  bool witness = false;
  std::vector<double> t_grid;  // empty: default geometric grid
};

inline constexpr double kPositivityMargin = 1e-8;
inline constexpr double kDominanceMargin = 1e-9;

PFCertificate strong_pf(const Matrix& m, double zero_rel = 1e-9);
bool is_eventually_positive(const Matrix& m, double zero_rel = 1e-9);

/// Smallest k0 <= k_max such that (M/rho)^k > 0 for all k in [k0, k_max].
std::optional<int> eventual_positivity_witness(const Matrix& m, int k_max);

/// max over nonzero eigenvalues of |lambda|^2 / (2 Re lambda).
double eep_threshold(const Matrix& l, double zero_rel = 1e-9);

/// Shift threshold relative to the leftmost eigenvalue; equals eep_threshold
/// when that eigenvalue is zero. Absent when the leftmost eigenvalue is not
/// real and simple.
std::optional<double> leftmost_shift_threshold(const Matrix& l, double zero_rel = 1e-9);

EEPCertificate certify_eep(const Matrix& l, const EEPOptions& options = {});

std::vector<double> default_t_grid();

/// Smallest grid time t0 with exp(-L t) > 0 at every sampled t >= t0.
std::optional<double> exp_positivity_witness(const Matrix& l, const std::vector<double>& t_grid);

}  // namespace sll
