#pragma once

#include "sll/core.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sll {

/// Published reference matrices and the values reported for them. Matrices
/// are Laplacians rebuilt from their off-diagonal edge weights, so row sums
/// vanish exactly.
struct FixtureSet {
  Matrix undirected3;
  Matrix undirected3_pinv;  // printed to 3 decimals
  Matrix complete_signed4;
  Matrix balanced_indefinite_a;
  Matrix balanced_indefinite_a_pinv;  // printed to 2 decimals
  Matrix balanced_indefinite_b;
  Matrix normal4;
  Matrix nonnormal_psd4;
};

FixtureSet reference_fixtures();

/// Builds a Laplacian from a dense matrix whose off-diagonals are -a_ij; the
/// diagonal is recomputed as the weighted in-degree.
Matrix laplacian_from_offdiagonal(const Matrix& printed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NamedCheck {
  std::string name;
  std::function<CheckResult(const FixtureSet&)> run;
};

/// Regression checks over every reference matrix and the directed-cycle family.
std::vector<NamedCheck> reference_checks();
std::vector<CheckResult> run_reference_checks(const FixtureSet& fixtures);

/// min over matchings of max |a_i - b_pi(i)|; infinity on size mismatch.
double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
double spectrum_distance(const Vector& a, const std::vector<double>& b);

/// Normality tolerance matching 3-decimal printed entries.
inline constexpr double kPrintedNormalTol = 1e-3;

}  // namespace sll
