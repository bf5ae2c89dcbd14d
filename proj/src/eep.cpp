#include "sll/eep.hpp"

#include "sll/graph_model.hpp"
#include "sll/kernels.hpp"
#include "sll/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sll {

namespace {

// Null vector of (M - lambda I) scaled to unit max-norm, largest entry positive.
// Returns its minimum entry.
double perron_vector_min(const Matrix& m, double lambda, bool left) {
  const Eigen::Index n = m.rows();
  Matrix shifted = m - lambda * Matrix::Identity(n, n);
  if (left) shifted.transposeInPlace();
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  Vector v = svd.matrixV().col(n - 1);
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v /= v(arg);
  return v.minCoeff();
}

}  // namespace

PFCertificate strong_pf(const Matrix& m, double zero_rel) {
  require_square(m, "strong_pf");
  PFCertificate cert;
  const Spectrum s = spectrum(m, zero_rel);
  cert.rho = s.spectral_radius();

  std::optional<std::size_t> candidate;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.values[i].imag() != 0.0) continue;
    if (!candidate || s.values[i].real() > s.values[*candidate].real()) candidate = i;
  }
  if (!candidate) {
    cert.dominance_gap = -cert.rho;
    return cert;
  }
  const double lead = s.values[*candidate].real();
  double others = 0.0;
  bool simple = true;
  const double margin = kDominanceMargin * std::max(cert.rho, std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i == *candidate) continue;
    others = std::max(others, std::abs(s.values[i]));
    if (std::abs(s.values[i] - lead) <= margin) simple = false;
  }
  cert.dominance_gap = lead - others;
  cert.simple = simple;
  cert.right_vec_min = perron_vector_min(m, lead, false);
  cert.left_vec_min = perron_vector_min(m, lead, true);
  cert.holds = cert.simple && lead > 0.0 && cert.rho > 0.0 && cert.dominance_gap > margin &&
               cert.right_vec_min > kPositivityMargin;
  return cert;
}

bool is_eventually_positive(const Matrix& m, double zero_rel) {
  return strong_pf(m, zero_rel).holds && strong_pf(m.transpose(), zero_rel).holds;
}

std::optional<int> eventual_positivity_witness(const Matrix& m, int k_max) {
  require_square(m, "eventual_positivity_witness");
  const double rho = spectrum(m).spectral_radius();
  if (!(rho > scaled(1e-12, m))) {
    throw Error(ErrorKind::ZeroSpectralRadius, "cannot normalize powers of a matrix with rho = 0");
  }
  const Matrix step = m / rho;
  Matrix power = step;
  std::vector<bool> positive;
  positive.reserve(std::max(k_max, 0));
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) power = power * step;
    positive.push_back(power.minCoeff() > 0.0);
  }
  if (positive.empty() || !positive.back()) return std::nullopt;
  int k0 = k_max;
  while (k0 > 1 && positive[k0 - 2]) --k0;
  return k0;
}

double eep_threshold(const Matrix& l, double zero_rel) {
  require_square(l, "eep_threshold");
  if (!is_weight_balanced(l, zero_rel)) {
    throw Error(ErrorKind::PreconditionViolated, "shift threshold needs a weight-balanced Laplacian");
  }
  if (const int k = corank(l, zero_rel); k != 1) {
    throw Error(ErrorKind::PreconditionViolated, "shift threshold needs corank 1, got " + std::to_string(k));
  }
  const Spectrum s = spectrum(l, zero_rel);
  double d = 0.0;
  for (const Complex& lambda : s.nonzero()) {
    if (lambda.real() <= s.zero_tol) {
      throw Error(ErrorKind::NonPositiveRealPart, "eigenvalue with Re <= 0; no finite shift threshold");
    }
    d = std::max(d, std::norm(lambda) / (2.0 * lambda.real()));
  }
  return d;
}

std::optional<double> leftmost_shift_threshold(const Matrix& l, double zero_rel) {
  require_square(l, "leftmost_shift_threshold");
  const Spectrum s = spectrum(l, zero_rel);
  const Complex lead = s.values.front();
  if (lead.imag() != 0.0) return std::nullopt;
  const double mu = lead.real();
  double d = std::max(0.0, mu);
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    const double gap = s.values[i].real() - mu;
    if (gap <= s.zero_tol) return std::nullopt;
    d = std::max(d, (std::norm(s.values[i]) - mu * mu) / (2.0 * gap));
  }
  return d;
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int e = -3; e <= 7; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

std::optional<double> exp_positivity_witness(const Matrix& l, const std::vector<double>& t_grid) {
  require_square(l, "exp_positivity_witness");
  if (t_grid.empty()) return std::nullopt;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw Error(ErrorKind::PreconditionViolated, "time grid must be positive and strictly ascending");
    }
  }
  const auto flags = kernels::positive_on_grid(l, t_grid);
  if (!flags.back()) return std::nullopt;
  std::size_t k0 = flags.size() - 1;
  while (k0 > 0 && flags[k0 - 1]) --k0;
  return t_grid[k0];
}

EEPCertificate certify_eep(const Matrix& l, const EEPOptions& options) {
  require_square(l, "certify_eep");
  EEPCertificate cert;
  const Eigen::Index n = l.rows();
  cert.corank = corank(l, options.zero_rel);
  cert.weight_balanced = is_weight_balanced(l, options.zero_rel);
  cert.marginally_stable = is_marginally_stable_neg(l, options.zero_rel);

  if (cert.weight_balanced && cert.corank == 1) {
    try {
      cert.d_star = eep_threshold(l, options.zero_rel);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonPositiveRealPart) throw;
      cert.d_star = leftmost_shift_threshold(l, options.zero_rel);
    }
  } else {
    cert.d_star = leftmost_shift_threshold(l, options.zero_rel);
  }
  cert.d_used = cert.d_star ? *cert.d_star * (1.0 + options.margin_rel) + options.margin_abs
                            : 1.0 + spectrum(l, options.zero_rel).spectral_radius();

  const Matrix b = cert.d_used * Matrix::Identity(n, n) - l;
  cert.pf_forward = strong_pf(b, options.zero_rel);
  cert.pf_transpose = strong_pf(b.transpose(), options.zero_rel);
  cert.holds = cert.pf_forward.holds && cert.pf_transpose.holds;

  if (cert.weight_balanced) {
    const bool expected = cert.marginally_stable && cert.corank == 1;
    cert.linkage = expected == cert.holds ? StabilityLinkage::Consistent : StabilityLinkage::Inconsistent;
  }
  if (options.witness) {
    cert.empirical_t0 =
        exp_positivity_witness(l, options.t_grid.empty() ? default_t_grid() : options.t_grid);
  }
  return cert;
}

}  // namespace sll
