#include "sll/pinv_closure.hpp"

#include "sll/graph_model.hpp"
#include "sll/spectral.hpp"

#include <cmath>

namespace sll {

namespace {

void require_wb_corank1(const Matrix& l, const Tolerances& tol, const char* what) {
  require_square(l, what);
  if (!is_weight_balanced(l, tol.zero)) {
    throw Error(ErrorKind::PreconditionViolated, std::string(what) + ": Laplacian is not weight balanced");
  }
  if (const int k = corank(l, tol.zero); k != 1) {
    throw Error(ErrorKind::PreconditionViolated,
                std::string(what) + ": Laplacian has corank " + std::to_string(k) + ", need 1");
  }
}

double rel_diff(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(b.norm(), std::numeric_limits<double>::min());
}

}  // namespace

Matrix laplacian_pinv(const Matrix& l, const Tolerances& tol) {
  require_wb_corank1(l, tol, "laplacian_pinv");
  const Matrix shifted = pinv_shifted(l, 1.0, tol);
  const Matrix svd = pinv_svd(l, tol.zero);
  if (const double d = rel_diff(shifted, svd); !(d <= tol.xcheck)) {
    throw Error(ErrorKind::CrossCheckFailed,
                "shifted and SVD pseudoinverses differ by " + std::to_string(d) + " (relative)");
  }
  if (!is_weight_balanced(shifted, tol.zero) || corank(shifted, tol.zero) != 1) {
    throw Error(ErrorKind::CrossCheckFailed, "pseudoinverse is not weight balanced of corank 1");
  }
  return shifted;
}

bool is_psd_corank1(const Matrix& sym, double zero_rel) {
  const Vector ev = symmetric_eigenvalues(sym);
  const double tau = scaled(zero_rel, sym);
  int zeros = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tau) return false;
    if (ev(i) <= tau) ++zeros;
  }
  return zeros == 1;
}

double noncommutation_gap(const Matrix& l, const Tolerances& tol) {
  const Matrix dagger = laplacian_pinv(l, tol);
  return (symmetric_part(dagger) - pinv_svd(symmetric_part(l), tol.zero)).norm();
}

ClosureReport verify_closure(const Matrix& l, const Tolerances& tol) {
  ClosureReport report;
  report.l_dagger = laplacian_pinv(l, tol);
  const Matrix& ld = report.l_dagger;
  const Eigen::Index n = l.rows();
  const Matrix pi = range_projector(static_cast<int>(n)).matrix;
  const Vector ones = Vector::Ones(n);

  const double tau = scaled(tol.zero, ld);
  auto& id = report.identities;
  id.eq1_residual = std::max((l * ld - pi).norm(), (ld * l - pi).norm());
  id.eq2_residual = std::max((ld * ones).norm(), (ld.transpose() * ones).norm());
  id.eq3_residual = std::max((pi * ld - ld).norm(), (ld * pi - ld).norm());
  id.eq4_residual = rel_diff(pinv_shifted(l, 1.0, tol), pinv_svd(l, tol.zero));
  // eq1 is dimensionless; the rest scale with ||L+||.
  id.eq1 = id.eq1_residual <= scaled(tol.zero, pi) * std::max(1.0, l.norm() * ld.norm());
  id.eq2 = id.eq2_residual <= tau;
  id.eq3 = id.eq3_residual <= tau;
  id.eq4 = id.eq4_residual <= tol.xcheck;

  report.involution_residual = rel_diff(pinv_svd(ld, tol.zero), l);
  report.involution_ok = report.involution_residual <= 1e-8;

  report.eep_l = certify_eep(l, {.zero_rel = tol.zero});
  report.eep_dagger = certify_eep(ld, {.zero_rel = tol.zero});
  report.eep_preserved = {report.eep_l.holds, report.eep_dagger.holds};
  report.corank_pair = {corank(l, tol.zero), corank(ld, tol.zero)};
  report.dagger_spectrum = spectrum(ld, tol.zero).values;

  const Matrix ls = symmetric_part(l);
  const Matrix lds = symmetric_part(ld);
  report.sym_spectrum = symmetric_eigenvalues(ls);
  report.dagger_sym_spectrum = symmetric_eigenvalues(lds);
  report.sym_psd_corank1 = is_psd_corank1(ls, tol.zero);
  report.dagger_sym_psd_corank1 = is_psd_corank1(lds, tol.zero);

  const bool normal = is_normal(l, tol.normal);
  if (normal) report.normal_preserved = std::pair{true, is_normal(ld, tol.normal)};
  report.psd_without_normality = !normal && report.sym_psd_corank1;
  report.noncommutation_gap = (lds - pinv_svd(ls, tol.zero)).norm();
  return report;
}

bool nonneg_symmetrized_psd(const Matrix& l, const Tolerances& tol) {
  require_square(l, "nonneg_symmetrized_psd");
  if (!is_nonnegative_graph(l)) {
    throw Error(ErrorKind::PreconditionViolated, "graph has negative edge weights");
  }
  if (!is_strongly_connected(l)) {
    throw Error(ErrorKind::PreconditionViolated, "graph is not strongly connected");
  }
  if (!is_weight_balanced(l, tol.zero)) {
    throw Error(ErrorKind::PreconditionViolated, "graph is not weight balanced");
  }
  return is_psd_corank1(symmetric_part(laplacian_pinv(l, tol)), tol.zero);
}

}  // namespace sll
