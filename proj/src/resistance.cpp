#include "sll/resistance.hpp"

#include "sll/eep.hpp"
#include "sll/kernels.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace sll {

Matrix orthonormal_complement_basis(int n) {
  if (n < 2) throw Error(ErrorKind::TooSmall, "complement basis needs n >= 2");
  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  v(0) -= 1.0;
  const Matrix h = Matrix::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
  return h.bottomRows(n - 1);
}

namespace {

Matrix solve_lyapunov_kronecker(const Matrix& a, const Matrix& c) {
  const Eigen::Index m = a.rows();
  const Eigen::PartialPivLU<Matrix> lu(kernels::kronecker_sum(a));
  // rcond() reports 1 on an exact zero pivot, so look at the pivots too
  const Vector piv = lu.matrixLU().diagonal().cwiseAbs();
  if (!(lu.rcond() > 1e-14) || !(piv.minCoeff() > 1e-14 * piv.maxCoeff())) {
    throw Error(ErrorKind::IllConditionedLyapunov, "Kronecker-sum system is numerically singular");
  }
  const Vector rhs = Eigen::Map<const Vector>(c.data(), m * m);
  const Vector sol = lu.solve(rhs);
  return Eigen::Map<const Matrix>(sol.data(), m, m);
}

// Bartels-Stewart on the complex Schur form A = U T U^*.
Matrix solve_lyapunov_schur(const Matrix& a, const Matrix& c) {
  using CMatrix = Eigen::MatrixXcd;
  using CVector = Eigen::VectorXcd;
  const Eigen::Index m = a.rows();
  Eigen::ComplexSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::NoConvergence, "Schur decomposition failed");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  const CMatrix f = u.adjoint() * c.cast<Complex>() * u;
  CMatrix y = CMatrix::Zero(m, m);
  const double floor = 1e-14 * std::max(1.0, t.cwiseAbs().maxCoeff());
  for (Eigen::Index j = m - 1; j >= 0; --j) {
    CVector rhs = f.col(j);
    for (Eigen::Index k = j + 1; k < m; ++k) rhs -= std::conj(t(j, k)) * y.col(k);
    CMatrix system = t;
    system.diagonal().array() += std::conj(t(j, j));
    if (system.diagonal().cwiseAbs().minCoeff() <= floor) {
      throw Error(ErrorKind::IllConditionedLyapunov, "A and -A^T share an eigenvalue");
    }
    y.col(j) = system.triangularView<Eigen::Upper>().solve(rhs);
  }
  return (u * y * u.adjoint()).real();
}

}  // namespace

Matrix solve_lyapunov(const Matrix& a, const Matrix& c, LyapunovMethod method) {
  require_square(a, "solve_lyapunov");
  if (c.rows() != a.rows() || c.cols() != a.cols()) {
    throw Error(ErrorKind::NonSquare, "solve_lyapunov: right-hand side shape mismatch");
  }
  if (method == LyapunovMethod::Auto) {
    method = a.rows() <= kKroneckerLyapunovCap ? LyapunovMethod::Kronecker : LyapunovMethod::Schur;
  }
  return method == LyapunovMethod::Kronecker ? solve_lyapunov_kronecker(a, c) : solve_lyapunov_schur(a, c);
}

Matrix resistance_matrix(const Matrix& s) {
  const Eigen::Index n = s.rows();
  const Vector d = s.diagonal();
  const Vector ones = Vector::Ones(n);
  return d * ones.transpose() + ones * d.transpose() - 2.0 * s;
}

bool is_euclidean_distance_matrix(const Matrix& r, double tol) {
  require_square(r, "is_euclidean_distance_matrix");
  const Eigen::Index n = r.rows();
  if (!is_symmetric(r, tol)) return false;
  if (r.diagonal().cwiseAbs().maxCoeff() > tol || r.minCoeff() < -tol) return false;
  if (n < 2) return true;
  const Matrix q = orthonormal_complement_basis(static_cast<int>(n));
  const Matrix projected = symmetric_part(q * r * q.transpose());
  return symmetric_eigenvalues(projected).maxCoeff() <= tol;
}

bool metric_check(const Matrix& r, double tol) {
  require_square(r, "metric_check");
  const Eigen::Index n = r.rows();
  if (!is_symmetric(r, tol) || r.minCoeff() < -tol) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j ? std::abs(r(i, j)) > tol : r(i, j) <= tol) return false;
    }
  }
  return kernels::triangle_violations(r, tol) == 0;
}

LyapunovSolution kirchhoff_index_lyapunov(const Matrix& l, const Tolerances& tol,
                                          const std::optional<Matrix>& basis, LyapunovMethod method) {
  require_square(l, "kirchhoff_index_lyapunov");
  const int n = static_cast<int>(l.rows());
  LyapunovSolution sol;
  sol.q_basis = basis ? *basis : orthonormal_complement_basis(n);
  const Matrix& q = sol.q_basis;
  if (q.rows() != n - 1 || q.cols() != n ||
      (q * q.transpose() - Matrix::Identity(n - 1, n - 1)).norm() > 1e-10 ||
      (q * Vector::Ones(n)).norm() > 1e-10 * std::sqrt(static_cast<double>(n))) {
    throw Error(ErrorKind::PreconditionViolated, "basis rows must be orthonormal and orthogonal to 1");
  }
  const Matrix l_bar = q * l * q.transpose();
  const Spectrum s = spectrum(l_bar, tol.zero);
  for (const Complex& lambda : s.values) {
    if (lambda.real() <= s.zero_tol) {
      throw Error(ErrorKind::NotHurwitz, "projected Laplacian has an eigenvalue with Re <= 0");
    }
  }
  const Matrix ident = Matrix::Identity(n - 1, n - 1);
  sol.s_matrix = symmetric_part(solve_lyapunov(l_bar, ident, method));
  sol.residual = (l_bar * sol.s_matrix + sol.s_matrix * l_bar.transpose() - ident).norm();
  if (!(sol.residual <= 1e-8 * std::max(1.0, l_bar.norm() * sol.s_matrix.norm()))) {
    throw Error(ErrorKind::IllConditionedLyapunov, "Lyapunov residual " + std::to_string(sol.residual));
  }
  sol.s_min_eigenvalue = symmetric_eigenvalues(sol.s_matrix).minCoeff();
  if (!(sol.s_min_eigenvalue > 0.0)) {
    throw Error(ErrorKind::IllConditionedLyapunov, "Lyapunov solution is not positive definite");
  }
  sol.x_matrix = 2.0 * q.transpose() * sol.s_matrix * q;
  const Matrix& x = sol.x_matrix;
  double k_f = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) k_f += x(i, i) + x(j, j) - 2.0 * x(i, j);
  sol.k_f = k_f;
  return sol;
}

double kirchhoff_index_spectral(const Matrix& l, const Tolerances& tol) {
  require_square(l, "kirchhoff_index_spectral");
  if (!is_normal(l, tol.normal)) {
    throw Error(ErrorKind::PreconditionViolated, "spectral Kirchhoff index needs a normal Laplacian");
  }
  if (!is_marginally_stable_neg(l, tol.zero) || corank(l, tol.zero) != 1) {
    throw Error(ErrorKind::PreconditionViolated, "-L must be marginally stable of corank 1");
  }
  double sum = 0.0;
  for (const Complex& lambda : spectrum(l, tol.zero).nonzero()) sum += 1.0 / lambda.real();
  return static_cast<double>(l.rows()) * sum;
}

ResistanceReport effective_resistance(const Matrix& l, const Tolerances& tol) {
  require_square(l, "effective_resistance");
  const bool normal = is_normal(l, tol.normal);
  const bool eep = certify_eep(l, {.zero_rel = tol.zero}).holds;
  const bool nonneg = is_nonnegative_graph(l);
  const bool connected = is_strongly_connected(l);
  const bool balanced = is_weight_balanced(l, tol.zero);

  ResistanceReport report;
  if (normal && eep) {
    report.gate = ResistanceGate::NormalEEP;
  } else if (nonneg && connected && balanced) {
    report.gate = ResistanceGate::NonnegativeBalanced;
  } else {
    std::string clauses;
    auto note = [&clauses](bool ok, const char* what) {
      if (!ok) clauses += std::string(clauses.empty() ? "" : ", ") + what;
    };
    note(normal, "not normal");
    note(eep, "-L not eventually exponentially positive");
    note(nonneg, "negative edge weights");
    note(connected, "not strongly connected");
    note(balanced, "not weight balanced");
    throw Error(ErrorKind::GateFailed, "effective resistance undefined: " + clauses);
  }

  const Matrix s = symmetric_part(laplacian_pinv(l, tol));
  const Eigen::Index n = l.rows();
  report.r_matrix = resistance_matrix(s);
  report.pairwise_deviation = (kernels::pairwise_resistance(s) - report.r_matrix).cwiseAbs().maxCoeff();
  if (report.pairwise_deviation > scaled(tol.zero, s)) {
    throw Error(ErrorKind::CrossCheckFailed, "pairwise and matrix resistance formulas disagree");
  }
  report.r_tot = 0.5 * report.r_matrix.sum();
  report.r_tot_trace = static_cast<double>(n) * s.trace();
  if (std::abs(report.r_tot - report.r_tot_trace) > 1e-8 * std::max(1.0, std::abs(report.r_tot))) {
    throw Error(ErrorKind::CrossCheckFailed, "R_tot differs from n * trace((L+)_s)");
  }
  const double r_tol = scaled(tol.zero, report.r_matrix);
  report.metric_ok = metric_check(report.r_matrix, r_tol);
  report.edm_ok = is_euclidean_distance_matrix(report.r_matrix, r_tol);

  try {
    report.k_f_lyapunov = kirchhoff_index_lyapunov(l, tol).k_f;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotHurwitz && e.kind() != ErrorKind::IllConditionedLyapunov) throw;
  }
  if (normal) report.k_f_spectral = kirchhoff_index_spectral(l, tol);
  return report;
}

RtotKfGap rtot_kf_gap(const Matrix& l, const Tolerances& tol) {
  if (!is_normal(l, tol.normal)) {
    throw Error(ErrorKind::PreconditionViolated, "R_tot <= K_f comparison needs a normal Laplacian");
  }
  const ResistanceReport report = effective_resistance(l, tol);
  if (report.gate != ResistanceGate::NormalEEP) {
    throw Error(ErrorKind::PreconditionViolated, "-L is not eventually exponentially positive");
  }
  RtotKfGap out;
  out.r_tot = report.r_tot;
  out.k_f = report.k_f_lyapunov ? *report.k_f_lyapunov : kirchhoff_index_lyapunov(l, tol).k_f;
  out.gap = out.k_f - out.r_tot;
  if (out.gap < -1e-8 * std::max(1.0, out.k_f)) {
    throw Error(ErrorKind::CrossCheckFailed, "K_f below R_tot: " + std::to_string(out.gap));
  }
  return out;
}

SignedDigraph directed_cycle(int n) {
  if (n < 3) throw Error(ErrorKind::TooSmall, "directed cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return SignedDigraph(n, std::move(edges));
}

}  // namespace sll
