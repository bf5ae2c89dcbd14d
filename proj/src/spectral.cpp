#include "sll/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sll {

double Spectrum::spectral_radius() const {
  double rho = 0.0;
  for (const Complex& v : values) rho = std::max(rho, std::abs(v));
  return rho;
}

bool Spectrum::is_zero(std::size_t i) const {
  return std::find(zero_indices.begin(), zero_indices.end(), i) != zero_indices.end();
}

std::vector<Complex> Spectrum::nonzero() const {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!is_zero(i)) out.push_back(values[i]);
  return out;
}

namespace {

bool by_real_then_imag(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Forces exact conjugate pairs; imaginary parts below pair_tol are dropped.
void symmetrize_pairs(std::vector<Complex>& values, double pair_tol) {
  std::vector<Complex> upper, lower, out;
  for (const Complex& v : values) {
    if (std::abs(v.imag()) <= pair_tol) out.emplace_back(v.real(), 0.0);
    else if (v.imag() > 0) upper.push_back(v);
    else lower.push_back(v);
  }
  auto key = [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return std::abs(a.imag()) < std::abs(b.imag());
  };
  std::sort(upper.begin(), upper.end(), key);
  std::sort(lower.begin(), lower.end(), key);
  if (upper.size() != lower.size()) {
    out.insert(out.end(), upper.begin(), upper.end());
    out.insert(out.end(), lower.begin(), lower.end());
  } else {
    for (std::size_t k = 0; k < upper.size(); ++k) {
      const double re = 0.5 * (upper[k].real() + lower[k].real());
      const double im = 0.5 * (upper[k].imag() - lower[k].imag());
      out.emplace_back(re, im);
      out.emplace_back(re, -im);
    }
  }
  values = std::move(out);
}

}  // namespace

Spectrum spectrum(const Matrix& m, double zero_rel) {
  require_square(m, "spectrum");
  if (m.rows() > kSpectrumSizeCap) {
    throw Error(ErrorKind::PreconditionViolated, "matrix dimension above spectrum size cap");
  }
  Spectrum s;
  s.zero_tol = scaled(zero_rel, m);
  if (m.rows() == 0) return s;
  Eigen::EigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "eigenvalue iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  symmetrize_pairs(s.values, s.zero_tol);
  std::sort(s.values.begin(), s.values.end(), by_real_then_imag);
  for (std::size_t i = 0; i < s.values.size(); ++i)
    if (std::abs(s.values[i]) <= s.zero_tol) s.zero_indices.push_back(i);
  return s;
}

Vector symmetric_eigenvalues(const Matrix& m) {
  require_square(m, "symmetric_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "symmetric eigenvalue iteration did not converge");
  }
  return solver.eigenvalues();
}

int corank(const Matrix& m, double tol) {
  require_square(m, "corank");
  if (m.rows() == 0) return 0;
  const Vector s = Eigen::BDCSVD<Matrix>(m).singularValues();
  const double cut = tol * s(0);
  return static_cast<int>((s.array() <= cut).count());
}

Projector averaging_projector(int n) {
  if (n < 1) throw Error(ErrorKind::TooSmall, "projector dimension must be >= 1");
  return {Matrix::Constant(n, n, 1.0 / n), Projector::Kind::Averaging};
}

Projector range_projector(int n) {
  Projector p = averaging_projector(n);
  p.matrix = Matrix::Identity(n, n) - p.matrix;
  p.kind = Projector::Kind::Range;
  return p;
}

Matrix pinv_svd(const Matrix& m, double rcond) {
  if (m.size() == 0) return Matrix(m.cols(), m.rows());
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cut = rcond * s(0);
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix pinv_shifted(const Matrix& l, double gamma, const Tolerances& tol) {
  require_square(l, "pinv_shifted");
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw Error(ErrorKind::PreconditionViolated, "shift gamma must be finite and nonzero");
  }
  if (!is_weight_balanced(l, tol.zero)) {
    throw Error(ErrorKind::PreconditionViolated, "shifted pseudoinverse needs a weight-balanced Laplacian");
  }
  if (const int k = corank(l, tol.zero); k != 1) {
    throw Error(ErrorKind::PreconditionViolated,
                "shifted pseudoinverse needs corank 1, got " + std::to_string(k));
  }
  const int n = static_cast<int>(l.rows());
  const Matrix j = averaging_projector(n).matrix;
  const Eigen::PartialPivLU<Matrix> lu(l + gamma * j);
  if (!(lu.rcond() * tol.condition_cap >= 1.0)) {
    throw Error(ErrorKind::SingularShift, "L + gamma J is numerically singular (rcond " +
                                              std::to_string(lu.rcond()) + ")");
  }
  return lu.inverse() - j / gamma;
}

// ---------------------------------------------------------------------------
// Matrix exponential

namespace {

struct PadeTerms {
  Matrix u;
  Matrix v;
};

template <std::size_t N>
PadeTerms pade_low(const Matrix& a, const std::array<double, N>& b) {
  // degree N-1: odd coefficients build U, even ones V
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  Matrix power = ident;
  for (std::size_t k = 2; k < N; k += 2) {
    power = power * a2;
    even += b[k] * power;
    if (k + 1 < N) odd += b[k + 1] * power;
  }
  return {a * odd, even};
}

PadeTerms pade13(const Matrix& a) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
      129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
      1323241920.0,        40840800.0,          960960.0,           16380.0,
      182.0,               1.0};
  const Eigen::Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  const Matrix u = a * (inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                   b[0] * ident;
  return {u, v};
}

}  // namespace

Matrix matrix_exp(const Matrix& m) {
  require_square(m, "matrix_exp");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(norm1)) throw Error(ErrorKind::Overflow, "matrix has non-finite entries");

  static constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068e0};
  static constexpr double theta13 = 5.371920351148152;

  PadeTerms terms;
  int squarings = 0;
  if (norm1 <= theta[0]) {
    terms = pade_low(m, std::array<double, 4>{120.0, 60.0, 12.0, 1.0});
  } else if (norm1 <= theta[1]) {
    terms = pade_low(m, std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0});
  } else if (norm1 <= theta[2]) {
    terms = pade_low(m, std::array<double, 8>{17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0,
                                              1512.0, 56.0, 1.0});
  } else if (norm1 <= theta[3]) {
    terms = pade_low(m, std::array<double, 10>{17643225600.0, 8821612800.0, 2075673600.0,
                                               302702400.0, 30270240.0, 2162160.0, 110880.0,
                                               3960.0, 90.0, 1.0});
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
    if (squarings > 1020) throw Error(ErrorKind::Overflow, "matrix norm beyond representable range");
    terms = pade13(m * std::ldexp(1.0, -squarings));
  }
  Matrix result = Eigen::PartialPivLU<Matrix>(terms.v - terms.u).solve(terms.v + terms.u);
  for (int k = 0; k < squarings; ++k) result = result * result;
  if (!result.allFinite()) throw Error(ErrorKind::Overflow, "matrix exponential overflowed");
  return result;
}

// ---------------------------------------------------------------------------

Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

double interior_condition(const Matrix& m, const NodePartition& p) {
  const Matrix inner = submatrix(m, p.beta(), p.beta());
  const Vector s = Eigen::JacobiSVD<Matrix>(inner).singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

Matrix schur_complement(const Matrix& m, const NodePartition& p, double condition_cap) {
  require_square(m, "schur_complement");
  if (m.rows() != p.size()) {
    throw Error(ErrorKind::PreconditionViolated, "partition size does not match matrix dimension");
  }
  const double cond = interior_condition(m, p);
  if (!(cond <= condition_cap)) {
    throw Error(ErrorKind::SingularInterior,
                "interior block is singular or ill-conditioned (cond " + std::to_string(cond) + ")");
  }
  const Matrix m_bb = submatrix(m, p.beta(), p.beta());
  const Matrix m_ab = submatrix(m, p.alpha(), p.beta());
  const Matrix m_ba = submatrix(m, p.beta(), p.alpha());
  return submatrix(m, p.alpha(), p.alpha()) - m_ab * Eigen::PartialPivLU<Matrix>(m_bb).solve(m_ba);
}

bool is_marginally_stable_neg(const Matrix& l, double tol) {
  require_square(l, "is_marginally_stable_neg");
  const Spectrum s = spectrum(l, tol);
  const double bound = s.zero_tol;
  if (s.zero_count() == 0) return false;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.is_zero(i)) continue;
    if (s.values[i].real() <= bound) return false;
  }
  return corank(l, tol) == static_cast<int>(s.zero_count());
}

}  // namespace sll
