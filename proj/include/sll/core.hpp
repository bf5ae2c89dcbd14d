#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sll {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

enum class ErrorKind {
  // input
  SelfLoop,
  ZeroWeight,
  DuplicateEdge,
  BadIndex,
  MalformedLine,
  // numerical
  NonSquare,
  NoConvergence,
  SingularShift,
  Overflow,
  SingularInterior,
  CrossCheckFailed,
  IllConditionedLyapunov,
  ZeroSpectralRadius,
  // preconditions
  PreconditionViolated,
  NonPositiveRealPart,
  NotUndirected,
  DegeneratePartition,
  GateFailed,
  NotHurwitz,
  TooSmall,
};

enum class ErrorCategory { Input, Numerical, Precondition };

std::string_view to_string(ErrorKind kind);
ErrorCategory category(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  /// 1-based line of the offending input, 0 when not applicable.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

/// Relative tolerances. Absolute thresholds are derived per matrix as
/// rel * max(1, ||M||_F).
struct Tolerances {
  double zero = 1e-9;
  double normal = 1e-10;
  double xcheck = 1e-7;
  double penrose = 1e-8;
  double condition_cap = 1e12;
};

inline double scaled(double rel, const Matrix& m) {
  return rel * std::max(1.0, m.norm());
}

inline void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NonSquare,
                std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

}  // namespace sll
