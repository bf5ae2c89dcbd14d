#pragma once

#include "sll/core.hpp"
#include "sll/graph_model.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace sll::testing {

inline constexpr std::uint64_t kSeed = 20240611;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Sum of weighted directed cycles: every node's in-flow equals its out-flow,
/// so the Laplacian is weight balanced. A Hamiltonian cycle keeps it strongly
/// connected; extra cycles carry signed weights when allow_negative is set.
inline Matrix random_balanced_laplacian(int n, Rng& rng, bool allow_negative = true) {
  Matrix a = Matrix::Zero(n, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const double base = uniform(rng, 0.5, 2.0);
  for (int k = 0; k < n; ++k) a(perm[(k + 1) % n], perm[k]) += base;
  const int extra = uniform_int(rng, 1, n);
  for (int c = 0; c < extra; ++c) {
    const int len = uniform_int(rng, 2, n);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double w = allow_negative ? uniform(rng, -0.4, 1.0) * base : uniform(rng, 0.1, 1.0);
    for (int k = 0; k < len; ++k) a(perm[(k + 1) % len], perm[k]) += w;
  }
  Matrix l = -a;
  l.diagonal().setZero();
  l.diagonal() = -l.rowwise().sum();
  return l;
}

/// Orthogonal matrix whose first column is 1/sqrt(n).
inline Matrix ones_first_orthogonal(int n, Rng& rng) {
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = uniform(rng, -1.0, 1.0);
  g.col(0).setOnes();
  Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  if (q(0, 0) < 0) q.col(0) *= -1.0;
  return q;
}

/// U diag(0, blocks) U^T with U's first column along 1: normal, L1 = L^T 1 = 0,
/// corank 1. Blocks are [[a, b], [-b, a]] or scalars with a > 0.
inline Matrix random_normal_laplacian(int n, Rng& rng) {
  const Matrix u = ones_first_orthogonal(n, rng);
  Matrix d = Matrix::Zero(n, n);
  int k = 1;
  while (k < n) {
    const double re = uniform(rng, 0.2, 2.0);
    if (k + 1 < n && uniform(rng, 0.0, 1.0) < 0.5) {
      const double im = uniform(rng, 0.1, 2.0);
      d(k, k) = re;
      d(k + 1, k + 1) = re;
      d(k, k + 1) = im;
      d(k + 1, k) = -im;
      k += 2;
    } else {
      d(k, k) = re;
      k += 1;
    }
  }
  return u * d * u.transpose();
}

/// Connected undirected graph with a spanning tree of positive edges plus
/// random extra edges, negative with probability neg_prob.
inline Matrix random_symmetric_laplacian(int n, Rng& rng, double neg_prob) {
  Matrix a = Matrix::Zero(n, n);
  for (int v = 1; v < n; ++v) {
    const int u = uniform_int(rng, 0, v - 1);
    const double w = uniform(rng, 0.5, 2.0);
    a(u, v) = a(v, u) = w;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (a(i, j) == 0.0 && uniform(rng, 0.0, 1.0) < 0.3) {
        const double w = uniform(rng, 0.0, 1.0) < neg_prob ? -uniform(rng, 0.05, 0.6) : uniform(rng, 0.2, 2.0);
        a(i, j) = a(j, i) = w;
      }
  Matrix l = -a;
  l.diagonal() = a.rowwise().sum();
  return l;
}

inline SignedDigraph random_digraph(int n, Rng& rng, double density) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && uniform(rng, 0.0, 1.0) < density) {
        double w = uniform(rng, -2.0, 2.0);
        if (w == 0.0) w = 1.0;
        edges.push_back({i, j, w});
      }
  return SignedDigraph(n, std::move(edges));
}

/// Reachability closure by repeated squaring of the boolean support.
inline bool strongly_connected_oracle(const Matrix& adjacency) {
  const Eigen::Index n = adjacency.rows();
  Eigen::MatrixXi reach = Eigen::MatrixXi::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (adjacency(i, j) != 0.0) reach(i, j) = 1;
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (reach(i, k) && reach(k, j)) reach(i, j) = 1;
  return (reach.array() > 0).all();
}

/// Schur complement by eliminating interior nodes one at a time (Gaussian
/// pivoting on each diagonal entry), then restricting to the boundary.
inline Matrix sequential_elimination(Matrix m, const std::vector<int>& alpha, const std::vector<int>& beta) {
  for (int k : beta) {
    const double pivot = m(k, k);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == k) continue;
      const double f = m(i, k) / pivot;
      if (f == 0.0) continue;
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) -= f * m(k, j);
    }
  }
  Matrix out(alpha.size(), alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = 0; j < alpha.size(); ++j) out(i, j) = m(alpha[i], alpha[j]);
  return out;
}

inline double rel_err(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / std::max(1e-300, b.norm());
}

}  // namespace sll::testing
