#pragma once

#include "sll/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sll {

/// Directed edge src -> dst. It populates adjacency entry a[dst][src].
struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Signed weighted digraph without self-loops or duplicate edges.
class SignedDigraph {
 public:
  /// Validates the edge set; throws Error on the first offending edge.
  /// `lines` optionally carries source line numbers for error reporting.
  SignedDigraph(int n, std::vector<Edge> edges, const std::vector<std::size_t>& lines = {});

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// a[i][j] != 0 iff (j -> i) is an edge.
  Matrix adjacency() const;

  /// Edges sorted by (src, dst); the canonical order used for comparisons.
  std::vector<Edge> sorted_edges() const;

 private:
  int n_;
  std::vector<Edge> edges_;
};

struct StructuralFlags {
  bool weight_balanced = false;
  bool normal = false;
  bool ep = false;
  bool strongly_connected = false;
};

/// Dense Laplacian L = Sigma_in - A with its structural flags.
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(const SignedDigraph& g, const Tolerances& tol = {});

  /// Adopts a matrix that must already have zero row sums (within tol.zero).
  static LaplacianMatrix from_matrix(const Matrix& m, const Tolerances& tol = {});

  const Matrix& entries() const noexcept { return entries_; }
  const StructuralFlags& flags() const noexcept { return flags_; }
  int size() const noexcept { return static_cast<int>(entries_.rows()); }

  operator const Matrix&() const noexcept { return entries_; }

 private:
  LaplacianMatrix(Matrix m, const Tolerances& tol);
  Matrix entries_;
  StructuralFlags flags_;
};

/// Boundary (alpha) / interior (beta) split of the node set, both ascending.
class NodePartition {
 public:
  NodePartition(int n, std::vector<int> alpha);

  const std::vector<int>& alpha() const noexcept { return alpha_; }
  const std::vector<int>& beta() const noexcept { return beta_; }
  int size() const noexcept { return n_; }

  friend bool operator==(const NodePartition&, const NodePartition&) = default;

 private:
  int n_;
  std::vector<int> alpha_;
  std::vector<int> beta_;
};

LaplacianMatrix laplacian(const SignedDigraph& g, const Tolerances& tol = {});

/// Off-diagonal support graph of a Laplacian: edge j -> i for L[i][j] != 0.
SignedDigraph graph_of(const Matrix& l, double drop_below = 0.0);

bool is_weight_balanced(const Matrix& l, double tol = 1e-9);
bool is_strongly_connected(const SignedDigraph& g);
/// Support of the off-diagonal entries, treated as a digraph.
bool is_strongly_connected(const Matrix& l);

Matrix symmetric_part(const Matrix& m);
bool is_normal(const Matrix& m, double tol = 1e-10);
bool is_ep(const Matrix& m, double tol = 1e-9);

/// A >= 0, i.e. every off-diagonal entry of L is <= 0.
bool is_nonnegative_graph(const Matrix& l);
bool is_symmetric(const Matrix& m, double tol);

// Text formats.
SignedDigraph parse_graph(std::string_view text);
std::string serialize_graph(const SignedDigraph& g);
SignedDigraph parse_graph_json(std::string_view text);
std::string serialize_graph_json(const SignedDigraph& g);
Matrix parse_matrix(std::string_view text);
std::string serialize_matrix(const Matrix& m);

}  // namespace sll
