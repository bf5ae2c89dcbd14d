#pragma once

#include "sll/core.hpp"
#include "sll/graph_model.hpp"

#include <optional>
#include <string>
#include <utility>

namespace sll {

struct KronResult {
  Matrix l_reduced;
  NodePartition partition;
  bool interior_pd = false;
  double interior_condition = 0.0;
  /// certify_eep verdicts for (L, L_r).
  std::optional<std::pair<bool, bool>> preserved_eep;
  /// ||L_r 1||_inf.
  double row_sum_residual = 0.0;
};

struct KronTheoremReport {
  bool l_eep = false;               // (i) -L eventually exponentially positive
  bool reduced_psd_corank1 = false;  // (ii) L_r psd of corank 1
  bool reduced_eep = false;         // (iii) -L_r eventually exponentially positive
  bool implication_holds = false;   // (i) => (ii) and (iii)
  bool negative_incident = false;   // partition is the negative-incident boundary
  std::optional<bool> equivalence_holds;
  std::optional<bool> interior_pd_when_eep;
  int corank_l = 0;
  int corank_reduced = 0;
  std::string equivalence_source;
};

/// Nodes touching at least one negatively weighted edge form the boundary.
NodePartition negative_incident_boundary(const SignedDigraph& g, double tol = 1e-9);
NodePartition negative_incident_boundary(const Matrix& l, double tol = 1e-9);

KronResult kron_reduce(const Matrix& l, const NodePartition& p, const Tolerances& tol = {});

KronTheoremReport verify_kron_theorem(const Matrix& l, const NodePartition& p, const Tolerances& tol = {});

/// Reduced graph on boundary indices 0..|alpha|-1 (both edge directions);
/// entries with |w| <= drop_below are omitted.
SignedDigraph reduced_graph(const KronResult& result, double drop_below);

}  // namespace sll
