#include "sll/kron.hpp"

#include "sll/eep.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/spectral.hpp"

#include <algorithm>
#include <set>

namespace sll {

namespace {

void require_undirected(const Matrix& l, double tol, const char* what) {
  require_square(l, what);
  if (!is_symmetric(l, scaled(tol, l))) {
    throw Error(ErrorKind::NotUndirected, std::string(what) + ": Kron reduction needs an undirected graph");
  }
}

NodePartition boundary_from(int n, const std::set<int>& alpha) {
  if (alpha.size() < 2 || static_cast<int>(alpha.size()) >= n) {
    throw Error(ErrorKind::DegeneratePartition,
                "negative-incident boundary has " + std::to_string(alpha.size()) + " of " +
                    std::to_string(n) + " nodes; reduction inapplicable");
  }
  return NodePartition(n, std::vector<int>(alpha.begin(), alpha.end()));
}

}  // namespace

NodePartition negative_incident_boundary(const SignedDigraph& g, double tol) {
  const Matrix a = g.adjacency();
  if (!is_symmetric(a, scaled(tol, a))) {
    throw Error(ErrorKind::NotUndirected, "negative-incident boundary needs an undirected graph");
  }
  std::set<int> alpha;
  for (const Edge& e : g.edges()) {
    if (e.weight < 0.0) {
      alpha.insert(e.src);
      alpha.insert(e.dst);
    }
  }
  return boundary_from(g.size(), alpha);
}

NodePartition negative_incident_boundary(const Matrix& l, double tol) {
  require_undirected(l, tol, "negative_incident_boundary");
  std::set<int> alpha;
  for (int i = 0; i < l.rows(); ++i)
    for (int j = 0; j < l.cols(); ++j)
      if (i != j && -l(i, j) < 0.0) {
        alpha.insert(i);
        alpha.insert(j);
      }
  return boundary_from(static_cast<int>(l.rows()), alpha);
}

KronResult kron_reduce(const Matrix& l, const NodePartition& p, const Tolerances& tol) {
  require_undirected(l, tol.zero, "kron_reduce");
  KronResult result{.l_reduced = schur_complement(l, p, tol.condition_cap), .partition = p};
  // the complement of a symmetric matrix is symmetric up to round-off
  result.l_reduced = symmetric_part(result.l_reduced);
  result.interior_condition = interior_condition(l, p);
  result.interior_pd = Eigen::LLT<Matrix>(submatrix(l, p.beta(), p.beta())).info() == Eigen::Success;
  result.row_sum_residual = result.l_reduced.rowwise().sum().cwiseAbs().maxCoeff();
  const EEPOptions opts{.zero_rel = tol.zero};
  result.preserved_eep = std::pair{certify_eep(l, opts).holds, certify_eep(result.l_reduced, opts).holds};
  return result;
}

KronTheoremReport verify_kron_theorem(const Matrix& l, const NodePartition& p, const Tolerances& tol) {
  const KronResult kr = kron_reduce(l, p, tol);
  KronTheoremReport report;
  report.l_eep = kr.preserved_eep->first;
  report.reduced_eep = kr.preserved_eep->second;
  report.reduced_psd_corank1 = is_psd_corank1(kr.l_reduced, tol.zero);
  report.implication_holds = !report.l_eep || (report.reduced_psd_corank1 && report.reduced_eep);
  report.corank_l = corank(l, tol.zero);
  report.corank_reduced = corank(kr.l_reduced, tol.zero);
  try {
    report.negative_incident = negative_incident_boundary(l, tol.zero) == p;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegeneratePartition) throw;
  }
  if (report.negative_incident) {
    report.equivalence_holds =
        report.l_eep == report.reduced_psd_corank1 && report.reduced_psd_corank1 == report.reduced_eep;
    report.equivalence_source =
        "psd-corank-1 equivalence under negative-incident Kron reduction; checked empirically";
  }
  if (report.l_eep) report.interior_pd_when_eep = kr.interior_pd;
  return report;
}

SignedDigraph reduced_graph(const KronResult& result, double drop_below) {
  return graph_of(result.l_reduced, drop_below);
}

}  // namespace sll
