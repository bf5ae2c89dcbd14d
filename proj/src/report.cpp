#include "sll/report.hpp"

namespace sll {

using json = Json;

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& z : values) out.push_back({z.real(), z.imag()});
  return out;
}

json to_json(const Spectrum& s) {
  return {{"values", to_json(s.values)}, {"zero_indices", s.zero_indices}, {"zero_tol", s.zero_tol}};
}

json to_json(const StructuralFlags& f) {
  return {{"weight_balanced", f.weight_balanced},
          {"normal", f.normal},
          {"ep", f.ep},
          {"strongly_connected", f.strongly_connected}};
}

json to_json(const PFCertificate& c) {
  return {{"holds", c.holds},
          {"rho", c.rho},
          {"dominance_gap", c.dominance_gap},
          {"right_vec_min", c.right_vec_min},
          {"left_vec_min", c.left_vec_min},
          {"simple", c.simple}};
}

std::string_view to_string(StabilityLinkage linkage) {
  switch (linkage) {
    case StabilityLinkage::Consistent: return "consistent";
    case StabilityLinkage::Inconsistent: return "inconsistent";
    case StabilityLinkage::NotApplicable: return "not_applicable";
  }
  return "unknown";
}

std::string_view to_string(ResistanceGate gate) {
  return gate == ResistanceGate::NormalEEP ? "normal_eep" : "nonnegative_weight_balanced";
}

json to_json(const EEPCertificate& c) {
  return {{"holds", c.holds},
          {"d_star", c.d_star ? json(*c.d_star) : json(nullptr)},
          {"d_used", c.d_used},
          {"pf_forward", to_json(c.pf_forward)},
          {"pf_transpose", to_json(c.pf_transpose)},
          {"corank", c.corank},
          {"weight_balanced", c.weight_balanced},
          {"marginally_stable", c.marginally_stable},
          {"stability_linkage", std::string(to_string(c.linkage))},
          {"empirical_t0", c.empirical_t0 ? json(*c.empirical_t0) : json(nullptr)}};
}

json to_json(const PinvIdentities& id) {
  return {{"eq1_LLdagger_is_Pi", {{"ok", id.eq1}, {"residual", id.eq1_residual}}},
          {"eq2_kernel_is_ones", {{"ok", id.eq2}, {"residual", id.eq2_residual}}},
          {"eq3_Pi_invariance", {{"ok", id.eq3}, {"residual", id.eq3_residual}}},
          {"eq4_shifted_formula", {{"ok", id.eq4}, {"residual", id.eq4_residual}}}};
}

json to_json(const ClosureReport& r) {
  json out = {{"l_dagger", to_json(r.l_dagger)},
              {"identities", to_json(r.identities)},
              {"involution", {{"ok", r.involution_ok}, {"residual", r.involution_residual}}},
              {"eep_preserved", {r.eep_preserved.first, r.eep_preserved.second}},
              {"eep_l", to_json(r.eep_l)},
              {"eep_l_dagger", to_json(r.eep_dagger)},
              {"normal_preserved", nullptr},
              {"corank_pair", {r.corank_pair.first, r.corank_pair.second}},
              {"l_dagger_spectrum", to_json(r.dagger_spectrum)},
              {"sym_spectrum", to_json(r.sym_spectrum)},
              {"l_dagger_sym_spectrum", to_json(r.dagger_sym_spectrum)},
              {"sym_psd_corank1", r.sym_psd_corank1},
              {"l_dagger_sym_psd_corank1", r.dagger_sym_psd_corank1},
              {"psd_without_normality", r.psd_without_normality},
              {"noncommutation_gap", r.noncommutation_gap}};
  if (r.normal_preserved) out["normal_preserved"] = {r.normal_preserved->first, r.normal_preserved->second};
  return out;
}

json to_json(const KronResult& r) {
  json out = {{"l_reduced", to_json(r.l_reduced)},
              {"alpha", r.partition.alpha()},
              {"beta", r.partition.beta()},
              {"interior_pd", r.interior_pd},
              {"interior_condition", r.interior_condition},
              {"row_sum_residual", r.row_sum_residual},
              {"preserved_eep", nullptr}};
  json mapping = json::array();
  for (std::size_t k = 0; k < r.partition.alpha().size(); ++k)
    mapping.push_back({{"old", r.partition.alpha()[k]}, {"new", k}});
  out["index_map"] = std::move(mapping);
  if (r.preserved_eep) out["preserved_eep"] = {r.preserved_eep->first, r.preserved_eep->second};
  return out;
}

json to_json(const KronTheoremReport& r) {
  json out = {{"l_eep", r.l_eep},
              {"reduced_psd_corank1", r.reduced_psd_corank1},
              {"reduced_eep", r.reduced_eep},
              {"implication_holds", r.implication_holds},
              {"negative_incident_partition", r.negative_incident},
              {"equivalence_holds", nullptr},
              {"interior_pd_when_eep", nullptr},
              {"corank_l", r.corank_l},
              {"corank_reduced", r.corank_reduced}};
  if (r.equivalence_holds) {
    out["equivalence_holds"] = *r.equivalence_holds;
    out["equivalence_source"] = r.equivalence_source;
  }
  if (r.interior_pd_when_eep) out["interior_pd_when_eep"] = *r.interior_pd_when_eep;
  return out;
}

json to_json(const ResistanceReport& r) {
  return {{"r_matrix", to_json(r.r_matrix)},
          {"r_tot", r.r_tot},
          {"r_tot_trace", r.r_tot_trace},
          {"k_f_lyapunov", r.k_f_lyapunov ? json(*r.k_f_lyapunov) : json(nullptr)},
          {"k_f_spectral", r.k_f_spectral ? json(*r.k_f_spectral) : json(nullptr)},
          {"gate", std::string(to_string(r.gate))},
          {"pairwise_deviation", r.pairwise_deviation},
          {"metric_ok", r.metric_ok},
          {"edm_ok", r.edm_ok}};
}

}  // namespace sll
