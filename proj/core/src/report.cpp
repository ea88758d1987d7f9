#include "nijenhuis/report.hpp"

namespace nijenhuis {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RatVec& v) {
  Json arr = Json::array();
  for (const auto& c : v) arr.push_back(to_string(c));
  return arr;
}

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const SymPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponent", e}, {"coefficient", to_string(c)}});
  return Json{{"text", p.to_string()}, {"terms", terms}};
}

Json catalog_entry(const SpaceDescriptor& space) {
  const auto& sys = space.system();
  Json j;
  j["space"] = space.name();
  j["family"] = to_string(space.tag().kind);
  j["algebra"] = space.algebra();
  j["root_system"] = sys.name();
  j["k_phi"] = space.k_phi_label();
  j["rank"] = space.rank();
  j["phi"] = to_json(space.phi().vec);
  j["compact_positive"] = space.compact_positive().size();
  j["noncompact_positive"] = space.noncompact_positive().size();
  j["rho_phi"] = to_json(space.rho_phi_coords());
  j["rho_phi_norm"] = to_json(rho_phi_norm(space));
  Json pset = Json::array();
  for (auto r : maximal_orthogonal_set(space).roots) pset.push_back(to_json(sys.roots()[r].vec));
  j["p_phi"] = pset;
  const ThimmChain chain = thimm_chain(space);
  Json levels = Json::array();
  for (const auto& l : chain.levels) levels.push_back(Json{{"label", l.label}, {"roots", l.roots.size()}});
  j["chain"] = levels;
  j["chain_truncated"] = chain.truncated;
  return j;
}

Json minimality_json(const SpaceDescriptor& space, const MatrixRep& rep, const MinimalityVerdict& v,
                     const std::optional<ChainMinimality>& chain) {
  Json j;
  j["space"] = space.name();
  j["rep"] = rep.label();
  j["dim"] = rep.dim();
  j["minimal"] = v.is_minimal;
  j["lambda_phi"] = Json{{"re", "0"}, {"im", to_string(v.lambda_phi_im)}};
  j["levels"] = v.num_levels;
  j["dim_plus"] = v.dim_plus;
  j["dim_minus"] = v.dim_minus;
  j["top_components"] = v.top_components;
  Json eig = Json::array();
  for (const auto& e : v.eigenvalues_im) eig.push_back(to_string(e));
  j["eigenvalues_im"] = eig;
  j["quadratic_residual"] = v.quadratic_residual;
  j["witness"] = v.witness;
  if (chain) {
    Json levels = Json::array();
    for (const auto& l : chain->levels)
      levels.push_back(Json{{"label", l.label},
                            {"w_plus", l.w_plus.size()},
                            {"w_minus", l.w_minus.size()},
                            {"invariant", l.invariant},
                            {"block_shape", l.block_shape},
                            {"minimal", l.minimal},
                            {"detail", l.detail}});
    j["chain"] = Json{{"all_minimal", chain->all_minimal}, {"levels", levels}};
  }
  return j;
}

Json nogo_json(const NogoCertificate& cert) {
  Json j;
  j["system"] = cert.system;
  j["space"] = cert.space;
  j["bounds"] = cert.scan.bounds;
  j["candidates"] = cert.scan.candidates;
  const auto space = build_space({parse_space_kind(cert.space), 0, 0});
  const auto& roots = space.system().roots();
  Json survivors = Json::array();
  for (const auto& e : cert.entries) {
    Json s;
    s["labels"] = e.survivor.labels.labels;
    s["weight"] = to_json(e.survivor.weight);
    if (e.survivor.trivial) {
      s["witness"] = "trivial";
    } else if (e.witness) {
      s["witness"] = Json{{"alpha", to_json(roots[e.witness->first].vec)}, {"beta", to_json(roots[e.witness->second].vec)}};
    } else {
      s["witness"] = nullptr;
    }
    survivors.push_back(s);
  }
  j["survivors"] = survivors;
  j["verdict"] = cert.no_minimal_rep ? "none exist" : "undecided";
  return j;
}

Json suite_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["space"] = r.space;
  j["rep"] = r.rep;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["max_residual"] = r.max_residual;
  j["pass"] = r.pass;
  j["mutation"] = r.mutation;
  if (r.fd_max_disagreement) j["fd_max_disagreement"] = *r.fd_max_disagreement;
  Json b = Json::array();
  for (const auto& item : r.breakdown)
    b.push_back(Json{{"identity", item.identity}, {"level", item.level}, {"residual", item.residual}});
  j["breakdown"] = b;
  j["notes"] = r.notes;
  return j;
}

Json symbolic_json(const SymbolicCertificate& cert) {
  Json j;
  j["space"] = cert.space;
  Json c = Json::array();
  for (const auto& x : cert.constants.c) c.push_back(to_string(x));
  j["constants"] = Json{{"c", c}, {"rho_phi_norm", to_string(cert.constants.rho_norm)}, {"p_phi", cert.constants.roots}};
  Json checks = Json::array();
  for (const auto& k : cert.checks) checks.push_back(Json{{"identity", k.name}, {"residual", k.residual}, {"holds", k.holds}});
  j["checks"] = checks;
  if (cert.membership) {
    const auto& m = *cert.membership;
    Json mj;
    mj["member"] = m.member;
    mj["max_degree"] = m.max_degree;
    Json products = Json::array();
    for (const auto& p : m.products) products.push_back(Json{{"powers", p.powers}, {"value", p.value.to_string()}});
    mj["products"] = products;
    if (m.member) {
      Json comb = Json::array();
      for (const auto& x : m.combination) comb.push_back(to_string(x));
      mj["combination"] = comb;
    } else {
      Json f = Json::array();
      for (const auto& [e, v] : m.functional) f.push_back(Json{{"exponent", e}, {"value", to_string(v)}});
      mj["separating_functional"] = f;
      mj["functional_on_target"] = to_string(m.functional_on_target);
    }
    j["membership"] = mj;
  }
  j["notes"] = cert.notes;
  j["pass"] = cert.pass;
  return j;
}

Json spectrum_json(const SpectrumReport& r, const OrbitSample& sample) {
  Json j;
  j["slice"] = sample.slice;
  Json eig = Json::array();
  for (auto z : r.eigenvalues) eig.push_back(to_json(z));
  j["eigenvalues"] = eig;
  j["predicted"] = r.predicted;
  j["minus_two_f"] = r.minus_two_f;
  j["max_mismatch"] = r.max_mismatch;
  j["contains_minus_two_f"] = r.contains_minus_two_f;
  return j;
}

Json envelope(const std::string& command, Json config, Json result) {
  Json j;
  j["report_version"] = kReportVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  return j;
}

}  // namespace nijenhuis
