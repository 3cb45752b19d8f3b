#include "dgh/serialize.hpp"

#include "dgh/errors.hpp"

namespace dgh {

json to_json(const ReducedParams& r) { return {{"C1", r.C1}, {"C2", r.C2}}; }

json to_json(const PhysicalParams& p) {
  return {{"alpha", p.alpha}, {"omega", p.omega}, {"gamma", p.gamma}, {"c", p.c}};
}

json to_json(const CubicRoots& c) { return {{"phi1", c.phi1}, {"phi2", c.phi2}, {"phi3", c.phi3}}; }

json to_json(const PeriodResult& p) {
  return {{"L", p.L}, {"est_error", p.est_error}, {"nodes_used", p.nodes_used}};
}

json to_json(const ChiconeWitness& w) {
  return {{"Q", w.Q},
          {"beta", w.beta},
          {"eta", w.eta},
          {"x1", w.x1},
          {"x2", w.x2},
          {"x3", w.x3},
          {"min_R_on_range", w.min_R_on_range},
          {"min_Wpp_on_range", w.min_Wpp_on_range},
          {"S_value", w.S_value},
          {"N_value", w.N_value},
          {"n_samples", w.n_samples}};
}

json to_json(const MonotonicityTable& t) {
  json s = json::array();
  for (std::size_t k = 0; k < t.param.size(); ++k)
    s.push_back({{"param", t.param[k]}, {"L", t.L[k]}, {"est_error", t.est_error[k]}});
  return {{"axis", std::string(to_string(t.axis))},
          {"fixed", t.fixed},
          {"samples", s},
          {"verdict", std::string(to_string(t.verdict))},
          {"min_abs_diff", t.min_abs_diff},
          {"max_est_error", t.max_est_error}};
}

json to_json(const Profile& p) {
  return {{"params", to_json(p.params)},
          {"C3", p.C3},
          {"b", p.b},
          {"period_z", p.period_z},
          {"grid_n", p.n()},
          {"phi", p.phi},
          {"dphi", p.dphi},
          {"provenance", std::string(to_string(p.provenance))}};
}

Profile profile_from_json(const json& j) {
  Profile p;
  try {
    p.params = {j.at("params").at("C1").get<double>(), j.at("params").at("C2").get<double>()};
    p.C3 = j.at("C3").get<double>();
    p.b = j.at("b").get<double>();
    p.period_z = j.at("period_z").get<double>();
    p.phi = j.at("phi").get<std::vector<double>>();
    p.dphi = j.at("dphi").get<std::vector<double>>();
    std::string prov = j.at("provenance").get<std::string>();
    if (prov == "Numeric") p.provenance = Provenance::Numeric;
    else if (prov == "PeakedClosedForm") p.provenance = Provenance::PeakedClosedForm;
    else if (prov == "Constant") p.provenance = Provenance::Constant;
    else fail(ErrorCode::InvalidArgument, "unknown provenance '" + prov + "'");
    if (j.at("grid_n").get<int>() != p.n() || p.dphi.size() != p.phi.size())
      fail(ErrorCode::InvalidArgument, "profile arrays disagree with grid_n");
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed profile JSON: ") + e.what());
  }
  return p;
}

json to_json(const ConservedQuantities& c) {
  return {{"M", c.M}, {"E", c.E}, {"F", c.F}, {"physical", to_json(c.physical)}};
}

json to_json(const InertiaCounts& c) {
  return {{"n_neg", c.n_neg},
          {"n_zero", c.n_zero},
          {"n_pos", c.n_pos},
          {"zero_tol", c.zero_tol},
          {"lowest", c.lowest},
          {"first_positive", c.first_positive}};
}

json to_json(const OrbitalCheck& o) {
  return {{"cond_b", o.cond_b},
          {"cond_sign", o.cond_sign},
          {"cond_M", o.cond_M},
          {"cond_period", o.cond_period},
          {"sign_value", o.sign_value},
          {"M", o.M},
          {"dL_dC3", o.dL_dC3},
          {"LYY", o.LYY},
          {"LYY_expansion", o.LYY_expansion},
          {"LYY_expansion_verbatim", o.LYY_expansion_verbatim},
          {"LY_max_diff", o.LY_max_diff},
          {"verdict", o.verdict}};
}

json to_json(const StabilityReport& s) {
  auto m2 = [](const double (&a)[2][2]) {
    return json::array({json::array({a[0][0], a[0][1]}), json::array({a[1][0], a[1][1]})});
  };
  return {{"params", to_json(s.params)},
          {"physical", to_json(s.physical)},
          {"L_target", s.L_target},
          {"C3", s.C3},
          {"b", s.b},
          {"grid_n", s.grid_n},
          {"grid_n_check", 2 * s.grid_n},
          {"tolerances",
           {{"h_C3", s.h_C3},
            {"h_C1", s.h_C1},
            {"zero_tol_L", s.inertiaL.zero_tol},
            {"zero_tol_M", s.inertiaM.zero_tol},
            {"jl_tol", s.jl_tol},
            {"jl_tol_2n", s.jl_tol_2n},
            {"S_zero_rel", 1e-8},
            {"theta_ode_tol", 1e-10}}},
          {"theta", s.theta},
          {"dL_dC3", s.dL_dC3},
          {"dL_db", s.dL_db},
          {"inertiaL", to_json(s.inertiaL)},
          {"inertiaM", to_json(s.inertiaM)},
          {"S_matrix", m2(s.S)},
          {"S_direct", m2(s.S_direct)},
          {"detS", s.detS},
          {"n0", s.n0},
          {"z0", s.z0},
          {"n_constrained", s.n_constrained},
          {"z_constrained", s.z_constrained},
          {"n_constrained_direct", s.n_constrained_direct},
          {"z_constrained_direct", s.z_constrained_direct},
          {"M_L", s.M_L},
          {"E_L", s.E_L},
          {"F_L", s.F_L},
          {"dFM3_dC3", s.dFM3_dC3},
          {"criterion_sign_agrees", s.criterion_sign_agrees},
          {"kernel_residual", s.kernel_residual},
          {"db_residual", s.db_residual},
          {"dc_residual", s.dc_residual},
          {"max_re_JL", s.max_re_JL},
          {"max_re_JL_2n", s.max_re_JL_2n},
          {"jl_stable", s.jl_stable},
          {"spectral_verdict", s.spectral_verdict},
          {"orbital", to_json(s.orbital)}};
}

}  // namespace dgh
