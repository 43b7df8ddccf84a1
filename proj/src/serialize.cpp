#include "sczech/serialize.hpp"

namespace sczech {

json to_json_value(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json_value(QuadInt z) { return {{"a", z.a}, {"b", z.b}}; }

json to_json_value(const FieldParams& f) {
  json units = json::array();
  for (const auto& u : f.units) units.push_back(to_json_value(u));
  return {{"d_K", f.d_K},
          {"omega", to_json_value(f.omega)},
          {"trace_w", f.trace},
          {"norm_w", f.norm_w},
          {"area", f.area},
          {"units", units}};
}

json to_json_value(const SL2Matrix& m) {
  return {{"a", to_json_value(m.a)}, {"b", to_json_value(m.b)}, {"c", to_json_value(m.c)}, {"d", to_json_value(m.d)}};
}

json to_json_value(const IdealHNF& h) { return {{"h11", h.h11}, {"h12", h.h12}, {"h22", h.h22}}; }

json to_json_value(const DualLatticeBasis& b) { return {{"m1", to_json_value(b.m1)}, {"m2", to_json_value(b.m2)}}; }

json to_json_value(const IdentityRecord& r) {
  return {{"c", to_json_value(r.c)},
          {"r", r.r},
          {"m", r.m},
          {"n", r.m},  // m = n
          {"alpha", r.alpha},
          {"convention", std::string(to_string(r.convention))},
          {"lhs", to_json_value(r.lhs)},
          {"rhs", to_json_value(r.rhs)},
          {"residual", r.residual},
          {"rhs_unshifted", to_json_value(r.rhs_unshifted)},
          {"residual_unshifted", r.residual_unshifted}};
}

json to_json_value(const ConventionSweep& s) {
  json rows = json::array();
  for (std::size_t k = 0; k < kAllConventions.size(); ++k) {
    rows.push_back({{"name", std::string(to_string(kAllConventions[k]))},
                    {"identity_residual", s.identity_residual[k]},
                    {"invariance_residual", s.invariance_residual[k]},
                    {"admissible", s.admissible[k]}});
  }
  return {{"selected", std::string(to_string(s.selected))},
          {"max_norm", s.max_norm},
          {"r_values", s.r_values},
          {"candidates", rows}};
}

json to_json_value(const Theorem2Probe& p) {
  json partial = json::array();
  for (const auto& a : p.partial) partial.push_back(to_json_value(a));
  return {{"m", to_json_value(p.m)},
          {"n", to_json_value(p.n)},
          {"alpha", to_json_value(p.alpha)},
          {"convention", std::string(to_string(p.convention))},
          {"pm_weighting", "one c per pair {c, -c}"},
          {"x", p.x},
          {"partial", partial},
          {"exponent", p.exponent},
          {"intercept", p.intercept},
          {"residuals", p.residuals}};
}

json to_json_value(const CountRecord& r) {
  return {{"X", r.X},
          {"N_X", r.N_X},
          {"pair_count", r.pair_count},
          {"predicted_prop", r.predicted_prop},
          {"predicted_nx", r.predicted_nx},
          {"predicted_cosets", r.predicted_cosets},
          {"ratio_prop", r.ratio_prop},
          {"ratio_nx", r.ratio_nx},
          {"ratio_cosets", r.ratio_cosets},
          {"pair_ratio_prop", r.pair_ratio_prop},
          {"pair_ratio_nx", r.pair_ratio_nx}};
}

json to_json_value(const WeylSumRecord& r) {
  return {{"d_K", r.d_K},
          {"X", r.X},
          {"r", r.r},
          {"n", r.mode},
          {"sum", to_json_value(r.sum)},
          {"count", r.count},
          {"normalized", to_json_value(r.normalized)}};
}

json to_json_value(const EquidistPoint& p) {
  json modes = json::array();
  for (std::size_t i = 0; i < p.modes.size(); ++i)
    modes.push_back({{"n", i + 1}, {"re", p.modes[i].real()}, {"im", p.modes[i].imag()}});
  return {{"X", p.X}, {"count", p.count}, {"discrepancy", p.discrepancy}, {"histogram", p.histogram.bins}, {"modes", modes}};
}

json to_json_value(const PhiTildeDistribution& d) {
  auto tally = [](const PhiTildeDistribution::Tally& t) {
    return json{{"count", t.count}, {"integral", t.integral}, {"multiple_of_step", t.multiple_of_step},
                {"min", t.min}, {"max", t.max}};
  };
  return {{"step", d.step}, {"tol", d.tol}, {"nonzero_c", tally(d.nonzero_c)}, {"translations", tally(d.translations)}};
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace sczech
