#include "bgctl/report.hpp"

#include <charconv>
#include <cmath>

namespace bgctl {

namespace {
json number(double v) {
  if (std::isfinite(v)) return v;
  // JSON has no inf/nan
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json optional_number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }
}  // namespace

const char* version() { return BGCTL_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json provenance(const std::string& command, const json& parameters) {
  return json{{"tool", "bgctl"}, {"version", version()}, {"command", command}, {"parameters", parameters}};
}

void write_csv_header(std::ostream& os, const std::string& command, const json& parameters) {
  os << "# bgctl " << version() << ' ' << command << '\n';
  for (const auto& [k, v] : parameters.items()) os << "# " << k << '=' << v.dump() << '\n';
}

json to_json(const ControlPlan& plan) {
  json j;
  j["n"] = plan.n;
  j["T"] = plan.T;
  if (plan.crown) j["crown"] = {{"a", plan.crown->a}, {"b", plan.crown->b}};
  else {
    json parts = json::array();
    for (const auto& p : plan.region.parts()) parts.push_back({p.lo, p.hi});
    j["crown"] = nullptr;
    j["region"] = parts;
  }
  j["lambdas"] = numbers(plan.lambdas());
  j["alphas"] = numbers(plan.alphas);
  json dual = json::array();
  const auto D = plan.family.dual_coeffs();
  for (Eigen::Index r = 0; r < D.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < D.cols(); ++c) row.push_back(number(D(r, c)));
    dual.push_back(row);
  }
  j["dual_coeffs"] = dual;
  j["cost"] = number(plan.cost);
  j["terminal_residual"] = number(plan.terminal_residual);
  j["moment_residual"] = number(plan.moment_residual);
  j["leakage"] = number(plan.leakage);
  j["masses"] = numbers(plan.masses);
  j["precision"] = to_string(plan.family.precision);
  j["quiet_window"] = plan.family.family.quiet;
  j["condition_estimate"] = number(plan.family.condition_estimate);
  j["biorthogonality_residual"] = number(plan.family.residual);
  return j;
}

json to_json(const SweepReport& rep) {
  json fits = json::array();
  for (const auto& f : rep.fits)
    fits.push_back({{"T", f.T}, {"points", f.points}, {"slope", number(f.slope)}, {"rate", number(f.rate)},
                    {"power", number(f.power)}, {"ok", f.ok}});
  int failures = 0;
  for (const auto& p : rep.points) failures += p.ok() ? 0 : 1;
  return json{{"a", rep.a},
              {"T_hat", optional_number(rep.T_hat)},
              {"T_hat_linear", optional_number(rep.T_hat_linear)},
              {"theoretical_T_min", rep.theoretical_T_min},
              {"n_max", rep.n_max},
              {"N", rep.N},
              {"fit_from", rep.options.fit_from},
              {"failed_points", failures},
              {"fits", fits}};
}

json to_json(const CarlemanAudit& a) {
  return json{{"b_prime", a.b_prime},
              {"construction", to_string(a.kind)},
              {"grid_points", a.grid_points},
              {"max_junction_jump", number(a.max_junction_jump)},
              {"min_beta", number(a.min_beta)},
              {"min_monotone", number(a.min_monotone)},
              {"min_monotone_x", a.min_monotone_x},
              {"min_sin_sign", number(a.min_sin_sign)},
              {"min_sin_sign_x", a.min_sin_sign_x},
              {"junctions_ok", a.junctions_ok()},
              {"lower_bound_ok", a.lower_bound_ok()},
              {"monotone_ok", a.monotone_ok()},
              {"sin_sign_ok", a.sin_sign_ok()},
              {"pass", a.pass()}};
}

json to_json(const CompositionResult& r) {
  return json{{"n", r.n},
              {"a", r.crown.a},
              {"b", r.crown.b},
              {"c1", r.profile.c1},
              {"c2", r.profile.c2},
              {"T", r.T},
              {"norm0", number(r.norm0)},
              {"sup_control", number(r.sup_control)},
              {"max_violation", number(r.max_violation)},
              {"summand_violation", numbers({r.summand_violation.begin(), r.summand_violation.end()})},
              {"initial_error", number(r.initial_error)},
              {"terminal_norm", number(r.terminal_norm)},
              {"pde_residual", number(r.pde_residual)},
              {"pde_stencils", r.pde_stencils},
              {"pde_skipped", r.pde_skipped},
              {"right_cost", number(r.right.cost)},
              {"left_cost", number(r.left.cost)}};
}

json to_json(const ObservabilityResult& r) {
  return json{{"n", r.n}, {"ell_max", r.ell_max}, {"T", r.T}, {"constant", number(r.constant)},
              {"b_condition", number(r.b_condition)}};
}

json to_json(const DissipationReport& r) {
  return json{{"n", r.n},
              {"ell_max", r.ell_max},
              {"t", r.t},
              {"T", r.T},
              {"bound", number(r.bound)},
              {"bottom_ratio", number(r.bottom_ratio)},
              {"worst_basis_ratio", number(r.worst_basis_ratio)},
              {"worst_random_ratio", number(r.worst_random_ratio)},
              {"random_samples", r.random_samples},
              {"strict_above_bottom", r.strict_above_bottom},
              {"holds", r.holds()}};
}

json to_json(const SSeriesReport& r) {
  return json{{"n", r.n},          {"T", r.T},         {"eps", r.eps},
              {"beta", r.beta},    {"a", r.a},         {"terms", r.terms},
              {"S", number(r.value())}, {"majorant", number(r.majorant())}, {"converged", r.converged}};
}

json to_json(const GapAuditReport& r) {
  json tail = json::array();
  for (const auto& t : r.tail) tail.push_back({{"eta", t.eta}, {"N_eta", t.n_eta}, {"certified", t.certified}});
  return json{{"n", r.n},
              {"count", r.count},
              {"first", r.first},
              {"min_gap", r.min_gap},
              {"gaps_ok", r.gaps_ok},
              {"tail", tail},
              {"ok", r.ok()}};
}

void write_sweep_rows(std::ostream& os, const SweepReport& rep) {
  os << "T,n,cost,cond,residual\n";
  for (const auto& p : rep.points)
    os << format_number(p.T) << ',' << p.n << ',' << format_number(p.cost) << ',' << format_number(p.cond) << ','
       << format_number(p.residual) << '\n';
}

void write_mass_bound_rows(std::ostream& os, const std::vector<MassBoundReport>& rows) {
  os << "ell,n,a,lhs,rhs,holds\n";
  for (const auto& r : rows)
    os << r.ell << ',' << r.n << ',' << format_number(r.a) << ',' << format_number(r.lhs) << ','
       << format_number(r.rhs) << ',' << (r.holds ? "true" : "false") << '\n';
}

void write_control_samples(std::ostream& os, const CompositionResult& res) {
  os << "t,x,value\n";
  if (res.samples.empty()) return;
  for (std::size_t i = 0; i < res.times.size(); ++i)
    for (std::size_t j = 0; j < res.xs.size(); ++j)
      os << format_number(res.times[i]) << ',' << format_number(res.xs[j]) << ','
         << format_number(res.samples[i * res.xs.size() + j]) << '\n';
}

}  // namespace bgctl
