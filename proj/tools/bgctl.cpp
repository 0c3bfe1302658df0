// bgctl: command-line driver for the mode-wise control and verification pipelines.
//
// Exit codes: 0 success, 1 a verification or synthesis failure, 2 usage.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgctl/carleman.hpp"
#include "bgctl/cutoff.hpp"
#include "bgctl/errors.hpp"
#include "bgctl/legendre.hpp"
#include "bgctl/mass_bounds.hpp"
#include "bgctl/moments.hpp"
#include "bgctl/observability.hpp"
#include "bgctl/report.hpp"
#include "bgctl/spectral.hpp"
#include "bgctl/sweep.hpp"

namespace {

using bgctl::json;
constexpr double kHalfPi = std::numbers::pi / 2;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

// Writes to --out when given, stdout otherwise. The file is only created once
// the command has produced its result.
class Sink {
public:
  explicit Sink(const std::string& path) : path_(path) {}
  std::ostream& stream() {
    if (path_.empty()) return std::cout;
    if (!file_) {
      file_ = std::make_unique<std::ofstream>(path_, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path_);
    }
    return *file_;
  }

private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

void emit_json(const std::string& path, const json& j) { Sink(path).stream() << j.dump(2) << '\n'; }

double scalar_time(const std::string& spec) {
  const auto grid = bgctl::parse_grid(spec);
  require(grid.size() == 1, "--t must be a single value for this command");
  return grid.front();
}

bgctl::Precision precision(const std::string& s) {
  try {
    return bgctl::precision_from_string(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("--precision must be double or dd");
  }
}

// ---- eigs -------------------------------------------------------------------

struct EigsArgs {
  int n = 1;
  int ell_max = 10;
  std::string out;
};

int run_eigs(const EigsArgs& a) {
  require(a.n >= 0, "--n must be >= 0");
  require(a.ell_max >= a.n, "--ell-max must be >= --n");
  const auto res = bgctl::orthonormality_residuals(a.n, a.ell_max);
  Sink sink(a.out);
  auto& os = sink.stream();
  bgctl::write_csv_header(os, "eigs", {{"n", a.n}, {"ell_max", a.ell_max}});
  os << "ell,n,lambda,orthonormality_residual\n";
  for (int ell = a.n; ell <= a.ell_max; ++ell)
    os << ell << ',' << a.n << ',' << bgctl::eigenvalue_exact({ell, a.n}) << ','
       << bgctl::format_number(res[static_cast<std::size_t>(ell - a.n)]) << '\n';
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  int ell_max = 30;
  int n_max = 15;
  int m_max = 40;
  int trunc = 12;
  std::vector<double> angles;
  std::string table;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  require(a.n_max >= 1, "--n-max must be >= 1");
  require(a.ell_max >= a.n_max, "--ell-max must be >= --n-max");
  require(a.m_max >= 0, "--m-max must be >= 0");
  require(a.trunc >= 2, "--trunc must be >= 2");
  std::vector<double> angles = a.angles;
  if (angles.empty()) angles = {0.0, std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3, 1.4, kHalfPi};
  for (double x : angles) require(x >= 0.0 && x <= kHalfPi, "--a must lie in [0, pi/2]");

  const json params{{"ell_max", a.ell_max}, {"n_max", a.n_max}, {"m_max", a.m_max}, {"trunc", a.trunc},
                    {"angles", angles}};
  std::vector<std::string> failed;

  const auto rows = bgctl::verify_mass_bound_grid(a.ell_max, a.n_max, angles);
  int mass_failures = 0;
  double worst_ratio = INFINITY;
  for (const auto& r : rows) {
    if (!r.holds) {
      ++mass_failures;
      failed.push_back("mass_bound(ell=" + std::to_string(r.ell) + ",n=" + std::to_string(r.n) +
                       ",a=" + bgctl::format_number(r.a) + ")");
    }
    if (r.rhs > 0.0) worst_ratio = std::min(worst_ratio, r.ratio());
  }

  const auto comb = bgctl::combinatorial_suite(a.n_max, a.m_max);
  failed.insert(failed.end(), comb.failed.begin(), comb.failed.end());

  json gaps = json::array();
  int gap_failures = 0;
  for (int n = 1; n <= a.n_max; ++n) {
    const auto rep = bgctl::gap_audit(bgctl::ExponentialFamily::for_mode(n, a.trunc, 1.0));
    if (!rep.ok()) {
      ++gap_failures;
      failed.push_back("gap_audit(n=" + std::to_string(n) + ")");
    }
    gaps.push_back(bgctl::to_json(rep));
  }

  if (!a.table.empty()) {
    Sink sink(a.table);
    bgctl::write_csv_header(sink.stream(), "verify", params);
    bgctl::write_mass_bound_rows(sink.stream(), rows);
  }

  const int checked = static_cast<int>(rows.size()) + comb.checked + a.n_max;
  const int failures = mass_failures + comb.failures + gap_failures;
  json j = bgctl::provenance("verify", params);
  j["checked"] = checked;
  j["failures"] = failures;
  j["failed"] = failed;
  j["mass_bound"] = {{"checked", rows.size()},
                     {"failures", mass_failures},
                     {"min_ratio", std::isfinite(worst_ratio) ? json(worst_ratio) : json(nullptr)}};
  j["combinatorial"] = {{"checked", comb.checked}, {"failures", comb.failures}};
  j["gap_audit"] = gaps;
  emit_json(a.out, j);
  for (const auto& f : failed) std::cerr << "FAILED " << f << '\n';
  return failures == 0 ? 0 : 1;
}

// ---- synthesize -------------------------------------------------------------

struct SynthArgs {
  double a = std::numbers::pi / 3;
  double b = kHalfPi;
  std::string t = "1";
  int n = 1;
  int ell = -1;
  int trunc = 10;
  double quiet = -1.0;
  std::string precision = "dd";
  std::string out;
};

int run_synthesize(const SynthArgs& a) {
  require(a.n >= 0, "--n must be >= 0");
  require(a.trunc >= 1, "--trunc must be >= 1");
  require(0.0 <= a.a && a.a < a.b && a.b <= kHalfPi, "need 0 <= --a < --b <= pi/2");
  const double T = scalar_time(a.t);
  require(T > 0.0, "--t must be positive");
  const int ell = a.ell < 0 ? a.n : a.ell;
  require(ell >= a.n && ell < a.n + a.trunc, "--ell must lie in [n, n + trunc)");

  bgctl::SynthesisOptions opts;
  opts.precision = precision(a.precision);
  opts.quiet_window = a.quiet;
  const auto f0 = bgctl::SpectralField::single_mode(a.n, ell, a.trunc);
  const auto crown = bgctl::Crown::make(a.a, a.b);
  const auto plan = crown.touches_pole()
                        ? bgctl::synthesize(f0, crown, T, a.trunc, opts)
                        : bgctl::synthesize_on_region(f0, bgctl::Region::from_crown(crown), T, a.trunc, opts);

  json j = bgctl::provenance("synthesize", {{"a", a.a},
                                            {"b", a.b},
                                            {"T", T},
                                            {"n", a.n},
                                            {"ell", ell},
                                            {"trunc", a.trunc},
                                            {"quiet", a.quiet},
                                            {"precision", bgctl::to_string(opts.precision)}});
  j.update(bgctl::to_json(plan));
  j["crown"] = {{"a", crown.a}, {"b", crown.b}};
  emit_json(a.out, j);
  return plan.moment_residual <= 1e-8 * f0.norm() ? 0 : 1;
}

// ---- observability ----------------------------------------------------------

struct ObsArgs {
  std::string region = "crown";
  double a = std::numbers::pi / 3;
  std::optional<double> b;
  std::string t = "0.5";
  int n_max = 12;
  int trunc = 11;
  std::optional<double> eps;
  std::optional<double> t0;
  std::uint64_t seed = bgctl::kDefaultSeed;
  int samples = 100;
  std::string out;
};

int run_observability(const ObsArgs& a) {
  require(a.region == "crown" || a.region == "strip", "--region must be crown or strip");
  require(a.n_max >= 1, "--n-max must be >= 1");
  require(a.trunc >= 1, "--trunc must be >= 1");
  require(a.samples >= 0, "--samples must be >= 0");
  const double T = scalar_time(a.t);
  require(T > 0.0, "--t must be positive");
  require(!a.eps || (*a.eps > 0.0 && *a.eps < T), "--eps must lie in (0, T)");
  require(!a.eps || a.region == "crown", "--eps (S_n series) needs the crown region");
  const double t0 = a.t0.value_or(T / 2);
  require(t0 > 0.0 && t0 < T, "--t0 must lie in (0, T)");

  const bool crown_region = a.region == "crown";
  const double b = a.b.value_or(crown_region ? kHalfPi : std::numbers::pi / 4);
  bgctl::Region region;
  if (crown_region) {
    require(0.0 <= a.a && a.a < b && b <= kHalfPi, "need 0 <= --a < --b <= pi/2");
    region = bgctl::Region::from_crown(bgctl::Crown::make(a.a, b));
  } else {
    require(0.0 < b && b <= kHalfPi, "--b must lie in (0, pi/2]");
    region = bgctl::Region::symmetric_strip(b);
  }

  json params{{"region", a.region}, {"b", b},         {"T", T},         {"n_max", a.n_max},
              {"trunc", a.trunc},   {"t0", t0}, {"seed", a.seed}, {"samples", a.samples}};
  if (crown_region) params["a"] = a.a;
  if (a.eps) params["eps"] = *a.eps;

  json rows = json::array();
  bool dissipation_ok = true;
  std::vector<double> logc;
  for (int n = 1; n <= a.n_max; ++n) {
    const int ell_max = n + a.trunc - 1;
    json row = bgctl::to_json(bgctl::observability(n, ell_max, region, T));
    const auto diss = bgctl::dissipation_audit(n, ell_max, t0, T, a.seed + static_cast<std::uint64_t>(n), a.samples);
    dissipation_ok = dissipation_ok && diss.holds();
    row["dissipation"] = bgctl::to_json(diss);
    if (a.eps) row["s_series"] = bgctl::to_json(bgctl::s_series(n, T, *a.eps, a.a));
    logc.push_back(std::log(row["constant"].get<double>()));
    rows.push_back(std::move(row));
  }
  const auto [lo, hi] = std::minmax_element(logc.begin(), logc.end());

  json j = bgctl::provenance("observability", params);
  j["rows"] = rows;
  j["spread"] = std::exp(*hi - *lo);
  j["mean_log_increment"] = logc.size() > 1 ? (logc.back() - logc.front()) / double(logc.size() - 1) : 0.0;
  j["dissipation_ok"] = dissipation_ok;
  emit_json(a.out, j);
  return dissipation_ok ? 0 : 1;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  double a = std::numbers::pi / 3;
  std::string t = "0.4:1.4:0.05";
  int n_max = 10;
  int trunc = 10;
  std::string precision = "dd";
  std::string summary;
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  require(0.0 <= a.a && a.a < kHalfPi, "--a must lie in [0, pi/2)");
  require(a.n_max >= 3, "--n-max must be >= 3");
  require(a.trunc >= 2, "--trunc must be >= 2");
  const auto grid = bgctl::parse_grid(a.t);
  for (double T : grid) require(T > 0.0, "--t values must be positive");

  bgctl::SweepOptions opts;
  opts.precision = precision(a.precision);
  const auto rep = bgctl::sweep_minimal_time(a.a, grid, a.n_max, a.trunc, opts);

  const json params{{"a", a.a}, {"t", a.t},  {"n_max", a.n_max}, {"trunc", a.trunc},
                    {"precision", bgctl::to_string(opts.precision)}, {"fit_from", opts.fit_from}};
  {
    Sink sink(a.out);
    bgctl::write_csv_header(sink.stream(), "sweep", params);
    bgctl::write_sweep_rows(sink.stream(), rep);
  }
  json j = bgctl::provenance("sweep", params);
  j.update(bgctl::to_json(rep));
  if (a.summary.empty()) std::cerr << j.dump(2) << '\n';
  else emit_json(a.summary, j);
  for (const auto& p : rep.points)
    if (!p.ok()) std::cerr << "point T=" << p.T << " n=" << p.n << ": " << p.error << '\n';
  return 0;
}

// ---- cutoff -----------------------------------------------------------------

struct CutoffArgs {
  double a = std::numbers::pi / 3;
  double b = 1.3;
  std::string t = "1.2";
  int n = 1;
  std::optional<int> n_max;
  int trunc = 12;
  std::optional<double> c1, c2;
  std::string precision = "dd";
  std::string samples;
  std::string out;
};

int run_cutoff(const CutoffArgs& a) {
  require(0.0 <= a.a && a.a < a.b && a.b < kHalfPi, "need 0 <= --a < --b < pi/2");
  require(a.n >= 1, "--n must be >= 1");
  require(!a.n_max || *a.n_max >= a.n, "--n-max must be >= --n");
  require(a.trunc >= 2, "--trunc must be >= 2");
  require(a.samples.empty() || !a.n_max || *a.n_max == a.n, "--samples needs a single mode");
  const double T = scalar_time(a.t);
  require(T > 0.0, "--t must be positive");
  if (a.c1 || a.c2) {
    require(a.c1 && a.c2, "--c1 and --c2 go together");
    require(a.a < *a.c1 && *a.c1 < *a.c2 && *a.c2 < a.b, "need a < c1 < c2 < b");
  }

  bgctl::CutoffConfig cfg;
  cfg.N = a.trunc;
  cfg.c1 = a.c1;
  cfg.c2 = a.c2;
  cfg.synthesis.precision = precision(a.precision);
  cfg.keep_samples = !a.samples.empty();
  const auto crown = bgctl::Crown::make(a.a, a.b);
  const auto profile = a.c1 ? bgctl::CutoffProfile::make(*a.c1, *a.c2) : bgctl::CutoffProfile::for_crown(crown);

  json params{{"a", a.a},         {"b", a.b},         {"T", T},
              {"n", a.n},         {"trunc", a.trunc}, {"c1", profile.c1},
              {"c2", profile.c2}, {"precision", bgctl::to_string(cfg.synthesis.precision)}};
  if (a.n_max) params["n_max"] = *a.n_max;

  json runs = json::array();
  bool pass = true;
  for (int n = a.n; n <= a.n_max.value_or(a.n); ++n) {
    const auto f0 = bgctl::SpectralField::single_mode(n, n, cfg.N);
    try {
      const auto res = bgctl::compose(f0, crown, T, cfg);
      json r = bgctl::to_json(res);
      const bool ok = res.support_ok() && res.terminal_norm <= 1e-6 * res.norm0 && res.pde_residual <= 1e-5;
      r["pass"] = ok;
      pass = pass && ok;
      runs.push_back(std::move(r));
      if (cfg.keep_samples) {
        Sink sink(a.samples);
        bgctl::write_csv_header(sink.stream(), "cutoff", params);
        bgctl::write_control_samples(sink.stream(), res);
      }
    } catch (const bgctl::SupportViolation& e) {
      runs.push_back({{"n", n}, {"pass", false}, {"error", e.what()}});
      pass = false;
    }
  }
  json j = bgctl::provenance("cutoff", params);
  j["runs"] = runs;
  j["pass"] = pass;
  emit_json(a.out, j);
  return pass ? 0 : 1;
}

// ---- weight -----------------------------------------------------------------

struct WeightArgs {
  double b_prime = 0.6;
  std::string kind = "auto";
  int grid = 10000;
  std::string out;
};

int run_weight(const WeightArgs& a) {
  require(a.b_prime > 0.0 && a.b_prime < kHalfPi, "--b-prime must lie in (0, pi/2)");
  require(a.kind == "auto" || a.kind == "hermite" || a.kind == "ramp", "--kind must be auto, hermite or ramp");
  require(a.grid >= 10, "--grid must be >= 10");
  bgctl::CarlemanWeight w = a.kind == "hermite" ? bgctl::CarlemanWeight::hermite(a.b_prime)
                            : a.kind == "ramp"  ? bgctl::CarlemanWeight::monotone_ramp(a.b_prime)
                                                : bgctl::build_carleman_weight(a.b_prime);
  const auto audit = bgctl::audit_carleman_weight(w, a.grid);
  json j = bgctl::provenance("weight", {{"b_prime", a.b_prime}, {"kind", a.kind}, {"grid", a.grid}});
  j["matching"] = bgctl::to_string(w.kind());
  j["audit"] = bgctl::to_json(audit);
  j["pass"] = audit.pass();
  emit_json(a.out, j);
  return audit.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bgctl " + std::string(bgctl::version()) +
               ": mode-wise null-control synthesis and verification"};
  app.set_version_flag("--version", std::string(bgctl::version()));
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  EigsArgs eigs;
  auto* c_eigs = app.add_subcommand("eigs", "eigenvalues and orthonormality residuals (CSV)");
  c_eigs->add_option("--n", eigs.n, "Fourier order")->capture_default_str();
  c_eigs->add_option("--ell-max", eigs.ell_max, "largest degree")->capture_default_str();
  c_eigs->add_option("--out", eigs.out, "output path (default stdout)");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "mass bound grid, exact combinatorics, gap audit (JSON)");
  c_verify->add_option("--ell-max", verify.ell_max)->capture_default_str();
  c_verify->add_option("--n-max", verify.n_max)->capture_default_str();
  c_verify->add_option("--m-max", verify.m_max, "largest offset m in the exact suite")->capture_default_str();
  c_verify->add_option("--trunc", verify.trunc, "family size for the gap audit")->capture_default_str();
  c_verify->add_option("--a", verify.angles, "crown angles (default 0, pi/6, pi/4, pi/3, 1.4, pi/2)");
  c_verify->add_option("--table", verify.table, "mass-bound CSV path");
  c_verify->add_option("--out", verify.out, "summary JSON path (default stdout)");

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synthesize", "moment-method control for one mode (JSON)");
  c_synth->add_option("--a", synth.a)->capture_default_str();
  c_synth->add_option("--b", synth.b)->capture_default_str();
  c_synth->add_option("--t", synth.t, "horizon T")->capture_default_str();
  c_synth->add_option("--n", synth.n)->capture_default_str();
  c_synth->add_option("--ell", synth.ell, "initial state v_{ell,n} (default ell = n)");
  c_synth->add_option("--trunc", synth.trunc, "moments N")->capture_default_str();
  c_synth->add_option("--quiet", synth.quiet, "terminal quiet window (< 0: automatic)")->capture_default_str();
  c_synth->add_option("--precision", synth.precision, "double or dd")->capture_default_str();
  c_synth->add_option("--out", synth.out);

  ObsArgs obs;
  auto* c_obs = app.add_subcommand("observability", "finite-mode observability constants and dissipation (JSON)");
  c_obs->add_option("--region", obs.region, "crown or strip")->capture_default_str();
  c_obs->add_option("--a", obs.a)->capture_default_str();
  c_obs->add_option("--b", obs.b, "crown top (pi/2) or strip half-width (pi/4)");
  c_obs->add_option("--t", obs.t)->capture_default_str();
  c_obs->add_option("--n-max", obs.n_max)->capture_default_str();
  c_obs->add_option("--trunc", obs.trunc, "modes per order (ell_max = n + trunc - 1)")->capture_default_str();
  c_obs->add_option("--eps", obs.eps, "also sum the S_n series at beta = T - eps (crown only)");
  c_obs->add_option("--t0", obs.t0, "start of the dissipation audit (default T/2)");
  c_obs->add_option("--seed", obs.seed)->capture_default_str();
  c_obs->add_option("--samples", obs.samples, "random states per order")->capture_default_str();
  c_obs->add_option("--out", obs.out);

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "minimal-time sweep (CSV, summary JSON)");
  c_sweep->add_option("--a", sweep.a)->capture_default_str();
  c_sweep->add_option("--t", sweep.t, "lo:hi:step or a single value")->capture_default_str();
  c_sweep->add_option("--n-max", sweep.n_max)->capture_default_str();
  c_sweep->add_option("--trunc", sweep.trunc, "moments N")->capture_default_str();
  c_sweep->add_option("--precision", sweep.precision)->capture_default_str();
  c_sweep->add_option("--summary", sweep.summary, "summary JSON path (default stderr)");
  c_sweep->add_option("--out", sweep.out, "CSV path (default stdout)");

  CutoffArgs cut;
  auto* c_cut = app.add_subcommand("cutoff", "cut-off composition for a general crown (JSON)");
  c_cut->add_option("--a", cut.a)->capture_default_str();
  c_cut->add_option("--b", cut.b)->capture_default_str();
  c_cut->add_option("--t", cut.t)->capture_default_str();
  c_cut->add_option("--n", cut.n)->capture_default_str();
  c_cut->add_option("--n-max", cut.n_max, "run every order n .. n-max");
  c_cut->add_option("--trunc", cut.trunc, "moments N per control")->capture_default_str();
  c_cut->add_option("--c1", cut.c1);
  c_cut->add_option("--c2", cut.c2);
  c_cut->add_option("--precision", cut.precision)->capture_default_str();
  c_cut->add_option("--samples", cut.samples, "CSV of u(t, x) samples");
  c_cut->add_option("--out", cut.out);

  WeightArgs weight;
  auto* c_weight = app.add_subcommand("weight", "Carleman weight construction and invariant audit (JSON)");
  c_weight->add_option("--b-prime", weight.b_prime)->capture_default_str();
  c_weight->add_option("--kind", weight.kind, "auto, hermite or ramp")->capture_default_str();
  c_weight->add_option("--grid", weight.grid)->capture_default_str();
  c_weight->add_option("--out", weight.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_eigs) return run_eigs(eigs);
    if (*c_verify) return run_verify(verify);
    if (*c_synth) return run_synthesize(synth);
    if (*c_obs) return run_observability(obs);
    if (*c_sweep) return run_sweep(sweep);
    if (*c_cut) return run_cutoff(cut);
    if (*c_weight) return run_weight(weight);
  } catch (const std::invalid_argument& e) {
    // UsageError and library precondition failures alike
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const bgctl::IllConditioned& e) {
    std::cerr << "IllConditioned: " << e.what() << '\n';
    return 1;
  } catch (const bgctl::ZeroMass& e) {
    std::cerr << "ZeroMass: " << e.what() << '\n';
    return 1;
  } catch (const bgctl::InvariantViolated& e) {
    std::cerr << "InvariantViolated: " << e.what() << '\n';
    return 1;
  } catch (const bgctl::SingularRegion& e) {
    std::cerr << "SingularRegion: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
