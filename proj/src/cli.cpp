#include "dgh/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dgh/errors.hpp"
#include "dgh/serialize.hpp"
#include "dgh/verify.hpp"

namespace dgh::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::optional<double> c1, c2, alpha, omega, gamma, c;
  std::optional<double> c3, b, period;
  int grid_n = 256;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";

  // command specific
  std::optional<int> boundary;
  std::optional<int> curve;
  bool partials = false;
  std::string axis = "b";
  std::optional<double> start, stop;
  int count = 50;
  std::optional<double> peaked_L;
  std::string profile_file;
  std::string op = "L";
  std::optional<double> phi_min, phi_max, phidot_max;
  int n_phi = 400;
  std::string suite = "all";
  std::optional<int> verify_count;
  std::uint64_t seed = 20240917;
};

struct Resolved {
  ReducedParams r;
  PhysicalParams phys;
  bool physical_given;
};

Resolved resolve(const Args& a) {
  bool red = a.c1 || a.c2, phy = a.alpha || a.omega || a.gamma || a.c;
  if (red && phy) throw UsageError("--c1/--c2 and --alpha/--omega/--gamma/--c are mutually exclusive");
  if (phy) {
    if (!(a.alpha && a.omega && a.gamma && a.c))
      throw UsageError("physical parameters need all of --alpha --omega --gamma --c");
    PhysicalParams p{*a.alpha, *a.omega, *a.gamma, *a.c};
    return {reduce(p), p, true};
  }
  if (!(a.c1 && a.c2)) throw UsageError("give --c1 and --c2 (or --alpha --omega --gamma --c)");
  ReducedParams r{*a.c1, *a.c2};
  return {r, expand(r, 1, 0), false};
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

json input_block(const std::string& cmd, const Args& a, const Resolved& p) {
  json j = {{"command", cmd}, {"params", to_json(p.r)}, {"physical", to_json(p.phys)},
            {"physical_given", p.physical_given}};
  if (a.c3) j["C3"] = *a.c3;
  if (a.b) j["b"] = *a.b;
  if (a.period) j["period"] = *a.period;
  return j;
}

json tolerances(const Args& a) {
  return {{"period_tol", a.tol.value_or(kPeriodTol)}, {"boundary_tol", kBoundaryTol},
          {"zero_tol_rel", kZeroTolRel}, {"max_nodes", kMaxNodes}};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string render_csv(const Csv& c) {
  std::ostringstream s;
  for (std::size_t i = 0; i < c.header.size(); ++i) s << (i ? "," : "") << c.header[i];
  s << "\n";
  for (const auto& r : c.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << fmt(r[i]);
    s << "\n";
  }
  return s.str();
}

// A command produces JSON and, where the data is tabular, a CSV view of it.
struct Output {
  json doc;
  std::optional<Csv> csv;
};

void emit(const Output& o, const Args& a, std::ostream& out) {
  std::string text;
  if (a.format == "csv") {
    if (!o.csv) throw UsageError("this command has no CSV form; use --format json");
    text = render_csv(*o.csv);
  } else {
    text = o.doc.dump(2) + "\n";
  }
  if (a.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(a.out);
  if (!f) throw std::runtime_error("cannot open output file " + a.out);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + a.out);
}

Profile profile_for(const Args& a, const Resolved& p) {
  if (!a.profile_file.empty()) {
    std::ifstream f(a.profile_file);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot read profile file " + a.profile_file);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      fail(ErrorCode::InvalidArgument, std::string("profile file is not JSON: ") + e.what());
    }
    return profile_from_json(j);
  }
  if (a.peaked_L) return peaked_profile(p.r, *a.peaked_L, a.grid_n);
  return solve_profile(p.r, need(a.c3, "--c3"), need(a.b, "--b"), a.grid_n);
}

Csv profile_csv(const Profile& pr) {
  Csv c{{"z", "phi", "dphi"}, {}};
  for (int j = 0; j < pr.n(); ++j) c.rows.push_back({j * pr.dz(), pr.phi[j], pr.dphi[j]});
  return c;
}

// ---------------------------------------------------------------------------

Output cmd_region(const Args& a, const Resolved& p) {
  const ReducedParams& r = p.r;
  double crit = c3_critical(r);
  json d = {{"input", input_block("region", a, p)}, {"tolerances", tolerances(a)}, {"C3_critical", crit}};
  BoundaryB b0 = boundary_b(r, 0), bc = boundary_b(r, crit);
  d["corners"] = {{"A1", {{"C3", 0.0}, {"b", b0.b_minus}}},
                  {"A2", {{"C3", 0.0}, {"b", b0.b_plus}}},
                  {"A3", {{"C3", crit}, {"b", bc.b_minus}}}};
  Output o;
  if (a.c3) {
    BoundaryB bb = boundary_b(r, *a.c3);
    d["b_minus"] = bb.b_minus;
    d["b_plus"] = bb.b_plus;
    if (a.b) d["class"] = std::string(to_string(region_classify(r, *a.c3, *a.b)));
  }
  if (a.b) {
    C3Interval iv = c3_interval(r, *a.b);
    d["c3_interval"] = {{"lo", iv.lo}, {"hi", iv.hi}, {"empty", !(iv.hi > iv.lo)}};
    d["g"] = g_classifier(r, *a.b);
  }
  if (a.boundary) {
    int n = *a.boundary;
    if (n < 2) throw UsageError("--boundary needs at least 2 points");
    Csv c{{"C3", "b_minus", "b_plus"}, {}};
    json C3s = json::array(), bm = json::array(), bp = json::array();
    for (int k = 0; k < n; ++k) {
      double C3 = crit * k / (n - 1);
      BoundaryB bb = boundary_b(r, C3);
      c.rows.push_back({C3, bb.b_minus, bb.b_plus});
      C3s.push_back(C3);
      bm.push_back(bb.b_minus);
      bp.push_back(bb.b_plus);
    }
    d["boundary"] = {{"C3", C3s}, {"b_minus", bm}, {"b_plus", bp}};
    o.csv = c;
  }
  o.doc = d;
  return o;
}

Output cmd_roots(const Args& a, const Resolved& p) {
  double C3 = need(a.c3, "--c3");
  CubicRoots c = critical_roots(p.r, C3);
  json d = {{"input", input_block("roots", a, p)}, {"tolerances", tolerances(a)}, {"roots", to_json(c)},
            {"U_phi2", potential_U(c.phi2, p.r, C3)}};
  Output o;
  if (a.curve) {
    int n = *a.curve;
    if (n < 2) throw UsageError("--curve needs at least 2 points");
    double lo = std::min(-0.5 * p.r.C2, c.phi1), hi = c.phi3, pad = 0.25 * (hi - lo);
    lo -= pad;
    hi += pad;
    Csv cs{{"phi", "f", "U"}, {}};
    json ph = json::array(), f = json::array(), U = json::array();
    for (int k = 0; k < n; ++k) {
      double x = lo + (hi - lo) * k / (n - 1);
      // U has a pole at C1; report null there rather than inf.
      double u = x == p.r.C1 ? NAN : potential_U(x, p.r, C3);
      cs.rows.push_back({x, f_eval(x, p.r), u});
      ph.push_back(x);
      f.push_back(f_eval(x, p.r));
      U.push_back(std::isfinite(u) ? json(u) : json(nullptr));
    }
    d["curve"] = {{"phi", ph}, {"f", f}, {"U", U}};
    o.csv = cs;
  }
  o.doc = d;
  return o;
}

Output cmd_period(const Args& a, const Resolved& p) {
  double C3 = need(a.c3, "--c3"), b = need(a.b, "--b");
  PeriodResult pr = period(p.r, C3, b, a.tol.value_or(kPeriodTol));
  json d = {{"input", input_block("period", a, p)}, {"tolerances", tolerances(a)}, {"period", to_json(pr)},
            {"period_x", pr.L * p.phys.alpha}};
  Csv c{{"C3", "b", "L", "est_error"}, {{C3, b, pr.L, pr.est_error}}};
  if (a.partials) {
    PeriodPartials pp = period_partials(p.r, C3, b);
    d["partials"] = {{"dL_db", pp.dL_db}, {"dL_dC3", pp.dL_dC3}, {"h_b", pp.h_b},
                     {"h_C3", pp.h_C3}, {"richardson_gap_b", pp.gap_b}, {"richardson_gap_C3", pp.gap_C3}};
    c.header.insert(c.header.end(), {"dL_db", "dL_dC3"});
    c.rows[0].insert(c.rows[0].end(), {pp.dL_db, pp.dL_dC3});
  }
  return {d, c};
}

Output cmd_period_sweep(const Args& a, const Resolved& p) {
  ScanAxis axis;
  double fixed;
  if (a.axis == "b") {
    axis = ScanAxis::b;
    fixed = need(a.c3, "--c3");
  } else if (a.axis == "C3" || a.axis == "c3") {
    axis = ScanAxis::C3;
    fixed = need(a.b, "--b");
  } else {
    throw UsageError("--axis must be b or C3");
  }
  std::vector<double> grid;
  if (a.start || a.stop) {
    double s = need(a.start, "--start"), e = need(a.stop, "--stop");
    if (a.count < 3) throw UsageError("--count must be >= 3");
    for (int k = 0; k < a.count; ++k) grid.push_back(s + (e - s) * k / (a.count - 1));
  } else {
    grid = scan_grid(p.r, axis, fixed, a.count);
  }
  MonotonicityTable t = monotonicity_scan(p.r, axis, fixed, grid, a.tol.value_or(kPeriodTol));
  json d = {{"input", input_block("period-sweep", a, p)}, {"tolerances", tolerances(a)}, {"sweep", to_json(t)}};
  Csv c{{axis == ScanAxis::b ? "b" : "C3", "L", "est_error"}, {}};
  for (std::size_t k = 0; k < t.param.size(); ++k) c.rows.push_back({t.param[k], t.L[k], t.est_error[k]});
  return {d, c};
}

Output cmd_profile(const Args& a, const Resolved& p) {
  Profile pr = profile_for(a, p);
  Residuals res = residual_check(pr);
  json d = {{"input", input_block("profile", a, p)}, {"tolerances", tolerances(a)}, {"profile", to_json(pr)},
            {"residuals", {{"res2", res.res2}, {"res1", res.res1}}}};
  d["input"]["grid_n"] = a.grid_n;
  if (a.peaked_L) d["input"]["peaked_L"] = *a.peaked_L;
  return {d, profile_csv(pr)};
}

Output cmd_conserved(const Args& a, const Resolved& p) {
  Profile pr = profile_for(a, p);
  ConservedQuantities q = conserved_quantities(pr, p.phys);
  json d = {{"input", input_block("conserved", a, p)}, {"tolerances", tolerances(a)}, {"conserved", to_json(q)},
            {"profile_C3", pr.C3}, {"profile_b", pr.b}, {"period_z", pr.period_z}};
  d["input"]["grid_n"] = pr.n();
  Csv c{{"M", "E", "F"}, {{q.M, q.E, q.F}}};
  return {d, c};
}

Output cmd_spectrum(const Args& a, const Resolved& p) {
  Profile pr = profile_for(a, p);
  json d = {{"input", input_block("spectrum", a, p)}, {"tolerances", tolerances(a)}, {"operator", a.op}};
  d["input"]["grid_n"] = pr.n();
  if (a.op == "JL") {
    SpectralOperator op = build_JL(pr);
    JLCheck chk = jl_spectrum_check(op);
    Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix, false);
    if (es.info() != Eigen::Success) fail(ErrorCode::EigensolverFailure, "nonsymmetric eigensolver failed");
    Csv c{{"re", "im"}, {}};
    json re = json::array(), im = json::array();
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      auto ev = es.eigenvalues()[k];
      c.rows.push_back({ev.real(), ev.imag()});
      re.push_back(ev.real());
      im.push_back(ev.imag());
    }
    d["jl"] = {{"max_abs_real", chk.max_abs_real}, {"stable", chk.stable}, {"tol", chk.tol}};
    d["eigenvalues"] = {{"re", re}, {"im", im}};
    return {d, c};
  }
  SpectralOperator op;
  if (a.op == "L") op = build_L(pr);
  else if (a.op == "M") op = schrodinger_transform(pr);
  else throw UsageError("--operator must be L, M or JL");
  InertiaCounts ic = inertia(op, a.tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::EigensolverFailure, "symmetric eigensolver failed");
  Csv c{{"index", "eigenvalue"}, {}};
  json ev = json::array();
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    c.rows.push_back({static_cast<double>(k), es.eigenvalues()[k]});
    ev.push_back(es.eigenvalues()[k]);
  }
  d["inertia"] = to_json(ic);
  d["raw_asymmetry"] = op.raw_asymmetry;
  d["eigenvalues"] = ev;
  return {d, c};
}

Output cmd_stability(const Args& a, const Resolved& p) {
  double C3 = need(a.c3, "--c3");
  double L;
  if (a.period) {
    if (a.b) throw UsageError("give either --period or --b, not both");
    L = *a.period;
  } else {
    L = period(p.r, C3, need(a.b, "--b")).L;
  }
  StabilityOptions so;
  so.n = a.grid_n;
  StabilityReport s = stability_indices(p.r, p.phys, L, C3, so);
  json d = {{"input", input_block("stability", a, p)}, {"tolerances", tolerances(a)}, {"stability", to_json(s)}};
  d["input"]["L_target"] = L;
  d["input"]["grid_n"] = a.grid_n;
  return {d, std::nullopt};
}

Output cmd_orbital(const Args& a, const Resolved& p) {
  Profile pr = profile_for(a, p);
  OrbitalCheck o = orbital_check(pr, p.phys);
  json d = {{"input", input_block("orbital", a, p)}, {"tolerances", tolerances(a)}, {"orbital", to_json(o)}};
  d["input"]["grid_n"] = pr.n();
  return {d, std::nullopt};
}

Output cmd_phase_portrait(const Args& a, const Resolved& p) {
  double C3 = need(a.c3, "--c3"), b = need(a.b, "--b");
  GridSpec g;
  double lo = -0.5 * p.r.C2, hi = p.r.C1;
  if (C3 > 0 && C3 < c3_critical(p.r)) {
    CubicRoots c = critical_roots(p.r, C3);
    lo = std::min(lo, c.phi1);
    hi = c.phi3;
  }
  double pad = 0.5 * std::max(hi - lo, 1.0);
  g.phi_min = a.phi_min.value_or(lo - pad);
  g.phi_max = a.phi_max.value_or(hi + pad);
  double ymax = a.phidot_max.value_or(std::max(2.0, 2 * (g.phi_max - g.phi_min)));
  g.phidot_min = -ymax;
  g.phidot_max = ymax;
  g.n_phi = a.n_phi;
  std::vector<PhasePoint> pts = level_set(p.r, C3, b, g);
  Csv c{{"phi", "phidot"}, {}};
  json xs = json::array(), ys = json::array();
  for (const auto& q : pts) {
    c.rows.push_back({q.phi, q.phidot});
    xs.push_back(q.phi);
    ys.push_back(q.phidot);
  }
  json d = {{"input", input_block("phase-portrait", a, p)},
            {"tolerances", tolerances(a)},
            {"window", {{"phi_min", g.phi_min}, {"phi_max", g.phi_max}, {"phidot_min", g.phidot_min},
                        {"phidot_max", g.phidot_max}, {"n_phi", g.n_phi}}},
            {"class", std::string(to_string(region_classify(p.r, C3, b)))},
            {"points", {{"phi", xs}, {"phidot", ys}}}};
  return {d, c};
}

// ---------------------------------------------------------------------------

int run_verify(const Args& a, std::ostream& out) {
  verify::Options opt;
  if (a.c1 || a.c2) opt.r = ReducedParams{need(a.c1, "--c1"), need(a.c2, "--c2")};
  opt.C3 = a.c3;
  opt.count = a.verify_count;
  opt.seed = a.seed;
  std::vector<std::string> names;
  if (a.suite == "all") names = verify::suite_names();
  else names = {a.suite};
  json d = {{"command", "verify"}, {"seed", a.seed}, {"results", json::array()}};
  bool all = true;
  Csv c{{"passed", "seconds", "budget_seconds"}, {}};
  for (const auto& n : names) {
    verify::Result r = verify::run(n, opt);
    all = all && r.passed;
    d["results"].push_back({{"suite", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                            {"budget_seconds", r.budget_seconds}, {"measured", r.measured}});
  }
  d["all_passed"] = all;
  emit({d, std::nullopt}, a, out);
  return all ? kExitOk : kExitInternal;
}

void add_params(CLI::App* s, Args& a) {
  s->add_option("--c1", a.c1, "reduced parameter C1 = c + gamma/alpha^2");
  s->add_option("--c2", a.c2, "reduced parameter C2 = 2 omega + gamma/alpha^2");
  s->add_option("--alpha", a.alpha, "physical alpha (with --omega --gamma --c)");
  s->add_option("--omega", a.omega, "physical omega");
  s->add_option("--gamma", a.gamma, "physical gamma");
  s->add_option("--c", a.c, "wave speed c");
  s->add_option("--out", a.out, "write output to this file instead of stdout");
  s->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  s->add_option("--tol", a.tol, "period quadrature tolerance / zero threshold");
}

void add_wave(CLI::App* s, Args& a) {
  s->add_option("--c3", a.c3, "integration constant C3");
  s->add_option("--b", a.b, "energy level b");
}

void add_profile_src(CLI::App* s, Args& a) {
  add_wave(s, a);
  s->add_option("--grid-n", a.grid_n, "collocation points (even, >= 16)");
  s->add_option("--profile", a.profile_file, "read the profile from a JSON file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Periodic travelling waves: existence region, period function, profiles, stability.", "dgh"};
  app.require_subcommand(1);
  std::function<Output(const Args&, const Resolved&)> handler;
  bool verify_cmd = false;
  auto cmd = [&](const char* name, const char* help, Output (*fn)(const Args&, const Resolved&)) {
    CLI::App* s = app.add_subcommand(name, help);
    add_params(s, a);
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };

  auto* region = cmd("region", "existence region: corners, boundary curves, classification", cmd_region);
  add_wave(region, a);
  region->add_option("--boundary", a.boundary, "sample b_-(C3), b_+(C3) at this many C3 values");

  auto* roots = cmd("roots", "critical points phi1 < phi2 < phi3 of f(phi) = C3", cmd_roots);
  roots->add_option("--c3", a.c3, "integration constant C3");
  roots->add_option("--curve", a.curve, "also sample f and U at this many points");

  auto* per = cmd("period", "period L(C3, b) in z-units", cmd_period);
  add_wave(per, a);
  per->add_flag("--partials", a.partials, "also report dL/db and dL/dC3");

  auto* sweep = cmd("period-sweep", "period along a line in b or C3 with a monotonicity verdict", cmd_period_sweep);
  add_wave(sweep, a);
  sweep->add_option("--axis", a.axis, "b (fix --c3) or C3 (fix --b)");
  sweep->add_option("--start", a.start, "first grid value");
  sweep->add_option("--stop", a.stop, "last grid value");
  sweep->add_option("--count", a.count, "number of grid points");

  auto* prof = cmd("profile", "wave profile phi(z) on a uniform grid", cmd_profile);
  add_profile_src(prof, a);
  prof->add_option("--peaked-L", a.peaked_L, "closed-form peaked profile of this period (C3 = 0)");

  auto* cons = cmd("conserved", "conserved quantities M, E, F of a profile", cmd_conserved);
  add_profile_src(cons, a);
  cons->add_option("--peaked-L", a.peaked_L, "closed-form peaked profile of this period (C3 = 0)");

  auto* spec = cmd("spectrum", "spectrum and inertia of L, M or JL", cmd_spectrum);
  add_profile_src(spec, a);
  spec->add_option("--operator", a.op, "L, M or JL");

  auto* stab = cmd("stability", "stability indices on the fixed-period curve", cmd_stability);
  add_wave(stab, a);
  stab->add_option("--period", a.period, "target period (z-units); or give --b");
  stab->add_option("--grid-n", a.grid_n, "collocation points");

  auto* orb = cmd("orbital", "sufficient orbital-stability check", cmd_orbital);
  add_profile_src(orb, a);

  auto* pp = cmd("phase-portrait", "level set of the first integral in (phi, phi')", cmd_phase_portrait);
  add_wave(pp, a);
  pp->add_option("--phi-min", a.phi_min);
  pp->add_option("--phi-max", a.phi_max);
  pp->add_option("--phidot-max", a.phidot_max);
  pp->add_option("--n-phi", a.n_phi);

  auto* ver = app.add_subcommand("verify", "run the built-in verification suites");
  ver->add_option("--suite", a.suite, "suite name or 'all'");
  ver->add_option("--c1", a.c1);
  ver->add_option("--c2", a.c2);
  ver->add_option("--c3", a.c3);
  ver->add_option("--count", a.verify_count, "sample / grid size override");
  ver->add_option("--seed", a.seed);
  ver->add_option("--out", a.out);
  ver->callback([&verify_cmd] { verify_cmd = true; });

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    if (verify_cmd) {
      if (a.suite != "all") {
        const auto& n = verify::suite_names();
        if (std::find(n.begin(), n.end(), a.suite) == n.end())
          throw UsageError("unknown suite '" + a.suite + "'");
      }
      return run_verify(a, out);
    }
    Resolved p = resolve(a);
    emit(handler(a, p), a, out);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  } catch (const DomainError& e) {
    json j = {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
    err << j.dump(2) << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace dgh::cli
