#include "borsuk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "borsuk/algebra.hpp"
#include "borsuk/bounds.hpp"
#include "borsuk/construction.hpp"
#include "borsuk/optimality.hpp"
#include "borsuk/parallel.hpp"
#include "borsuk/params.hpp"
#include "borsuk/upper.hpp"

namespace borsuk::cli {

using json = nlohmann::ordered_json;

namespace {

const std::map<std::string, Command> kCommands = {
    {"plan", Command::Plan},       {"build", Command::Build},           {"certify", Command::Certify},
    {"bound", Command::Bound},     {"find-d0", Command::FindD0},        {"asymptotic", Command::Asymptotic},
    {"upper", Command::Upper},     {"optimal-poly", Command::OptimalPoly},
};

// A report: JSON for structure, plus an optional flat table for CSV.
struct Report {
  json body;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string raw;  // pre-rendered payload (point sets)
};

std::string real_str(const Real& v) { return to_string(v, 20); }

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, scalar_text(v));
  }
}

void emit(const Report& rep, Format format, std::ostream& out) {
  if (!rep.raw.empty()) {
    out << rep.raw;
    return;
  }
  switch (format) {
    case Format::Json:
      out << rep.body.dump(2) << '\n';
      break;
    case Format::Csv: {
      if (!rep.columns.empty()) {
        for (std::size_t i = 0; i < rep.columns.size(); ++i) out << (i ? "," : "") << csv_cell(rep.columns[i]);
        out << '\n';
        for (const auto& row : rep.rows) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
          out << '\n';
        }
      } else {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(rep.body, "", flat);
        out << "field,value\n";
        for (const auto& [k, v] : flat) out << csv_cell(k) << ',' << csv_cell(v) << '\n';
      }
      break;
    }
    case Format::Text: {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(rep.body, "", flat);
      for (const auto& [k, v] : flat) out << k << ": " << v << '\n';
      break;
    }
  }
}

json to_json(const ParamSet& ps) {
  json j;
  j["mode"] = to_string(ps.mode);
  j["r"] = real_str(ps.r);
  j["rsq"] = ps.rsq_exact ? to_string(*ps.rsq_exact) : real_str(ps.rsq);
  j["k"] = ps.k;
  j["a0"] = real_str(ps.a0);
  j["p0"] = real_str(ps.p0());
  j["d"] = to_string(ps.d);
  j["n"] = ps.n;
  j["a"] = ps.a;
  j["p"] = ps.p;
  if (ps.phi) j["phi"] = real_str(*ps.phi);
  if (ps.c_phi) j["c_phi"] = real_str(*ps.c_phi);
  return j;
}

json to_json(const GeometryReport& g) {
  json j;
  j["diam_sq"] = to_string(g.diam_sq);
  j["rho_sq"] = to_string(g.rho_sq);
  j["r_prime_sq"] = to_string(g.r_prime_sq);
  j["scale_sq"] = to_string(g.scale_sq);
  j["lift_height_sq"] = g.lift_height_sq_exact ? to_string(*g.lift_height_sq_exact) : real_str(g.lift_height_sq);
  j["degenerate"] = g.degenerate;
  j["attained_diam_sq"] = to_string(g.attained_diam_sq);
  j["attained_inner"] = g.attained_inner;
  return j;
}

json to_json(const CountBound& b) {
  json j;
  j["n"] = b.n;
  j["p"] = b.p;
  if (b.numerator) j["numerator"] = to_string(*b.numerator);
  if (b.denominator) j["denominator"] = to_string(*b.denominator);
  j["ratio_log"] = real_str(b.ratio_log.log_abs());
  j["threshold"] = to_string(b.threshold);
  j["passes"] = b.passes;
  return j;
}

json to_json(const InequalityCheck& c) {
  return json{{"name", c.name}, {"lhs", real_str(c.lhs)}, {"rhs", real_str(c.rhs)}, {"pass", c.pass}};
}

void check_rows(Report& rep, const std::vector<InequalityCheck>& checks) {
  rep.columns = {"name", "lhs", "rhs", "pass"};
  for (const auto& c : checks) rep.rows.push_back({c.name, real_str(c.lhs), real_str(c.rhs), c.pass ? "true" : "false"});
}

BigRational require_r(const RunConfig& c) {
  if (!c.r) throw UsageError("--r is required for this command");
  return parse_decimal(*c.r);
}

BigInt require_d(const RunConfig& c) {
  if (!c.d) throw UsageError("--d is required for this command");
  return parse_big_integer(*c.d);
}

// plan_fixed, with --n/--k/--a/--p overriding the derived integers.
ParamSet fixed_params(const RunConfig& c) {
  BigRational r = require_r(c);
  BigInt d = require_d(c);
  if (!c.n && !c.k && !c.a && !c.p) return plan_fixed(r, d, c.tol);
  if (!c.n || !c.a) throw UsageError("overrides need at least --n and --a");
  ParamSet ps;
  ps.mode = Mode::FixedRadius;
  ps.r = to_real(r);
  BigRational rsq = r * r;
  rsq.canonicalize();
  ps.rsq_exact = rsq;
  ps.rsq = to_real(rsq);
  ps.k = c.k ? static_cast<unsigned>(*c.k) : solve_k(rsq);
  ps.a0 = Real(static_cast<double>(*c.a)) * 2 / Real(static_cast<double>(*c.n));
  ps.d = d;
  ps.n = *c.n;
  ps.a = *c.a;
  ps.p = c.p ? *c.p : (ps.n + ps.a) / 4;
  if (ps.n + ps.a != 4 * ps.p) throw std::invalid_argument("construction relation violated");
  return ps;
}

int cmd_plan(const RunConfig& c, Report& rep) {
  if (c.r) {
    ParamSet ps = fixed_params(c);
    rep.body = to_json(ps);
    rep.body["geometry"] = to_json(geometry(ps));
    return kExitPass;
  }
  BigInt d = require_d(c);
  ParamSet ps = plan_shrinking(d, c.c_phi, c.tol);
  rep.body = to_json(ps);
  return kExitPass;
}

int cmd_build(const RunConfig& c, Report& rep, std::ostream& err) {
  ParamSet ps = fixed_params(c);
  GeometryReport g = geometry(ps);
  std::vector<TensorImage> images;
  for (auto& x : gen_sigma(ps.n)) images.emplace_back(std::move(x), ps.k, ps.a);
  DiameterScan scan = diameter_scan(images, c.threads);
  std::ostringstream points;
  write_point_set(points, ps, g, images);
  if (c.out) {
    // Point set to the file, summary report to standard output.
    std::ofstream file(*c.out, std::ios::binary);
    if (!file) throw UsageError("cannot open --out file: " + *c.out);
    file << points.str();
    rep.body = to_json(ps);
    rep.body["geometry"] = to_json(g);
    rep.body["points"] = images.size();
    rep.body["scanned_diam_sq"] = to_string(scan.diam_sq);
    rep.body["diameter_pairs"] = scan.pairs.size();
    rep.body["out"] = *c.out;
  } else {
    rep.raw = points.str();
  }
  if (scan.diam_sq != g.attained_diam_sq) {
    err << "diameter scan disagrees with the attained diameter\n";
    return kExitCheckFailed;
  }
  return kExitPass;
}

int cmd_certify(const RunConfig& c, Report& rep) {
  if (!c.n || !c.a) throw UsageError("certify needs --n and --a (and optionally --p)");
  const std::uint64_t p = c.p ? *c.p : (*c.n + *c.a) / 4;
  LemmaOptions opts;
  opts.threads = c.threads;
  LemmaReport lr = lemma_bound_check(*c.n, p, *c.a, opts);
  json& j = rep.body;
  j["n"] = lr.n;
  j["p"] = lr.p;
  j["a"] = lr.a;
  j["bound"] = to_string(lr.bound);
  j["sigma_size"] = to_string(lr.sigma_size);
  if (lr.mis_exact) j["mis_exact"] = std::to_string(*lr.mis_exact);
  if (lr.rank) j["rank"] = std::to_string(*lr.rank);
  j["vacuous"] = lr.vacuous;
  j["zero_residue_excluded"] = lr.zero_residue_excluded;
  j["residue_exclusion_holds"] = lr.residue_exclusion_holds;
  j["family_sizes"] = lr.family_sizes;
  j["families_certified"] = lr.families_certified;
  j["verdict"] = lr.verdict;
  return lr.verdict ? kExitPass : kExitCheckFailed;
}

int cmd_bound(const RunConfig& c, Report& rep) {
  if (c.r) {
    ParamSet ps = fixed_params(c);
    CountBound b = lower_bound(ps);
    rep.body = to_json(b);
    rep.body["params"] = to_json(ps);
    rep.body["theorem2_exponent"] = real_str(theorem2_exponent(ps));
    if (ps.d <= BigInt("18446744073709551615")) {
      rep.body["rogers_log"] = real_str(rogers_cover_log(ps.r, to_u64(ps.d)).log_abs());
    }
    return b.passes ? kExitPass : kExitCheckFailed;
  }
  BigInt d = require_d(c);
  Theorem3Report t = theorem3_check(d, c.c_phi);
  json& j = rep.body;
  j["d"] = to_string(t.d);
  j["c_phi"] = real_str(t.c_phi);
  if (t.params) j["params"] = to_json(*t.params);
  j["checks"] = json::array();
  for (const auto& ch : t.checks) j["checks"].push_back(to_json(ch));
  if (t.final_ratio_log) j["final_ratio_log"] = real_str(t.final_ratio_log->log_abs());
  if (const auto* f = t.first_failure()) j["first_failure"] = f->name;
  j["all_pass"] = t.all_pass;
  check_rows(rep, t.checks);
  return t.all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_find_d0(const RunConfig& c, Report& rep) {
  BigRational r = require_r(c);
  D0Result res = find_d0(r, c.tol);
  json& j = rep.body;
  j["r"] = to_string(r);
  j["k"] = res.params.k;
  j["d0"] = to_string(res.d0);
  j["certificate"] = to_json(res.certificate);
  j["previous_d"] = to_string(res.previous_d);
  if (res.previous_d > 0) j["previous"] = to_json(res.previous);
  j["d0_minus_one_fails"] = res.d0_minus_one_fails;
  j["grid_points"] = res.grid_points;
  j["params"] = to_json(res.params);
  const bool ok = res.certificate.passes && !res.previous.passes && res.d0_minus_one_fails;
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_asymptotic(const RunConfig& c, Report& rep) {
  Real p0;
  json params;
  if (c.r) {
    BigRational r = require_r(c);
    BigRational rsq = r * r;
    rsq.canonicalize();
    const unsigned k = solve_k(rsq);
    const Real a0 = rsq >= BigRational(1, 2) ? Real(0) : solve_a0(to_real(rsq), k, c.tol);
    p0 = a0 / 8 + Real(1) / 4;
    params = {{"r", to_string(r)}, {"k", k}, {"a0", real_str(a0)}};
  } else {
    ParamSet ps = plan_shrinking(require_d(c), c.c_phi, c.tol);
    p0 = ps.p0();
    params = to_json(ps);
  }
  AsymptoticBase base = asymptotic_base(p0);
  json& j = rep.body;
  j["params"] = params;
  j["p0"] = real_str(base.p0);
  j["c_prime"] = real_str(base.c_prime);
  j["c"] = real_str(base.c);
  j["samples"] = json::array();
  rep.columns = {"n", "p", "root", "error"};
  for (const auto& s : base.samples) {
    j["samples"].push_back({{"n", s.n}, {"p", s.p}, {"root", s.root}, {"error", s.error}});
    rep.rows.push_back({std::to_string(s.n), std::to_string(s.p), json(s.root).dump(), json(s.error).dump()});
  }
  j["monotone"] = base.monotone;
  const bool ok = base.monotone && base.c > 1 && base.c_prime < 2;
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_upper(const RunConfig& c, Report& rep) {
  if (!c.c_r) throw UsageError("upper needs --c-r");
  PieceDiameterOptions opts;
  opts.restarts = c.restarts;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const TrendFit trend = fit_trend(opts);
  std::vector<SimplexPartitionReport> rows;
  if (c.d) {
    rows.push_back(theorem4_check(static_cast<unsigned>(to_u64(require_d(c))), *c.c_r, trend, opts));
  } else {
    for (unsigned d = 2; d <= std::max(2u, c.d_max); ++d) rows.push_back(theorem4_check(d, *c.c_r, trend, opts));
  }
  json& j = rep.body;
  j["c_r"] = *c.c_r;
  j["trend"] = {{"c_fit", trend.c_fit}, {"residual", trend.residual}};
  j["rows"] = json::array();
  bool all = true;
  rep.columns = {"d", "r", "piece_diam", "pass", "extrapolated"};
  for (const auto& r : rows) {
    j["rows"].push_back({{"d", r.d}, {"r", r.r}, {"piece_diam", r.piece_diam}, {"pass", r.pass}, {"extrapolated", r.extrapolated}});
    rep.rows.push_back({std::to_string(r.d), json(r.r).dump(), json(r.piece_diam).dump(), r.pass ? "true" : "false",
                        r.extrapolated ? "true" : "false"});
    all = all && r.pass;
  }
  j["all_pass"] = all;
  return all ? kExitPass : kExitCheckFailed;
}

int cmd_optimal_poly(const RunConfig& c, Report& rep) {
  if (!c.m) throw UsageError("optimal-poly needs --m");
  SearchOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.threads = c.threads;
  const double n = c.n ? static_cast<double>(*c.n) : 10.0;
  SearchResult sr = search_optimum(*c.m, n, opts);
  const double bound = extremal_abs_ratio(*c.m);
  json& j = rep.body;
  j["m"] = *c.m;
  j["n"] = n;
  j["samples"] = c.samples;
  j["found"] = sr.found;
  j["best_ratio"] = sr.best_ratio;
  j["best_abs_ratio"] = sr.best_abs_ratio;
  j["extremal_bound"] = bound;
  j["gap"] = bound - sr.best_abs_ratio;
  j["coefficients"] = sr.best.u;
  if (sr.found && sr.best.u[0] == 0) {
    CoefficientInequality ci = verify_coefficient_inequality(sr.best);
    j["coefficient_inequality"] = {{"lhs", ci.lhs}, {"rhs", ci.rhs}, {"factor", ci.factor}, {"pass", ci.pass},
                                   {"equality", ci.equality}};
  }
  rep.columns = {"m", "n", "best_ratio", "best_abs_ratio", "extremal_bound", "gap"};
  rep.rows.push_back({std::to_string(*c.m), json(n).dump(), json(sr.best_ratio).dump(), json(sr.best_abs_ratio).dump(),
                      json(bound).dump(), json(bound - sr.best_abs_ratio).dump()});
  const bool ok = sr.found && sr.best_abs_ratio <= bound + 1e-9;
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

std::string usage() {
  return "usage: borsuk <command> [options]\n"
         "commands:\n"
         "  plan          parameters for --r --d (fixed radius) or --d (shrinking radius)\n"
         "  build         point set for --r --d [--n --a --k overrides]; --out writes it to a file\n"
         "  certify       polynomial-rank certificate for --n --a [--p]\n"
         "  bound         counting bound for --r --d, or the shrinking-radius chain for --d [--c-phi]\n"
         "  find-d0       threshold dimension for --r\n"
         "  asymptotic    entropy base for --r (or --d in shrinking mode)\n"
         "  upper         simplex-partition piece diameters for --c-r [--d | --d-max] [--restarts]\n"
         "  optimal-poly  extremal polynomial search for --m [--n] [--samples]\n"
         "common options: --seed --format json|csv|text --out PATH --threads N --tol X\n"
         "exit codes: 0 pass, 1 mathematical check failed, 2 usage or infeasible input\n";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"borsuk"};
  app.set_help_flag("-h,--help");
  RunConfig c;
  c.threads = default_threads();
  std::string command, format = "json";
  std::string r, d, out;
  std::uint64_t n = 0, k = 0, a = 0, p = 0;
  double c_r = 0;
  unsigned m = 0;
  app.add_option("command", command)->required();
  auto* opt_r = app.add_option("--r", r);
  auto* opt_d = app.add_option("--d", d);
  auto* opt_n = app.add_option("--n", n);
  auto* opt_k = app.add_option("--k", k);
  auto* opt_a = app.add_option("--a", a);
  auto* opt_p = app.add_option("--p", p);
  app.add_option("--c-phi", c.c_phi);
  app.add_option("--tol", c.tol);
  app.add_option("--seed", c.seed);
  app.add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
  auto* opt_out = app.add_option("--out", out);
  app.add_option("--threads", c.threads)->check(CLI::PositiveNumber);
  auto* opt_cr = app.add_option("--c-r", c_r);
  app.add_option("--restarts", c.restarts)->check(CLI::PositiveNumber);
  app.add_option("--d-max", c.d_max);
  auto* opt_m = app.add_option("--m", m);
  app.add_option("--samples", c.samples);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto it = kCommands.find(command);
  if (it == kCommands.end()) throw UsageError("unknown command: " + command);
  c.command = it->second;
  c.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;
  if (*opt_r) c.r = r;
  if (*opt_d) c.d = d;
  if (*opt_n) c.n = n;
  if (*opt_k) c.k = k;
  if (*opt_a) c.a = a;
  if (*opt_p) c.p = p;
  if (*opt_out) c.out = out;
  if (*opt_cr) c.c_r = c_r;
  if (*opt_m) c.m = m;

  switch (c.command) {
    case Command::Plan:
    case Command::Bound:
      if (!c.d) throw UsageError(command + " needs --d");
      break;
    case Command::Build:
      if (!c.r || !c.d) throw UsageError("build needs --r and --d");
      break;
    case Command::Certify:
      if (!c.n || !c.a) throw UsageError("certify needs --n and --a");
      break;
    case Command::FindD0:
      if (!c.r) throw UsageError("find-d0 needs --r");
      break;
    case Command::Asymptotic:
      if (!c.r && !c.d) throw UsageError("asymptotic needs --r or --d");
      break;
    case Command::Upper:
      if (!c.c_r) throw UsageError("upper needs --c-r");
      break;
    case Command::OptimalPoly:
      if (!c.m) throw UsageError("optimal-poly needs --m");
      break;
  }
  return c;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Report rep;
  int code = kExitPass;
  switch (c.command) {
    case Command::Plan: code = cmd_plan(c, rep); break;
    case Command::Build: code = cmd_build(c, rep, err); break;
    case Command::Certify: code = cmd_certify(c, rep); break;
    case Command::Bound: code = cmd_bound(c, rep); break;
    case Command::FindD0: code = cmd_find_d0(c, rep); break;
    case Command::Asymptotic: code = cmd_asymptotic(c, rep); break;
    case Command::Upper: code = cmd_upper(c, rep); break;
    case Command::OptimalPoly: code = cmd_optimal_poly(c, rep); break;
  }
  if (c.out && c.command != Command::Build) {
    std::ofstream file(*c.out, std::ios::binary);
    if (!file) throw UsageError("cannot open --out file: " + *c.out);
    emit(rep, c.format, file);
  } else {
    emit(rep, c.format, out);
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_args(args), out, err);
  } catch (const HelpRequested&) {
    out << usage();
    return kExitPass;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << usage();
    return kExitUsage;
  } catch (const std::exception& e) {
    // Domain and argument failures: infeasible parameters rather than false claims.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace borsuk::cli
