#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gabor/criterion_operator.hpp"
#include "gabor/error.hpp"
#include "gabor/framecheck.hpp"
#include "gabor/io.hpp"
#include "gabor/lambda.hpp"
#include "gabor/symbols.hpp"
#include "gabor/windows.hpp"

#ifndef GABOR_VERSION
#define GABOR_VERSION "0.0.0"
#endif

namespace gabor::cli {
namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string out_path = "-";
  std::vector<std::string> outputs;
};

void emit(Context& ctx, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    ctx.out << text;
    ctx.out.flush();
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(Errc::ConfigError, "cannot write " + path);
  f << text;
  ctx.outputs.push_back(path);
}

void emit_json(Context& ctx, const std::string& path, const json& j) { emit(ctx, path, j.dump(2) + "\n"); }

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::NoConvergence:
    case Errc::ToleranceNotMet:
    case Errc::StructureViolation:
    case Errc::NoncancellingDenominator:
      return kExitFailed;
    default:
      return kExitInvalid;
  }
}

Window load_window(const std::string& path) { return validate(pole_terms_from_json(read_json_file(path))); }

// ------------------------------------------------------------------ random instances

double uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

double real_part_away_from_zero(std::mt19937_64& rng) {
  for (;;) {
    const double x = uniform(rng, -1.0, 1.0);
    if (std::abs(x) > 1e-3) return x;
  }
}

cplx random_amplitude(std::mt19937_64& rng) {
  for (;;) {
    const cplx a{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    if (std::abs(a) > 0.1) return a;
  }
}

SimpleWindow random_simple(std::mt19937_64& rng, int N) {
  for (;;) {
    std::vector<PoleTerm> t;
    for (int k = 0; k < N; ++k)
      t.push_back({random_amplitude(rng), {real_part_away_from_zero(rng), uniform(rng, -0.5, 0.5)}, 1});
    try {
      return validate_simple(std::move(t));
    } catch (const Error&) {
    }
  }
}

// ------------------------------------------------------------------ subcommands

int cmd_lambda_build(Context& ctx, double eps, int N, CLI::Option* delta_opt, double delta, CLI::Option* eps1_opt,
                     double eps1) {
  LambdaOverrides o;
  if (delta_opt->count()) o.delta = delta;
  if (eps1_opt->count()) o.eps1 = eps1;
  emit_json(ctx, ctx.out_path, universal_to_json(build_universal(eps, N, o)));
  return kExitOk;
}

int cmd_window_check(Context& ctx, const std::string& spec, const ClassTestOptions& opts) {
  const Window w = load_window(spec);
  const auto rep = class_test(w, opts);
  json j = window_to_json(w);
  j["kind"] = std::holds_alternative<SimpleWindow>(w) ? "simple" : "general";
  j["N"] = terms_of(w).size();
  j["M"] = total_multiplicity(w);
  j["member"] = rep.member;
  j["witness"] = rep.witness ? json(*rep.witness) : json(nullptr);
  j["min_modulus"] = rep.min_modulus;
  j["min_location"] = rep.min_location;
  j["tail_certified"] = rep.tail_certified;
  j["t_max"] = opts.t_max;
  j["steps"] = opts.steps;
  emit_json(ctx, ctx.out_path, j);
  return rep.member ? kExitOk : kExitFailed;
}

int cmd_symbols_table(Context& ctx, const std::string& spec, double eps1) {
  const Window w = load_window(spec);
  const SymbolFamily f = symbol_family(w);
  json j = family_to_json(f);
  const Minimum m = top_symbol_min(f, eps1);
  j["top_min"] = {{"value", m.value}, {"t", m.x}, {"eps1", eps1}};
  json bounds = json::array();
  for (const auto& ms : f.m) bounds.push_back(ms.max_abs(0.0, 1.0));
  j["max_abs_on_unit_interval"] = bounds;
  json closed = json::array();
  for (const auto& t : top_symbol_closed_form(as_general(w)).terms())
    closed.push_back({{"c", to_json_complex(t.c)}, {"w", to_json_complex(t.w)}, {"p", t.p}});
  j["top_closed_form"] = closed;
  emit_json(ctx, ctx.out_path, j);
  return kExitOk;
}

json verify_segment(const Segment& seg, double tol, bool& ok) {
  const Segment e = seg.erased_row ? seg : erase_row(seg);
  const auto d = segment_det(e);
  const double rel = std::abs(d.det - d.block_det * d.tail_product) / std::abs(d.det);
  const bool pass = rel < tol;
  ok = ok && pass;
  return {{"period_index", seg.period_index}, {"xi", seg.xi},  {"erased_row", *e.erased_row},
          {"det", to_json_complex(d.det)},    {"rel_error", rel}, {"pass", pass}};
}

int cmd_det_verify(Context& ctx, int N, int trials, std::uint64_t seed, double tol, const std::string& segments,
                   const std::string& dump, const std::string& spec, double eps, double xi, int periods) {
  json report;
  bool ok = true;
  if (!segments.empty()) {
    json doc = read_json_file(segments);
    if (!doc.is_array()) doc = json::array({doc});
    json results = json::array();
    for (const auto& s : doc) results.push_back(verify_segment(segment_from_json(s), tol, ok));
    report = {{"mode", "segments"}, {"file", segments}, {"results", results}};
  } else if (!dump.empty()) {
    if (spec.empty()) throw Error(Errc::ConfigError, "--dump needs --spec");
    const Window w = load_window(spec);
    const auto set = build_universal(eps, total_multiplicity(w));
    const auto segs = build_segments(xi, set, symbol_family(w), periods);
    json arr = json::array();
    json results = json::array();
    for (const auto& s : segs) {
      arr.push_back(segment_to_json(s));
      json r = verify_segment(s, tol, ok);
      r["layout_matches_operator"] = s.layout_matches_operator();
      results.push_back(r);
    }
    emit_json(ctx, dump, arr);
    report = {{"mode", "dump"}, {"file", dump}, {"results", results}};
  } else {
    if (N < 1) throw Error(Errc::InvalidArgument, "--N must be at least 1");
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const SimpleWindow w = random_simple(rng, N);
      const double alpha = uniform(rng, N + 0.25, N + 2.0);
      const double lo = (N - 1.0) / alpha;
      const double x = uniform(rng, lo + 0.05 * (1.0 - lo), 1.0 - 0.05 * (1.0 - lo));
      const auto r = vandermonde_det(w, x, alpha);
      worst = std::max(worst, std::abs(std::abs(r.direct) - r.formula) / r.formula);
    }
    ok = worst < tol;
    report = {{"mode", "vandermonde"}, {"N", N}, {"trials", trials}, {"seed", seed}, {"max_rel_error", worst}};
  }
  report["tolerance"] = tol;
  report["pass"] = ok;
  emit_json(ctx, ctx.out_path, report);
  return ok ? kExitOk : kExitFailed;
}

int cmd_trick_verify(Context& ctx, int k_only, int trials, std::uint64_t seed, int support, double tol) {
  if (support < 1 || support > 32) throw Error(Errc::InvalidArgument, "--support must lie in [1, 32]");
  std::mt19937_64 rng(seed);
  json per_k = json::array();
  bool ok = true;
  const int k_lo = k_only > 0 ? k_only : 1;
  const int k_hi = k_only > 0 ? k_only : 6;
  for (int k = k_lo; k <= k_hi; ++k) {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      FiniteSequence c{static_cast<int>(std::floor(uniform(rng, -4.0, 1.0))), {}};
      for (int n = 0; n < support; ++n) c.values.push_back(random_amplitude(rng));
      const cplx z{uniform(rng, -3.0, 3.0), uniform(rng, 0.2, 2.0)};
      const cplx l = trick_lhs(k, c, z);
      worst = std::max(worst, std::abs(l - trick_rhs(k, c, z)) / std::abs(l));
    }
    ok = ok && worst < tol;
    per_k.push_back({{"k", k}, {"max_rel_error", worst}});
  }
  emit_json(ctx, ctx.out_path,
            {{"trials", trials}, {"seed", seed}, {"support", support}, {"tolerance", tol}, {"results", per_k},
             {"pass", ok}});
  return ok ? kExitOk : kExitFailed;
}

struct SetChoice {
  PeriodicPointSet points;
  std::optional<UniversalSet> universal;
};

SetChoice choose_set(const Window& w, CLI::Option* eps_opt, double eps, const std::string& set_file) {
  if (!set_file.empty()) return {point_set_from_json(read_json_file(set_file)), std::nullopt};
  if (!eps_opt->count()) throw Error(Errc::ConfigError, "give --eps or --set");
  auto u = build_universal(eps, total_multiplicity(w));
  return {u.points, u};
}

int cmd_frame_estimate(Context& ctx, const std::string& spec, CLI::Option* eps_opt, double eps,
                       const std::string& set_file, const FrameConfig& cfg, std::string summary) {
  const Window w = load_window(spec);
  const auto set = choose_set(w, eps_opt, eps, set_file);
  const auto est = frame_bounds_estimate(symbol_family(w), set.points, cfg);
  std::ostringstream csv;
  write_estimate_csv(csv, est);
  emit(ctx, ctx.out_path, csv.str());
  if (summary.empty() && ctx.out_path != "-") summary = ctx.out_path + ".summary.json";
  json s = estimate_summary(est);
  if (summary.empty()) {
    ctx.err << "summary: " << s.dump() << "\n";
  } else {
    emit_json(ctx, summary, s);
  }
  return kExitOk;
}

int cmd_frame_oracle(Context& ctx, const std::string& spec, CLI::Option* eps_opt, double eps,
                     const std::string& set_file, const FrameConfig& cfg, const OracleConfig& ocfg, double sigma,
                     double half_width, int nodes) {
  const Window w = load_window(spec);
  const auto set = choose_set(w, eps_opt, eps, set_file);
  const auto f = sample([sigma](double t) { return cplx{std::exp(-kPi * t * t / (sigma * sigma)), 0.0}; },
                        -half_width, half_width, static_cast<std::size_t>(nodes));
  const double sum = gabor_sum_oracle(f, w, set.points, ocfg);
  const double ratio = sum / f.norm2();
  const auto est = frame_bounds_estimate(symbol_family(w), set.points, cfg);
  const bool in_band = ratio >= 0.5 * est.A_est && ratio <= 2.0 * est.B_est;
  emit_json(ctx, ctx.out_path,
            {{"oracle_sum", sum},
             {"norm2", f.norm2()},
             {"ratio", ratio},
             {"A_est", est.A_est},
             {"B_est", est.B_est},
             {"band", {0.5 * est.A_est, 2.0 * est.B_est}},
             {"in_band", in_band},
             {"sigma", sigma},
             {"lambda_range", ocfg.lambda_range},
             {"n_shift", ocfg.n_shift}});
  return in_band ? kExitOk : kExitFailed;
}

int cmd_fd_verify(Context& ctx, const std::string& spec, std::vector<double> eps_list, double t_range, int points,
                  double min_order) {
  const Window w = load_window(spec);
  const GeneralWindow g = as_general(w);
  const SymbolFamily fam = general_symbol_family(g);
  if (eps_list.size() < 2) throw Error(Errc::InvalidArgument, "need at least two eps1 values");
  json rows = json::array();
  std::vector<double> sup_err, sym_err;
  for (double e : eps_list) {
    const SimpleWindow s = fd_window(g, e);
    double err = 0.0;
    for (int i = 0; i < points; ++i) {
      const double t = -t_range + 2.0 * t_range * i / (points - 1);
      err = std::max(err, std::abs(eval_window(s.terms, t) - eval_window(g.terms, t)));
    }
    const SymbolFamily fs = simple_symbol_family(s);
    double serr = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double t = k / 100.0;
      for (int m = 0; m < fam.M; ++m) {
        const auto sm = static_cast<std::size_t>(m);
        serr = std::max(serr, std::abs(fs.m[sm](t) - fam.m[sm](t)) / std::max(1.0, std::abs(fam.m[sm](t))));
      }
    }
    sup_err.push_back(err);
    sym_err.push_back(serr);
    rows.push_back({{"eps1", e}, {"sup_error", err}, {"symbol_error", serr}});
  }
  bool ok = true;
  json ratios = json::array(), orders = json::array();
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    const double ratio = sup_err[i - 1] / sup_err[i];
    const double order = std::log(sym_err[i - 1] / sym_err[i]) / std::log(eps_list[i - 1] / eps_list[i]);
    ratios.push_back(ratio);
    orders.push_back(order);
    ok = ok && ratio >= 1.7 && ratio <= 2.3 && order >= min_order;
  }
  emit_json(ctx, ctx.out_path,
            {{"rows", rows}, {"error_ratios", ratios}, {"symbol_orders", orders}, {"min_order", min_order},
             {"pass", ok}});
  return ok ? kExitOk : kExitFailed;
}

json collect_params(const CLI::App* sub) {
  json p = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    if (o->get_name() == "--help" || o->count() == 0) continue;
    std::string name = o->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    const auto& res = o->results();
    p[name] = res.size() == 1 ? json(res.front()) : json(res);
  }
  return p;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Numerical laboratory for Gabor frames with rational windows", "gaborlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GABOR_VERSION);

  Context ctx{out, err, "-", {}};
  std::uint64_t seed = 0;
  int rc = kExitOk;
  std::function<int()> action;

  auto add_common = [&](CLI::App* s) { s->add_option("--out", ctx.out_path, "Output path, '-' for stdout"); };

  // lambda-build
  double lb_eps = 0.0, lb_delta = 0.0, lb_eps1 = 0.0;
  int lb_N = 1;
  auto* lb = app.add_subcommand("lambda-build", "Build the universal set for (eps, N)");
  lb->add_option("--eps", lb_eps)->required();
  lb->add_option("--N", lb_N)->required();
  auto* lb_delta_opt = lb->add_option("--delta", lb_delta);
  auto* lb_eps1_opt = lb->add_option("--eps1", lb_eps1);
  add_common(lb);
  lb->callback([&] { action = [&] { return cmd_lambda_build(ctx, lb_eps, lb_N, lb_delta_opt, lb_delta, lb_eps1_opt, lb_eps1); }; });

  // window-check
  std::string wc_spec;
  ClassTestOptions wc_opts;
  auto* wc = app.add_subcommand("window-check", "Validate a window and test class membership");
  wc->add_option("--spec", wc_spec)->required();
  wc->add_option("--t-max", wc_opts.t_max);
  wc->add_option("--steps", wc_opts.steps);
  wc->add_option("--atol", wc_opts.atol);
  add_common(wc);
  wc->callback([&] { action = [&] { return cmd_window_check(ctx, wc_spec, wc_opts); }; });

  // symbols-table
  std::string st_spec;
  double st_eps1 = 0.01;
  auto* st = app.add_subcommand("symbols-table", "Emit the symbol family m_0..m_{M-1}");
  st->add_option("--spec", st_spec)->required();
  st->add_option("--eps1", st_eps1, "Right margin for the minimum of |m_{M-1}|");
  add_common(st);
  st->callback([&] { action = [&] { return cmd_symbols_table(ctx, st_spec, st_eps1); }; });

  // det-verify
  int dv_N = 2, dv_trials = 200, dv_periods = 1;
  double dv_tol = 1e-9, dv_eps = 0.5, dv_xi = 0.37;
  std::string dv_segments, dv_dump, dv_spec;
  auto* dv = app.add_subcommand("det-verify", "Check determinant identities");
  dv->add_option("--N", dv_N);
  dv->add_option("--trials", dv_trials);
  dv->add_option("--seed", seed);
  dv->add_option("--tol", dv_tol);
  dv->add_option("--segments", dv_segments, "Verify a segment dump");
  dv->add_option("--dump", dv_dump, "Build segments for --spec and write them here");
  dv->add_option("--spec", dv_spec);
  dv->add_option("--eps", dv_eps);
  dv->add_option("--xi", dv_xi);
  dv->add_option("--periods", dv_periods);
  add_common(dv);
  dv->callback([&] {
    action = [&] {
      return cmd_det_verify(ctx, dv_N, dv_trials, seed, dv_tol, dv_segments, dv_dump, dv_spec, dv_eps, dv_xi, dv_periods);
    };
  });

  // trick-verify
  int tv_k = 0, tv_trials = 100, tv_support = 8;
  double tv_tol = 1e-8;
  auto* tv = app.add_subcommand("trick-verify", "Randomized check of the trick identity");
  tv->add_option("--k", tv_k, "Single k (default: 1..6)");
  tv->add_option("--trials", tv_trials);
  tv->add_option("--seed", seed);
  tv->add_option("--support", tv_support);
  tv->add_option("--tol", tv_tol);
  add_common(tv);
  tv->callback([&] { action = [&] { return cmd_trick_verify(ctx, tv_k, tv_trials, seed, tv_support, tv_tol); }; });

  // frame-estimate
  std::string fe_spec, fe_set, fe_summary;
  double fe_eps = 0.5;
  FrameConfig fe_cfg;
  auto* fe = app.add_subcommand("frame-estimate", "Frame-bound estimates from finite sections of L_xi");
  fe->add_option("--spec", fe_spec)->required();
  auto* fe_eps_opt = fe->add_option("--eps", fe_eps);
  fe->add_option("--set", fe_set, "Point-set JSON instead of the universal set");
  fe->add_option("--periods", fe_cfg.periods);
  fe->add_option("--xi-steps", fe_cfg.xi_steps);
  fe->add_option("--eta", fe_cfg.eta);
  fe->add_option("--summary", fe_summary, "Summary JSON path");
  add_common(fe);
  fe->callback([&] { action = [&] { return cmd_frame_estimate(ctx, fe_spec, fe_eps_opt, fe_eps, fe_set, fe_cfg, fe_summary); }; });

  // frame-oracle
  std::string fo_spec, fo_set;
  double fo_eps = 0.5, fo_sigma = 1.0, fo_half = 4.0;
  int fo_nodes = 2048;
  FrameConfig fo_cfg;
  OracleConfig fo_ocfg;
  auto* fo = app.add_subcommand("frame-oracle", "Direct Gabor-sum quadrature for a Gaussian bump");
  fo->add_option("--spec", fo_spec)->required();
  auto* fo_eps_opt = fo->add_option("--eps", fo_eps);
  fo->add_option("--set", fo_set);
  fo->add_option("--sigma", fo_sigma);
  fo->add_option("--half-width", fo_half);
  fo->add_option("--nodes", fo_nodes);
  fo->add_option("--lambda-range", fo_ocfg.lambda_range);
  fo->add_option("--n-shift", fo_ocfg.n_shift);
  fo->add_option("--periods", fo_cfg.periods);
  fo->add_option("--xi-steps", fo_cfg.xi_steps);
  fo->add_option("--eta", fo_cfg.eta);
  add_common(fo);
  fo->callback([&] {
    action = [&] {
      return cmd_frame_oracle(ctx, fo_spec, fo_eps_opt, fo_eps, fo_set, fo_cfg, fo_ocfg, fo_sigma, fo_half, fo_nodes);
    };
  });

  // fd-verify
  std::string fd_spec;
  std::vector<double> fd_eps{1e-2, 5e-3, 2.5e-3};
  double fd_range = 5.0, fd_min_order = 1.0;
  int fd_points = 2001;
  auto* fd = app.add_subcommand("fd-verify", "Convergence of the finite-difference window");
  fd->add_option("--spec", fd_spec)->required();
  fd->add_option("--eps1", fd_eps)->delimiter(',');
  fd->add_option("--t-range", fd_range);
  fd->add_option("--points", fd_points);
  fd->add_option("--min-order", fd_min_order, "required observed symbol order");
  add_common(fd);
  fd->callback([&] { action = [&] { return cmd_fd_verify(ctx, fd_spec, fd_eps, fd_range, fd_points, fd_min_order); }; });

  std::vector<const char*> argv{"gaborlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::string status = "ok";
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    rc = kExitInvalid;
    status = "usage_error";
  }

  if (rc == kExitOk) {
    try {
      rc = action();
      status = rc == kExitOk ? "ok" : "verification_failed";
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      rc = exit_code_for(e.code());
      status = rc == kExitInvalid ? "invalid_input" : "verification_failed";
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      rc = kExitInvalid;
      status = "invalid_input";
    }
  }

  const CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
  json manifest{{"command", sub ? sub->get_name() : ""},
                {"parameters", sub ? collect_params(sub) : json::object()},
                {"seed", seed},
                {"tool_version", GABOR_VERSION},
                {"outputs", ctx.outputs},
                {"status", status},
                {"exit_code", rc},
                {"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                {"timestamp", utc_timestamp()}};
  if (ctx.out_path.empty() || ctx.out_path == "-") {
    err << manifest.dump() << "\n";
  } else {
    try {
      std::ofstream(ctx.out_path + ".manifest.json") << manifest.dump(2) << "\n";
    } catch (...) {
      err << manifest.dump() << "\n";
    }
  }
  return rc;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace gabor::cli
