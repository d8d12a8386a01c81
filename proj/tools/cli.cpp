#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "dunkl/constants.hpp"
#include "dunkl/error.hpp"
#include "dunkl/hankel.hpp"
#include "dunkl/parallel.hpp"
#include "dunkl/potential.hpp"
#include "dunkl/translate.hpp"
#include "dunkl/verify.hpp"

namespace dunkl::cli {

namespace {

struct Context {
  RunOptions opt;
  std::ostream* err = nullptr;
  json results = json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> files;
  bool synthetic = false;

  void progress(const std::string& msg) const {
    if (!opt.quiet) *err << "dunkl: " << msg << '\n';
  }
  void warn(const std::vector<std::string>& ws) {
    for (const auto& w : ws) {
      if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    }
  }
};

void write_table(Context& ctx, const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& cols) {
  std::ofstream os(ctx.opt.out_dir / name);
  if (!os) throw std::runtime_error("cannot write " + (ctx.opt.out_dir / name).string());
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n' << std::setprecision(17);
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c][i];
    os << '\n';
  }
  ctx.files.push_back(name);
}

InequalityParams resolve_tuple(Section& s, const DunklParams& p, bool weak = false) {
  InequalityParams ip;
  ip.params = p;
  ip.alpha = s.num("alpha");
  ip.beta = s.num("beta", 0.0);
  ip.gamma = s.num("gamma", weak ? 0.0 : ip.alpha - ip.beta);
  ip.p = s.num("p", weak ? 1.0 : 2.0);
  ip.q = s.num("q", ip.p);
  return ip;
}

json estimate_json(const NormEstimate& e) { return json::parse(to_json_line(e)); }

json classification_json(const Classification& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  if (c.reason) j["violated"] = condition_name(*c.reason);
  return j;
}

// ---------------------------------------------------------------------------

void cmd_constant(Section& s, Context& ctx) {
  const auto p = resolve_params(s);
  ctx.synthetic = p.synthetic;
  const auto kind = s.str("kind", "stein-weiss");
  if (kind == "hardy" || kind == "bellman") {
    const double a = s.num("a"), b = s.num("b"), pe = s.num("p");
    ctx.results["sharp"] = kind == "hardy" ? hardy_sharp(a, b, pe, p) : bellman_sharp(a, b, pe, p);
    return;
  }
  if (kind != "stein-weiss" && kind != "classify") throw SchemaError("config.kind: unknown constant '" + kind + "'");
  const auto ip = resolve_tuple(s, p);
  const bool integral = kind == "stein-weiss" && s.flag("integral", false);
  ctx.results["classification"] = classification_json(classify_tuple(ip));
  if (kind == "classify") return;
  const auto sharp = stein_weiss_sharp(ip);
  ctx.results["sharp"] = sharp.value;
  ctx.results["label"] = sharp.label;
  ctx.results["gamma_alpha"] = riesz_gamma(p, ip.alpha);
  if (integral) {
    const double v = stein_weiss_integral(ip, make_riesz_spec(p, ip.alpha));
    ctx.results["integral"] = v;
    ctx.results["relative_difference"] = (v - sharp.value) / sharp.value;
  }
}

void cmd_kernel(Section& s, Context& ctx) {
  const auto p = resolve_params(s);
  ctx.synthetic = p.synthetic;
  const double alpha = s.num("alpha");
  const auto spec = make_riesz_spec(p, alpha);
  const double r = s.num("r", 1.0);
  std::vector<double> tdef;
  for (int k = 0; k <= 64; ++k) tdef.push_back(std::pow(10.0, -2.0 + 4.0 * k / 64.0));
  const auto t = s.nums("t", tdef);
  std::vector<double> rdef;
  for (int k = 0; k <= 18; ++k) rdef.push_back(0.05 * k);
  for (int k = 2; k <= 8; ++k) rdef.push_back(1.0 - std::pow(10.0, -k));
  const auto rho = s.nums("rho", rdef);
  std::vector<double> phi(t.size()), ps(rho.size());
  for (std::size_t i = 0; i < t.size(); ++i) phi[i] = phi0(r, t[i], spec);
  for (std::size_t i = 0; i < rho.size(); ++i) ps[i] = psi(rho[i], alpha, p);
  write_table(ctx, "kernel.csv", {"t", "phi0"}, {t, phi});
  write_table(ctx, "psi.csv", {"rho", "psi"}, {rho, ps});
  ctx.results["gamma_alpha"] = spec.gamma_alpha;
  ctx.results["psi_at_one"] = psi_at_one(alpha, p);
}

void cmd_apply(Section& s, Context& ctx) {
  const auto op = s.str("op", "");
  const auto p = resolve_params(s);
  ctx.synthetic = p.synthetic;
  const auto grid = resolve_grid(s);
  const auto f = resolve_profile(s, grid);
  ctx.warn(f.warnings());
  const auto& nodes = f.grid().nodes();
  auto emit = [&](const std::string& name, const RadialFunction& out, std::optional<double> origin) {
    std::vector<double> r, v;
    if (origin) {
      r.push_back(0.0);
      v.push_back(*origin);
    }
    r.insert(r.end(), nodes.begin(), nodes.end());
    v.insert(v.end(), out.samples().begin(), out.samples().end());
    write_table(ctx, name, {"r", "value"}, {r, v});
    ctx.warn(out.warnings());
  };
  ctx.progress("apply " + op + " on " + std::to_string(nodes.size()) + " nodes");
  if (op == "riesz") {
    const auto spec = make_riesz_spec(p, s.num("alpha"));
    const double at0 = riesz_at_origin(f, spec);
    emit("riesz.csv", riesz_apply(f, spec), at0);
    ctx.results["value_at_origin"] = at0;
  } else if (op == "maximal") {
    const double alpha = s.num("alpha", 0.0);
    const long per = s.integer("per_decade", 64);
    if (per < 1) throw SchemaError("config.per_decade: must be positive");
    const auto R = s.nums("R", default_ball_radii(f, static_cast<std::size_t>(per)));
    const auto m = maximal_apply(f, alpha, p, R);
    emit("maximal.csv", m.value, m.at_origin);
    ctx.results["value_at_origin"] = m.at_origin;
    if (alpha == 0.0) {
      std::vector<double> r{0.0}, v{m.normalized_at_origin};
      r.insert(r.end(), nodes.begin(), nodes.end());
      v.insert(v.end(), m.normalized.begin(), m.normalized.end());
      write_table(ctx, "maximal_normalized.csv", {"r", "value"}, {r, v});
    }
  } else if (op == "hardy") {
    emit("hardy.csv", hardy_apply(f, p), 0.0);
  } else if (op == "bellman") {
    const auto b = bellman_apply(f, p);
    emit("bellman.csv", b, integrate_nu_lambda(f, p));
  } else if (op == "hankel") {
    const auto rho = s.nums("rho", nodes);
    auto hv = hankel_values(f, rho, p);
    write_table(ctx, "hankel.csv", {"rho", "value"}, {rho, hv.values});
    ctx.warn(hv.warnings);
  } else if (op == "translate") {
    const double sh = s.num("s");
    const auto method = s.str("method", "geometric");
    if (method == "geometric") {
      emit("translate.csv", gegenbauer_translate(f, sh, p), f.at(sh));
    } else if (method == "spectral") {
      emit("translate.csv", translate_spectral(f, sh, p), std::nullopt);
    } else {
      throw SchemaError("config.method: expected geometric or spectral");
    }
  } else {
    throw SchemaError("config.op: apply needs riesz|maximal|hardy|bellman|hankel|translate");
  }
}

void cmd_verify(Section& s, Context& ctx) {
  const auto op = s.str("op", "");
  const auto p = resolve_params(s);
  ctx.synthetic = p.synthetic;
  json rows = json::array();
  std::vector<double> Lc, ratio, sharp, gap;
  auto record = [&](const NormEstimate& e) {
    rows.push_back(estimate_json(e));
    Lc.push_back(e.L);
    ratio.push_back(e.ratio);
    sharp.push_back(e.sharp);
    gap.push_back(e.gap);
    ctx.warn(e.warnings);
  };
  if (op == "mellin") {
    const auto grid = resolve_grid(s);
    const auto g = s.has("profile") ? resolve_profile(s, grid)
                                    : RadialFunction::from_tag(grid, LogIndicatorTag{1.0, std::exp(1.0), 1.0, 0.0});
    if (!s.has("profile")) s.resolved["profile"] = {{"kind", "log_indicator"}, {"lo", 1.0}, {"hi", std::exp(1.0)}};
    const double pe = s.num("p", 2.0);
    for (double L : s.nums("L", {5.0})) record(mellin_extremizer_ratio(g, pe, L));
    write_table(ctx, "mellin.csv", {"L", "ratio", "sharp", "gap"}, {Lc, ratio, sharp, gap});
  } else if (op == "hardy") {
    const auto variant = s.str("variant", "hardy");
    const double a = s.num("a"), b = s.num("b"), pe = s.num("p");
    const bool hardy = variant == "hardy";
    if (!hardy && variant != "bellman") throw SchemaError("config.variant: expected hardy or bellman");
    const double c = p.b_lambda / (hardy ? hardy_sharp(a, b, pe, p) : bellman_sharp(a, b, pe, p));
    for (double m : s.nums("L_times_c", {10.0, 20.0, 40.0, 80.0})) {
      const double L = m / c;
      record(hardy ? hardy_norm_estimate(a, b, pe, p, L) : bellman_norm_estimate(a, b, pe, p, L));
    }
    write_table(ctx, variant + ".csv", {"L", "ratio", "sharp", "gap"}, {Lc, ratio, sharp, gap});
  } else if (op == "stein-weiss") {
    const auto grid = resolve_grid(s);
    const auto ip = resolve_tuple(s, p);
    const auto spec = make_riesz_spec(p, ip.alpha);
    if (s.has("L")) {
      for (double L : s.nums("L", {})) record(stein_weiss_ratio(stein_weiss_family(grid, ip, L), ip, spec));
    } else {
      const auto f = resolve_profile(s, grid);
      record(stein_weiss_ratio(f, ip, spec));
    }
    write_table(ctx, "stein_weiss.csv", {"L", "ratio", "sharp", "gap"}, {Lc, ratio, sharp, gap});
  } else if (op == "weak-type") {
    const auto grid = resolve_grid(s);
    const auto ip = resolve_tuple(s, p, true);
    const auto f = resolve_profile(s, grid);
    const auto lam = s.nums("lambdas", {});
    const auto r = weak_type_scan(f, ip, make_riesz_spec(p, ip.alpha), lam);
    write_table(ctx, "weak_type.csv", {"lambda", "measure"}, {r.lambdas, r.measures});
    ctx.results["sup"] = r.value;
    ctx.results["lambda_at_sup"] = r.lambda_at_sup;
    ctx.warn(r.warnings);
    return;
  } else {
    throw SchemaError("config.op: verify needs mellin|hardy|stein-weiss|weak-type");
  }
  ctx.results["estimates"] = rows;
}

void cmd_sweep(Section& s, Context& ctx) {
  const auto lambdas = s.nums("lambda", {0.0, 0.5, 2.0});
  const auto alphas = s.nums("alpha", {0.5, 1.0, 1.5});
  const auto ps = s.nums("p", {1.5, 2.0, 3.0});
  // beta = (alpha - d/p) + t (d/p' - alpha + d/p), t in (0, 1), so gamma < d/p and beta < d/p'.
  const auto fr = s.nums("beta_fraction", {0.5});
  std::vector<InequalityParams> tuples;
  for (double lam : lambdas) {
    const auto P = params_from_lambda(lam);
    for (double a : alphas) {
      for (double pe : ps) {
        for (double t : fr) {
          const double d = P.d_k, pp = conjugate_exponent(pe);
          const double lo = a - d / pe, hi = d / pp;
          const double be = lo + t * (hi - lo);
          tuples.push_back({a, be, a - be, pe, pe, P});
        }
      }
    }
  }
  ctx.progress("sweep over " + std::to_string(tuples.size()) + " tuples");
  std::vector<SweepRow> rows(tuples.size());
  std::vector<std::string> errs(tuples.size());
  parallel_for(tuples.size(), [&](std::size_t i) {
    rows[i].ip = tuples[i];
    try {
      const double sh = stein_weiss_sharp(tuples[i]).value;
      const double v = stein_weiss_integral(tuples[i], make_riesz_spec(tuples[i].params, tuples[i].alpha));
      rows[i].est.ratio = v;
      rows[i].est.sharp = sh;
      rows[i].est.gap = (sh - v) / sh;
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  std::vector<SweepRow> kept;
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errs[i].empty()) {
      ctx.warnings.push_back("tuple " + std::to_string(i) + " skipped: " + errs[i]);
      continue;
    }
    worst = std::max(worst, std::abs(rows[i].est.gap));
    kept.push_back(rows[i]);
  }
  std::ofstream os(ctx.opt.out_dir / "sweep.csv");
  write_sweep_csv(os, kept);
  ctx.files.push_back("sweep.csv");
  ctx.results["tuples"] = kept.size();
  ctx.results["max_relative_gap"] = worst;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

int run(const nlohmann::json& config, const RunOptions& opt, std::ostream& err) {
  Context ctx;
  ctx.opt = opt;
  ctx.err = &err;
  std::string command;
  json resolved;
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << "dunkl: " << kind << ": " << msg << '\n';
    return code;
  };
  try {
    Section s(config, "config");
    command = s.str("command", "");
    std::filesystem::create_directories(opt.out_dir);
    if (command == "constant") {
      cmd_constant(s, ctx);
    } else if (command == "kernel") {
      cmd_kernel(s, ctx);
    } else if (command == "apply") {
      cmd_apply(s, ctx);
    } else if (command == "verify") {
      cmd_verify(s, ctx);
    } else if (command == "sweep") {
      cmd_sweep(s, ctx);
    } else {
      throw SchemaError("config.command: expected constant|kernel|apply|verify|sweep");
    }
    s.finish();
    resolved = s.resolved;
  } catch (const SchemaError& e) {
    return fail(bad_config, "schema error", e.what());
  } catch (const ConfigError& e) {
    return fail(bad_config, "configuration error", e.what());
  } catch (const InadmissibleError& e) {
    return fail(inadmissible, "inadmissible parameters", e.what());
  } catch (const DomainError& e) {
    return fail(inadmissible, "inadmissible parameters", e.what());
  } catch (const DivergenceError& e) {
    if (e.where() == DivergenceError::Where::series) return fail(numerical_failure, "numerical failure", e.what());
    return fail(inadmissible, "inadmissible parameters", e.what());
  } catch (const std::exception& e) {
    return fail(numerical_failure, "numerical failure", e.what());
  }

  json report;
  report["command"] = command;
  report["config"] = resolved;
  report["results"] = ctx.results;
  report["files"] = ctx.files;
  report["warnings"] = ctx.warnings;
  std::ofstream(opt.out_dir / "report.json") << report.dump(2) << '\n';
  json meta;
  meta["generated_at"] = utc_now();
  meta["version"] = "0.1.0";
  meta["synthetic_parameters"] = ctx.synthetic;
  std::ofstream(opt.out_dir / "metadata.json") << meta.dump(2) << '\n';
  ctx.progress("wrote " + (opt.out_dir / "report.json").string());
  return ok;
}

int run_file(const std::filesystem::path& config_path, const RunOptions& opt, std::ostream& err) {
  std::ifstream is(config_path);
  if (!is) {
    err << "dunkl: schema error: cannot open " << config_path.string() << '\n';
    return bad_config;
  }
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    err << "dunkl: schema error: " << e.what() << '\n';
    return bad_config;
  }
  return run(cfg, opt, err);
}

}  // namespace dunkl::cli
