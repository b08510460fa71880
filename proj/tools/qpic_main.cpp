// qpic: charge-equation simulator and control synthesizer for a 3-D quantum
// particle coupled to a time-dependent point interaction.
//
// Subcommands:
//   simulate     solve the charge equation, evaluate the projection
//                functional, optionally reconstruct psi(T, r)
//   control      synthesize a control profile hitting a target projection
//   verify       run the discretization self-checks on the configured grid
//   asymptotics  small-time expansion fits, phase witness, restarted fit
//
// Exit codes: 0 success, 2 configuration, 3 accuracy/conditioning,
// 4 no convergence, 5 verification failure, 6 degenerate state.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpic/asymptotics.hpp"
#include "qpic/config.hpp"
#include "qpic/functional.hpp"
#include "qpic/io.hpp"
#include "qpic/kernels.hpp"
#include "qpic/propagation.hpp"
#include "qpic/synthesis.hpp"
#include "qpic/verification.hpp"
#include "qpic/volterra.hpp"

namespace {

using json = nlohmann::json;
using namespace qpic;

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void write_json(const std::string& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw config_error("cannot create output directory: " + dir);
}

std::vector<cplx> real_as_series(const std::vector<double>& x) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = cplx(x[i], 0.0);
  return out;
}

int run_simulate(const RunConfig& cfg, const std::vector<double>& coeffs,
                 bool with_psi, bool bound_mode) {
  const auto t_start = std::chrono::steady_clock::now();
  const PhysicsParams& p = cfg.physics;
  const TimeGrid g = cfg.grid();
  prepare_out_dir(cfg.out_dir);

  json summary;
  summary["physics"] = {{"alpha_bar", p.alpha_bar}, {"T", p.T}};
  summary["grid"] = {{"n_steps", g.n_steps}, {"h", g.h()}};

  if (bound_mode) {
    // Diagnostic run on the interaction's own bound state: the charge is an
    // exact oscillator and the projection stays on the unit circle.
    const AbelWeights aw(g);
    const std::vector<cplx> src = abel_source_singular(
        g, [&p](double s) { return bound_trace_reg(s, p); });
    const std::vector<double> pot(g.size(), p.alpha_bar);
    const ComplexSeries q = solve_charge(aw, g, src, pot);

    double rel_worst = 0.0, mod_mean = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      const cplx exact = bound_charge_exact(g.node(j), p);
      rel_worst = std::max(rel_worst,
                           std::abs(q.v[j] - exact) / std::abs(exact));
      mod_mean += std::abs(q.v[j]);
    }
    mod_mean /= g.size();

    const std::vector<cplx> pw = bound_pair_weights(g, p);
    cplx pairing = 0.0;
    for (int j = 0; j <= g.n_steps; ++j) pairing += pw[j] * q.v[j];
    const cplx f = overlap_bound_bound(g.T, p) + cplx(0.0, 1.0) * pairing;

    write_series_csv(join_path(cfg.out_dir, "charge.csv"), g, q.v);
    summary["mode"] = "bound-state";
    summary["charge_modulus_mean"] = mod_mean;
    summary["charge_rel_error_max"] = rel_worst;
    summary["F"] = complex_json(f);
    summary["abs_F"] = std::abs(f);
  } else {
    const RadialState st = make_initial_state(cfg.state_a, cfg.state_b, p);
    const FunctionalContext ctx(p, st, g);
    ControlProfile alpha(g.T, coeffs);
    if (coeffs.empty())
      alpha = ControlProfile(g.T, std::vector<double>(cfg.control.n_basis, 0.0));

    const ComplexSeries v = evaluate_V(ctx, alpha);
    const cplx f = evaluate_F(ctx, v);

    write_series_csv(join_path(cfg.out_dir, "charge.csv"), g, v.v);
    std::vector<double> av(g.size());
    for (int j = 0; j < g.size(); ++j) av[j] = alpha.eval(g.node(j));
    write_series_csv(join_path(cfg.out_dir, "alpha.csv"), g,
                     real_as_series(av));

    summary["mode"] = "state";
    summary["state"] = {{"a", cfg.state_a},
                        {"b", cfg.state_b},
                        {"beta", st.beta}};
    summary["coeffs"] = alpha.c;
    summary["F"] = complex_json(f);
    summary["abs_F"] = std::abs(f);
    summary["charge_sup"] = v.max_abs();

    if (with_psi) {
      const double r_end = std::max(14.0, st.r_big + 4.0);
      const int nr = 1120;
      std::vector<double> radii(nr);
      for (int j = 1; j <= nr; ++j) radii[j - 1] = r_end / nr * j;
      const std::vector<cplx> psi =
          reconstruct_wavefunction(st, v, g.T, radii);
      write_radial_csv(join_path(cfg.out_dir, "psi_T.csv"), radii, psi);
      summary["psi_norm"] = reconstructed_norm(st, v, g.T);
    }
  }

  summary["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  write_json(join_path(cfg.out_dir, "summary.json"), summary);
  return 0;
}

int run_control(const RunConfig& cfg, cplx target) {
  const PhysicsParams& p = cfg.physics;
  const TimeGrid g = cfg.grid();
  prepare_out_dir(cfg.out_dir);

  const RadialState st = make_initial_state(cfg.state_a, cfg.state_b, p);
  const FunctionalContext ctx(p, st, g);
  const ControlResult res = solve_control(ctx, target, cfg.control);

  json out;
  out["target"] = complex_json(target);
  out["coeffs"] = res.alpha.c;
  out["achieved"] = complex_json(res.achieved);
  out["residual"] = res.residual;
  out["iterations"] = res.iterations;
  out["sigma"] = {res.sigma[0], res.sigma[1]};
  out["h1_norm"] = res.alpha.h1_norm();
  out["converged"] = res.converged;
  write_json(join_path(cfg.out_dir, "control.json"), out);

  std::vector<double> av(g.size());
  for (int j = 0; j < g.size(); ++j) av[j] = res.alpha.eval(g.node(j));
  write_series_csv(join_path(cfg.out_dir, "alpha.csv"), g, real_as_series(av));
  const ComplexSeries v = evaluate_V(ctx, res.alpha);
  write_series_csv(join_path(cfg.out_dir, "charge.csv"), g, v.v);

  if (!res.converged) {
    std::fprintf(stderr,
                 "control: no convergence (residual %.3e after %d iterations)\n",
                 res.residual, res.iterations);
    return 4;
  }
  std::printf("control: residual %.3e in %d iterations\n", res.residual,
              res.iterations);
  return 0;
}

int run_verify(const RunConfig& cfg) {
  prepare_out_dir(cfg.out_dir);
  const VerifyReport rep = run_verification(cfg);
  json out;
  out["all_pass"] = rep.all_pass;
  out["checks"] = json::array();
  for (const VerifyCheck& c : rep.checks) {
    out["checks"].push_back({{"name", c.name},
                             {"error", c.error},
                             {"tolerance", c.tolerance},
                             {"pass", c.pass}});
    std::printf("%-24s error %.3e  tolerance %.3e  %s\n", c.name.c_str(),
                c.error, c.tolerance, c.pass ? "pass" : "FAIL");
  }
  write_json(join_path(cfg.out_dir, "verify.json"), out);
  return rep.all_pass ? 0 : 5;
}

int run_asymptotics_cmd(const RunConfig& cfg) {
  const PhysicsParams& p = cfg.physics;
  const TimeGrid g = cfg.grid();
  prepare_out_dir(cfg.out_dir);

  const RadialState st = make_initial_state(cfg.state_a, cfg.state_b, p);
  const FunctionalContext ctx(p, st, g);
  const AsymptoticsReport rep =
      run_asymptotics(ctx, cfg.asym_t_max, cfg.asym_n_steps);

  json out;
  out["m"] = rep.lo.m;
  out["a_m"] = complex_json(rep.lo.a_m);
  out["A"] = rep.ec.A;
  out["B"] = rep.ec.B;
  out["c"] = rep.ec.c;
  out["power"] = {{"exponent", rep.power.exponent},
                  {"expected_exponent", rep.power.expected_exponent},
                  {"amplitude", rep.power.amplitude},
                  {"expected_amplitude", rep.power.expected_amplitude},
                  {"second", complex_json(rep.power.second_coeff)},
                  {"expected_second", complex_json(rep.power.expected_second)},
                  {"n_used", rep.power.n_used}};
  out["arg"] = {{"intercept", rep.argfit.intercept},
                {"sqrt_slope", rep.argfit.sqrt_slope},
                {"t_slope", rep.argfit.t_slope},
                {"model_intercept", rep.argfit.model_intercept},
                {"model_sqrt", rep.argfit.model_sqrt},
                {"intercept_err", rep.argfit.intercept_err},
                {"sqrt_rel_err", rep.argfit.sqrt_rel_err}};
  out["witness"] = {{"total_variation", rep.witness.total_variation},
                    {"violates", rep.witness.violates},
                    {"n_used", rep.witness.n_used}};
  out["shifted"] = {{"t0", rep.shifted.t0},
                    {"a0", complex_json(rep.shifted.a0)},
                    {"exponent", rep.shifted.exponent},
                    {"amplitude", rep.shifted.amplitude},
                    {"expected_amplitude", rep.shifted.expected_amplitude},
                    {"sqrt_slope", rep.shifted.sqrt_slope},
                    {"model_sqrt", rep.shifted.model_sqrt},
                    {"intercept_err", rep.shifted.intercept_err}};
  write_json(join_path(cfg.out_dir, "asymptotics.json"), out);

  // Phase trace of the fine-grid charge, against sqrt(t).
  const double lambda = p.lambda_bar();
  std::vector<std::vector<double>> rows;
  double prev = 0.0;
  bool have_prev = false;
  for (int j = 0; j <= rep.fine.n_steps; ++j) {
    const cplx v = rep.v0_fine[j];
    if (std::abs(v) < 1e-12) continue;
    const double t = rep.fine.node(j);
    double th =
        std::arg(v * std::exp(cplx(0.0, -(p.T - t) * lambda)));
    if (have_prev) th = prev + std::remainder(th - prev, 2.0 * kPi);
    prev = th;
    have_prev = true;
    rows.push_back({std::sqrt(t), th, std::abs(v)});
  }
  write_table_csv(join_path(cfg.out_dir, "theta.csv"), "sqrt_t,theta,absV0",
                  rows);

  std::printf("asymptotics: m=%d exponent %.4f (expected %.1f), "
              "witness tv %.3e (violates=%s)\n",
              rep.lo.m, rep.power.exponent, rep.power.expected_exponent,
              rep.witness.total_variation,
              rep.witness.violates ? "true" : "false");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"charge-equation simulation and bound-state projection control"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::vector<double> coeffs;
  std::vector<double> target_pair;
  bool with_psi = false;
  bool bound_mode = false;

  CLI::App* sim = app.add_subcommand("simulate", "solve the charge equation");
  sim->add_option("--config", config_path, "config file (.ini or .json)");
  sim->add_option("--coeffs", coeffs, "control sine coefficients")
      ->delimiter(',');
  sim->add_option("--out", out_override, "output directory");
  sim->add_flag("--psi", with_psi, "reconstruct psi(T, r) and its norm");
  sim->add_flag("--bound-state", bound_mode,
                "diagnostic run on the interaction bound state");

  CLI::App* ctl = app.add_subcommand("control", "synthesize a control profile");
  ctl->add_option("--config", config_path, "config file (.ini or .json)");
  ctl->add_option("--target", target_pair, "target projection re,im")
      ->required()
      ->delimiter(',')
      ->expected(2);
  ctl->add_option("--out", out_override, "output directory");

  CLI::App* ver = app.add_subcommand("verify", "discretization self-checks");
  ver->add_option("--config", config_path, "config file (.ini or .json)");
  ver->add_option("--out", out_override, "output directory");

  CLI::App* asy =
      app.add_subcommand("asymptotics", "small-time expansion analysis");
  asy->add_option("--config", config_path, "config file (.ini or .json)");
  asy->add_option("--out", out_override, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    else cfg.validate();
    if (!out_override.empty()) cfg.out_dir = out_override;

    if (sim->parsed()) return run_simulate(cfg, coeffs, with_psi, bound_mode);
    if (ctl->parsed())
      return run_control(cfg, cplx(target_pair[0], target_pair[1]));
    if (ver->parsed()) return run_verify(cfg);
    if (asy->parsed()) return run_asymptotics_cmd(cfg);
    return 2;
  } catch (const config_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const domain_error& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const degenerate_error& e) {
    std::fprintf(stderr, "degenerate state: %s\n", e.what());
    return 6;
  } catch (const accuracy_error& e) {
    std::fprintf(stderr, "accuracy failure: %s\n", e.what());
    return 3;
  } catch (const conditioning_error& e) {
    std::fprintf(stderr, "conditioning failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
