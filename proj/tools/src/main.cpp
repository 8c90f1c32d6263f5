#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "commands.hpp"
#include "cwgng/cwgng.hpp"

namespace {

using namespace cwgng::cli;

void model_flags(CLI::App* app, Common& c) {
  app->add_option("--J", c.J, "coupling J > 0")->required();
  app->add_option("--h", c.h, "external field");
}

void output_flags(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "csv or json")->envname("CWGNG_FORMAT");
  app->add_option("--out", c.out, "output file, '-' for stdout");
  app->add_option("--tol", c.tol, "minimizer tie tolerance")->envname("CWGNG_TOL");
  app->add_option("--seed", c.seed, "random seed (echoed; analytic commands are deterministic)")->envname("CWGNG_SEED");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Conditioned large-deviation tools for the Curie-Weiss model under infinite-temperature Glauber dynamics",
               "cwgng"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(cwgng::kVersion));
  app.require_subcommand(1);

  Common c;
  OracleOptions o;
  ScanOptions s;
  std::function<int()> run;

  auto with_t = [&](CLI::App* sub) { sub->add_option("--t", c.t, "time t > 0"); };
  auto with_t_max = [&](CLI::App* sub) { sub->add_option("--t-max", c.t_max, "time horizon"); };
  auto with_alpha = [&](CLI::App* sub) { sub->add_option("--alpha", c.alpha, "terminal magnetization"); };
  auto with_samples = [&](CLI::App* sub) { sub->add_option("--samples", c.samples, "sample count"); };

  auto simple = [&](const char* name, const char* help, int (*fn)(const Common&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    model_flags(sub, c);
    output_flags(sub, c);
    sub->callback([&run, &c, fn] { run = [&c, fn] { return fn(c); }; });
    return sub;
  };

  CLI::App* cost = simple("cost", "conditioned cost m -> I(m | t, alpha)", cmd_cost);
  with_t(cost), with_alpha(cost), with_samples(cost);

  CLI::App* traj = simple("trajectory", "optimal path ending at alpha", cmd_trajectory);
  with_t(traj), with_alpha(traj), with_samples(traj);
  traj->add_option("--m", c.m, "starting magnetization (default: global minimizer)");

  CLI::App* branch = simple("branch", "global minimizer branch over time", cmd_branch);
  with_t_max(branch), with_alpha(branch), with_samples(branch);

  CLI::App* scen = simple("scenario", "bifurcation scenario for one alpha", cmd_scenario);
  with_alpha(scen), with_t_max(scen);
  scen->add_flag("--validate", c.validate, "cross-check against branch tracking");

  CLI::App* cross = simple("crossovers", "crossover times and thresholds", cmd_crossovers);
  cross->add_flag("--validate", c.validate, "probe the bad set around each crossover");

  CLI::App* classify = simple("classify", "Gibbs / non-Gibbs timeline", cmd_classify);
  with_t_max(classify);
  classify->add_option("--samples", c.samples, "probes per segment");

  CLI::App* over = simple("overshoot", "overshoot regime and profile", cmd_overshoot);
  with_alpha(over);

  CLI::App* spec = simple("speckernel", "single-spin conditional kernel", cmd_speckernel);
  with_t(spec), with_alpha(spec);
  spec->add_option("--m", c.m, "initial magnetization (default: each global minimizer)");

  CLI::App* bad = simple("badset", "bad magnetizations at t or over (0, t-max]", cmd_badset);
  with_t(bad), with_t_max(bad), with_samples(bad);

  CLI::App* oracle = app.add_subcommand("oracle", "independent numerical cross-checks");
  oracle->require_subcommand(1);
  auto oracle_sub = [&](const char* name, const char* help, int (*fn)(const Common&, const OracleOptions&)) {
    CLI::App* sub = oracle->add_subcommand(name, help);
    model_flags(sub, c);
    sub->add_option("--out", c.out, "output file, '-' for stdout");
    sub->add_option("--alpha", c.alpha, "terminal magnetization");
    sub->add_option("--t", c.t, "time t > 0")->required();
    sub->add_option("--tol", c.tol, "comparison tolerance")->envname("CWGNG_TOL");
    sub->callback([&run, &c, &o, fn] { run = [&c, &o, fn] { return fn(c, o); }; });
    return sub;
  };
  CLI::App* dp = oracle_sub("path-dp", "dynamic programming over discrete paths", cmd_oracle_path_dp);
  dp->add_option("--grid", o.grid, "magnetization levels");
  dp->add_option("--time-steps", o.time_steps, "time steps (default: grid)");
  dp->add_option("--span", o.span, "longest edge in time steps");
  for (CLI::App* sub : {oracle_sub("mc-kernel", "Monte Carlo single-spin conditional kernel", cmd_oracle_mc_kernel),
                        oracle_sub("mc-posterior", "Monte Carlo initial magnetization posterior",
                                   cmd_oracle_mc_posterior)}) {
    sub->add_option("--N", o.N, "spins");
    sub->add_option("--replicas", o.replicas, "independent replicas");
    sub->add_option("--window", o.window, "conditioning window half-width");
    sub->add_option("--seed", c.seed, "random seed")->envname("CWGNG_SEED");
    sub->add_option("--jobs", c.jobs, "worker threads")->envname("CWGNG_JOBS");
    if (sub->get_name() == "mc-posterior") sub->add_option("--bin", o.bin, "histogram smoothing half-width");
  }

  CLI::App* scan = app.add_subcommand("scan", "batch run driven by a YAML config");
  scan->add_option("--config", s.config, "YAML config")->required();
  scan->add_option("--out-dir", s.out_dir, "output directory")->required();
  scan->add_flag("--resume", s.resume, "skip outputs that already exist");
  scan->add_option("--jobs", s.jobs, "worker threads");
  scan->add_option("--seed", s.seed, "random seed");
  scan->callback([&run, &s] { run = [&s] { return cmd_scan(s); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  return run ? run() : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const OracleFailure& e) {
    std::cerr << "cwgng: oracle failure: " << e.message << '\n';
    return kOracleFailure;
  } catch (const cwgng::InsufficientAcceptance& e) {
    std::cerr << "cwgng: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const cwgng::DomainError& e) {
    std::cerr << "cwgng: invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const cwgng::Error& e) {
    std::cerr << "cwgng: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "cwgng: internal error: " << e.what() << '\n';
    return kInvariant;
  }
}
