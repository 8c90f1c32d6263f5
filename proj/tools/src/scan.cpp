#include <yaml-cpp/yaml.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "commands.hpp"
#include "cwgng/cwgng.hpp"
#include "serialize.hpp"

namespace cwgng::cli {

namespace {

namespace fs = std::filesystem;

class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct ScanConfig {
  std::vector<double> J;
  std::vector<double> h{0.0};
  std::vector<double> alpha;
  std::vector<double> t;
  std::vector<std::string> outputs;
  double equality = StationarySolver::kEqualityTolerance;
  int bad_set_grid = 2048;
  int jobs = 1;
  std::uint64_t seed = 1;
  int mc_N = 200;
  long mc_replicas = 20000;
  double mc_window = 0.05;
  Json echo;
};

[[noreturn]] void fail(const std::string& file, const YAML::Node& node, const std::string& key,
                       const std::string& what) {
  std::ostringstream os;
  os << "config " << file;
  if (node && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
  os << ": key '" << key << "': " << what;
  throw ConfigError(os.str());
}

// Rejects keys of a mapping section that are not in `allowed`.
void only(const std::string& file, const YAML::Node& node, const std::string& section,
          const std::set<std::string>& allowed) {
  if (!node.IsMap()) fail(file, node, section, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(file, kv.first, section + "." + key, "unknown key");
  }
}

template <class T>
T scalar(const std::string& file, const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(file, node, key, "expected a number");
  }
}

// A grid is a scalar, a list, or {start, stop, count}.
std::vector<double> grid(const std::string& file, const YAML::Node& node, const std::string& key) {
  if (!node) return {};
  if (node.IsScalar()) return {scalar<double>(file, node, key)};
  if (node.IsSequence()) {
    std::vector<double> out;
    for (const auto& v : node) out.push_back(scalar<double>(file, v, key));
    if (out.empty()) fail(file, node, key, "empty list");
    return out;
  }
  if (!node.IsMap()) fail(file, node, key, "expected a number, a list or {start, stop, count}");
  only(file, node, key, {"start", "stop", "count"});
  for (const char* k : {"start", "stop", "count"}) {
    if (!node[k]) fail(file, node, key + "." + k, "missing");
  }
  const double a = scalar<double>(file, node["start"], key + ".start");
  const double b = scalar<double>(file, node["stop"], key + ".stop");
  const long n = scalar<long>(file, node["count"], key + ".count");
  if (n < 1) fail(file, node["count"], key + ".count", "must be >= 1");
  std::vector<double> out;
  for (long i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1));
  return out;
}

const std::set<std::string>& known_outputs() {
  static const std::set<std::string> k{"psi_c",      "m_star",   "h_star",   "tangency_bounds",
                                       "crossovers", "scenario", "overshoot", "minimizers",
                                       "bad_set",    "mc_kernel"};
  return k;
}

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

ScanConfig load(const ScanOptions& s) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(s.config);
  } catch (const YAML::BadFile&) {
    throw ConfigError("config " + s.config + ": cannot read file");
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << "config " << s.config << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
    throw ConfigError(os.str());
  }
  if (!root.IsMap()) throw ConfigError("config " + s.config + ": top level must be a mapping");
  const std::string& f = s.config;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    static const std::set<std::string> sections{"model", "grids", "outputs", "tolerances",
                                                "parallelism", "seed", "monte_carlo"};
    if (!sections.count(key)) fail(f, kv.first, key, "unknown section");
  }

  ScanConfig c;
  const YAML::Node model = root["model"];
  if (!model || !model.IsMap()) fail(f, root, "model", "missing section");
  only(f, model, "model", {"J", "h"});
  c.J = grid(f, model["J"], "model.J");
  if (model["h"]) c.h = grid(f, model["h"], "model.h");
  if (c.J.empty()) fail(f, model, "model.J", "missing");
  for (double J : c.J) {
    if (!(J > 0.0)) fail(f, model["J"], "model.J", "values must be > 0");
  }
  if (const YAML::Node g = root["grids"]) {
    only(f, g, "grids", {"alpha", "t"});
    c.alpha = grid(f, g["alpha"], "grids.alpha");
    c.t = grid(f, g["t"], "grids.t");
  }
  for (double a : c.alpha) {
    if (!(std::abs(a) <= 1.0)) fail(f, root["grids"]["alpha"], "grids.alpha", "values must satisfy |alpha| <= 1");
  }
  for (double t : c.t) {
    if (!(t > 0.0)) fail(f, root["grids"]["t"], "grids.t", "values must be > 0");
  }

  const YAML::Node outs = root["outputs"];
  if (!outs || !outs.IsSequence() || outs.size() == 0) fail(f, root, "outputs", "expected a non-empty list");
  for (const auto& o : outs) {
    const std::string name = o.as<std::string>();
    if (!known_outputs().count(name)) fail(f, o, "outputs", "unknown quantity '" + name + "'");
    c.outputs.push_back(name);
  }
  if (const YAML::Node tol = root["tolerances"]) {
    only(f, tol, "tolerances", {"equality", "bad_set_grid"});
    if (tol["equality"]) c.equality = scalar<double>(f, tol["equality"], "tolerances.equality");
    if (tol["bad_set_grid"]) c.bad_set_grid = scalar<int>(f, tol["bad_set_grid"], "tolerances.bad_set_grid");
    if (!(c.equality > 0.0)) fail(f, tol["equality"], "tolerances.equality", "must be > 0");
    if (c.bad_set_grid < 2) fail(f, tol["bad_set_grid"], "tolerances.bad_set_grid", "must be >= 2");
  }
  if (const YAML::Node par = root["parallelism"]) {
    only(f, par, "parallelism", {"jobs"});
    if (par["jobs"]) c.jobs = scalar<int>(f, par["jobs"], "parallelism.jobs");
  }
  if (root["seed"]) c.seed = scalar<std::uint64_t>(f, root["seed"], "seed");
  if (const YAML::Node mc = root["monte_carlo"]) {
    only(f, mc, "monte_carlo", {"N", "replicas", "window"});
    if (mc["N"]) c.mc_N = scalar<int>(f, mc["N"], "monte_carlo.N");
    if (mc["replicas"]) c.mc_replicas = scalar<long>(f, mc["replicas"], "monte_carlo.replicas");
    if (mc["window"]) c.mc_window = scalar<double>(f, mc["window"], "monte_carlo.window");
  }

  // Environment, then flags.
  if (const auto v = env("CWGNG_JOBS")) c.jobs = std::atoi(v->c_str());
  if (const auto v = env("CWGNG_SEED")) c.seed = std::strtoull(v->c_str(), nullptr, 10);
  if (s.jobs) c.jobs = *s.jobs;
  if (s.seed) c.seed = *s.seed;
  if (c.jobs < 1) throw ConfigError("config: parallelism.jobs must be >= 1");

  c.echo = {{"model", {{"J", c.J}, {"h", c.h}}},
            {"grids", {{"alpha", c.alpha}, {"t", c.t}}},
            {"outputs", c.outputs},
            {"tolerances", {{"equality", c.equality}, {"bad_set_grid", c.bad_set_grid}}},
            {"seed", c.seed},
            {"monte_carlo", {{"N", c.mc_N}, {"replicas", c.mc_replicas}, {"window", c.mc_window}}}};
  return c;
}

using Row = std::vector<std::string>;

struct TaskResult {
  std::vector<Row> rows;
  std::string warning;
};

struct Quantity {
  std::vector<std::string> header;
  std::size_t tasks = 0;
  std::function<std::vector<Row>(std::size_t)> run;
  std::vector<std::string> required_grids;
};

std::string cell(const std::optional<double>& x) { return x && std::isfinite(*x) ? fmt(*x) : ""; }

// Index -> (i, j, ...) over a product of grid sizes, last index fastest.
std::vector<std::size_t> unravel(std::size_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t d = dims.size(); d-- > 0;) {
    out[d] = idx % dims[d];
    idx /= dims[d];
  }
  return out;
}

std::uint64_t task_seed(std::uint64_t seed, std::size_t task) {
  ReplicaStream s(seed, 0x5ca9ULL + task);
  return s.next_u64();
}

Quantity make_quantity(const std::string& name, const ScanConfig& c) {
  Quantity q;
  const std::size_t nJ = c.J.size(), nh = c.h.size(), na = c.alpha.size(), nt = c.t.size();
  if (name == "psi_c") {
    q.header = {"J", "psi_c"};
    q.tasks = nJ;
    q.run = [&c](std::size_t i) {
      const double J = c.J[i];
      return std::vector<Row>{{fmt(J), J > 1.0 ? fmt(psi_c(J)) : ""}};
    };
  } else if (name == "m_star") {
    q.header = {"J", "m_star"};
    q.tasks = nJ;
    q.run = [&c](std::size_t i) {
      const double J = c.J[i];
      return std::vector<Row>{{fmt(J), J > 1.5 ? fmt(m_star(J)) : ""}};
    };
  } else if (name == "h_star") {
    q.header = {"J", "h_star"};
    q.tasks = nJ;
    q.run = [&c](std::size_t i) {
      const double J = c.J[i];
      return std::vector<Row>{{fmt(J), J > 1.5 ? fmt(h_star(J)) : ""}};
    };
  } else if (name == "tangency_bounds") {
    q.header = {"J", "h", "U_B", "m_U", "L_B", "m_L"};
    q.tasks = nJ * nh;
    q.run = [&c, nh](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh});
      const TangencyBounds b = tangency_bounds(ModelParams::make(c.J[ix[0]], c.h[ix[1]]));
      return std::vector<Row>{{fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), cell(b.U_B), cell(b.m_U), cell(b.L_B), cell(b.m_L)}};
    };
  } else if (name == "crossovers") {
    q.header = {"J", "h", "psi_U", "psi_L", "psi_T", "psi_star", "psi_c", "U_B", "L_B", "M_T", "M_B", "h_star"};
    q.tasks = nJ * nh;
    q.run = [&c, nh](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh});
      const CrossoverTimes x = crossover_times(ModelParams::make(c.J[ix[0]], c.h[ix[1]]));
      return std::vector<Row>{{fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), cell(x.psi_U), cell(x.psi_L), cell(x.psi_T),
                               cell(x.psi_star), cell(x.psi_c), cell(x.U_B), cell(x.L_B), cell(x.M_T),
                               cell(x.M_B), cell(x.h_star)}};
    };
  } else if (name == "scenario") {
    q.header = {"J", "h", "alpha", "scenario", "t_B", "s_B", "t_T"};
    q.tasks = nJ * nh * na;
    q.required_grids = {"alpha"};
    q.run = [&c, nh, na](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh, na});
      const BifurcationReport r = scenario(ModelParams::make(c.J[ix[0]], c.h[ix[1]]), c.alpha[ix[2]]);
      return std::vector<Row>{{fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), fmt(c.alpha[ix[2]]), to_string(r.scenario),
                               cell(r.t_B), cell(r.s_B), cell(r.t_T)}};
    };
  } else if (name == "overshoot") {
    q.header = {"J", "h", "alpha", "regime", "m_R", "t_R", "m_inf"};
    q.tasks = nJ * nh * na;
    q.required_grids = {"alpha"};
    q.run = [&c, nh, na](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh, na});
      const OvershootProfile o = overshoot_profile(ModelParams::make(c.J[ix[0]], c.h[ix[1]]), c.alpha[ix[2]]);
      return std::vector<Row>{{fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), fmt(c.alpha[ix[2]]), to_string(o.regime),
                               cell(o.m_R), cell(o.t_R), fmt(o.m_inf)}};
    };
  } else if (name == "minimizers") {
    q.header = {"J", "h", "t", "alpha", "degeneracy", "m_hat", "cost"};
    q.tasks = nJ * nh * nt * na;
    q.required_grids = {"t", "alpha"};
    q.run = [&c, nh, nt, na](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh, nt, na});
      const StationarySolver solver(ModelParams::make(c.J[ix[0]], c.h[ix[1]]));
      const MinimizerSet s = solver.minimizers(c.t[ix[2]], c.alpha[ix[3]], c.equality);
      std::vector<Row> rows;
      for (const Minimum& m : s.minima) {
        rows.push_back({fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), fmt(c.t[ix[2]]), fmt(c.alpha[ix[3]]),
                        std::to_string(s.degeneracy()), fmt(m.m), fmt(m.cost)});
      }
      return rows;
    };
  } else if (name == "bad_set") {
    q.header = {"J", "h", "t", "count", "alpha_bad"};
    q.tasks = nJ * nh * nt;
    q.required_grids = {"t"};
    q.run = [&c, nh, nt](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh, nt});
      BadSetOptions opt;
      opt.grid = c.bad_set_grid;
      const std::vector<double> bad = bad_set(ModelParams::make(c.J[ix[0]], c.h[ix[1]]), c.t[ix[2]], opt);
      std::vector<Row> rows;
      const std::string head[] = {fmt(c.J[ix[0]]), fmt(c.h[ix[1]]), fmt(c.t[ix[2]]), std::to_string(bad.size())};
      if (bad.empty()) rows.push_back({head[0], head[1], head[2], head[3], ""});
      for (double a : bad) rows.push_back({head[0], head[1], head[2], head[3], fmt(a)});
      return rows;
    };
  } else if (name == "mc_kernel") {
    q.header = {"J", "h", "t", "alpha", "gamma_plus_hat", "std_err", "accepted", "gamma_plus_analytic"};
    q.tasks = nJ * nh * nt * na;
    q.required_grids = {"t", "alpha"};
    q.run = [&c, nh, nt, na](std::size_t k) {
      const auto ix = unravel(k, {c.J.size(), nh, nt, na});
      const ModelParams p = ModelParams::make(c.J[ix[0]], c.h[ix[1]]);
      const double t = c.t[ix[2]];
      const double a = c.alpha[ix[3]];
      MCConfig cfg;
      cfg.N = c.mc_N;
      cfg.replicas = c.mc_replicas;
      cfg.window = c.mc_window;
      cfg.seed = task_seed(c.seed, k);
      cfg.validate();
      const KernelEstimate e = mc_spec_kernel(cfg, p, t, a);
      const MinimizerSet s = global_minimizers(p, t, a);
      const SpecKernel sk = spec_kernel(t, a, s.minima.front().m, p);
      return std::vector<Row>{{fmt(p.J), fmt(p.h), fmt(t), fmt(a), fmt(e.gamma_plus_hat), fmt(e.std_err),
                               std::to_string(e.accepted), fmt(sk.gamma_plus)}};
    };
  }
  return q;
}

std::vector<TaskResult> run_tasks(const Quantity& q, int jobs) {
  std::vector<TaskResult> results(q.tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= q.tasks) return;
      try {
        results[k].rows = q.run(k);
      } catch (const DomainError& e) {
        results[k].warning = e.what();
      } catch (const NotFound& e) {
        results[k].warning = e.what();
      } catch (const InsufficientAcceptance& e) {
        results[k].warning = e.what();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(q.tasks)));
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (fatal) std::rethrow_exception(fatal);
  return results;
}

std::size_t count_rows(const fs::path& file) {
  std::ifstream in(file);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines > 0 ? lines - 1 : 0;
}

}  // namespace

int cmd_scan(const ScanOptions& s) {
  const ScanConfig c = load(s);
  if (s.out_dir.empty()) throw DomainError("scan: --out-dir is required");
  fs::create_directories(s.out_dir);

  Report manifest;
  manifest.command = "scan";
  manifest.inputs = c.echo;
  Json outputs = Json::array();
  for (const std::string& name : c.outputs) {
    const Quantity q = make_quantity(name, c);
    for (const std::string& g : q.required_grids) {
      const bool empty = g == "alpha" ? c.alpha.empty() : c.t.empty();
      if (empty) throw ConfigError("config " + s.config + ": output '" + name + "' needs grids." + g);
    }
    const fs::path file = fs::path(s.out_dir) / (name + ".csv");
    if (s.resume && fs::exists(file)) {
      outputs.push_back({{"quantity", name}, {"file", file.filename().string()}, {"rows", count_rows(file)},
                         {"status", "skipped"}});
      continue;
    }
    const std::vector<TaskResult> results = run_tasks(q, c.jobs);
    const fs::path tmp = file.string() + ".partial";
    std::size_t rows = 0;
    {
      std::ofstream os(tmp, std::ios::out | std::ios::trunc);
      if (!os) throw DomainError("scan: cannot write " + tmp.string());
      CsvWriter csv(os, q.header);
      for (std::size_t k = 0; k < results.size(); ++k) {
        for (const Row& r : results[k].rows) csv.row(r);
        if (!results[k].warning.empty()) manifest.warnings.push_back(name + "[" + std::to_string(k) + "]: " + results[k].warning);
      }
      rows = csv.rows();
    }
    fs::rename(tmp, file);
    outputs.push_back({{"quantity", name}, {"file", file.filename().string()}, {"rows", rows}, {"status", "written"}});
  }
  manifest.results["outputs"] = outputs;
  // No wall clock: the manifest is part of the deterministic output.
  std::ofstream idx(fs::path(s.out_dir) / "index.json", std::ios::out | std::ios::trunc);
  idx << manifest.to_json().dump(2) << '\n';
  return kOk;
}

}  // namespace cwgng::cli
