#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace cwgng::cli {

enum ExitCode : int { kOk = 0, kInvalid = 2, kInvariant = 3, kOracleFailure = 4 };

/// Raised by oracle commands when a comparison fails its tolerance.
struct OracleFailure {
  std::string message;
};

struct Common {
  double J = 1.0;
  double h = 0.0;
  double alpha = 0.0;
  std::optional<double> t;
  std::optional<double> t_max;
  std::optional<double> m;
  int samples = 0;  ///< 0 picks the command default
  std::string format;
  std::string out;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool validate = false;
};

struct OracleOptions {
  int grid = 400;
  int time_steps = 0;  ///< 0: same as grid
  int span = 16;
  int N = 200;
  long replicas = 100000;
  double window = 0.05;
  int bin = 3;
};

/// Output sink: the file named by --out, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path);
  std::ostream& stream() { return file_.is_open() ? file_ : *console_; }

 private:
  std::ofstream file_;
  std::ostream* console_;
};

int cmd_cost(const Common& c);
int cmd_trajectory(const Common& c);
int cmd_branch(const Common& c);
int cmd_scenario(const Common& c);
int cmd_crossovers(const Common& c);
int cmd_classify(const Common& c);
int cmd_overshoot(const Common& c);
int cmd_speckernel(const Common& c);
int cmd_badset(const Common& c);

int cmd_oracle_path_dp(const Common& c, const OracleOptions& o);
int cmd_oracle_mc_kernel(const Common& c, const OracleOptions& o);
int cmd_oracle_mc_posterior(const Common& c, const OracleOptions& o);

struct ScanOptions {
  std::string config;
  std::string out_dir;
  bool resume = false;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
};

int cmd_scan(const ScanOptions& s);

}  // namespace cwgng::cli
