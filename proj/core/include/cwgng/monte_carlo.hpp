#pragma once

#include <cstdint>
#include <vector>

#include "cwgng/model.hpp"

namespace cwgng {

/// Counter-based generator: the n-th draw of stream (seed, index) is a pure
/// function of (seed, index, n), so replicas can run in any order.
class ReplicaStream {
 public:
  ReplicaStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct MCConfig {
  int N = 200;
  long replicas = 100000;
  double window = 0.05;
  std::uint64_t seed = 1;
  int jobs = 1;

  /// Throws DomainError unless N >= 2, replicas >= 1, window >= 2/N, jobs >= 1.
  void validate() const;
};

using SpinConfiguration = std::vector<std::int8_t>;

/// Exact sampler of the finite-N Curie-Weiss measure: magnetization by inverse
/// CDF over the N + 1 levels, then a uniformly random configuration with it.
class InitialSampler {
 public:
  InitialSampler(int N, const ModelParams& p);

  int N() const noexcept { return N_; }
  /// Number of + spins.
  int sample_plus_count(ReplicaStream& rng) const;
  SpinConfiguration sample(ReplicaStream& rng) const;
  /// Probability of level k (k + spins).
  double level_probability(int k) const;

 private:
  int N_;
  std::vector<double> cdf_;
};

SpinConfiguration mc_sample_initial(const MCConfig& cfg, const ModelParams& p, ReplicaStream& rng);

/// Independent spin flips for time t: each spin keeps its value with probability e^{-t} cosh t.
void mc_evolve(SpinConfiguration& sigma, double t, ReplicaStream& rng);

struct KernelEstimate {
  double gamma_plus_hat = 0.0;
  double std_err = 0.0;
  long accepted = 0;
  long replicas = 0;
};

/// Fraction of sigma_1(t) = +1 among replicas whose magnetization of spins
/// 2..N at time t is within the window of alpha. Throws InsufficientAcceptance
/// below 100 accepted replicas.
KernelEstimate mc_spec_kernel(const MCConfig& cfg, const ModelParams& p, double t, double alpha);

struct MagnetizationHistogram {
  int N = 0;
  std::vector<double> levels;  ///< m = (2k - N) / N
  std::vector<long> counts;
  long accepted = 0;
  long replicas = 0;

  /// Local maxima of the 3-level moving average holding at least
  /// `min_fraction` of the largest smoothed count, as magnetizations.
  /// `bin` levels are pooled first.
  std::vector<double> modes(double min_fraction = 0.25, int bin = 1) const;
  double mean() const;
};

/// Histogram of m_N(0) over replicas whose m_N(t) is within the window of alpha.
MagnetizationHistogram mc_conditional_initial(const MCConfig& cfg, const ModelParams& p, double t,
                                              double alpha);

}  // namespace cwgng
