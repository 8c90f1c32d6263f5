#include "cwgng/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "cwgng/errors.hpp"

namespace cwgng {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_alpha(double alpha) {
  if (!(std::abs(alpha) <= 1.0)) throw DomainError("monte carlo: |alpha| must be <= 1");
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("monte carlo: t must be >= 0");
}

// Runs body(first, last, slot) over contiguous replica ranges, one per worker.
template <class Body>
void for_replicas(const MCConfig& cfg, Body body) {
  const long jobs = std::min<long>(cfg.jobs, cfg.replicas);
  if (jobs <= 1) {
    body(0L, cfg.replicas, 0);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (cfg.replicas + jobs - 1) / jobs;
  for (long w = 0; w < jobs; ++w) {
    const long first = w * chunk;
    const long last = std::min(cfg.replicas, first + chunk);
    if (first >= last) break;
    pool.emplace_back([=, &body] { body(first, last, static_cast<int>(w)); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

ReplicaStream::ReplicaStream(std::uint64_t seed, std::uint64_t index)
    : key_(mix64(seed ^ mix64(index + kGolden))) {}

std::uint64_t ReplicaStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double ReplicaStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t ReplicaStream::below(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= threshold) return x % n;
  }
}

void MCConfig::validate() const {
  std::ostringstream os;
  if (N < 2) os << "mc config: N must be >= 2 (got " << N << ")";
  else if (replicas < 1) os << "mc config: replicas must be >= 1 (got " << replicas << ")";
  else if (!(window >= 2.0 / N)) os << "mc config: window must be >= 2/N (got " << window << ")";
  else if (jobs < 1) os << "mc config: jobs must be >= 1";
  const std::string msg = os.str();
  if (!msg.empty()) throw DomainError(msg);
}

InitialSampler::InitialSampler(int N, const ModelParams& p) : N_(N) {
  if (N < 2 || N > 1000000) throw DomainError("initial sampler: N must be in [2, 1e6]");
  std::vector<double> logw(static_cast<std::size_t>(N) + 1);
  const double lgN = std::lgamma(N + 1.0);
  for (int k = 0; k <= N; ++k) {
    const double m = (2.0 * k - N) / N;
    logw[k] = lgN - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0) + N * (0.5 * p.J * m * m + p.h * m);
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  cdf_.resize(logw.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < logw.size(); ++k) {
    acc += std::exp(logw[k] - top);
    cdf_[k] = acc;
  }
  for (double& c : cdf_) c /= acc;
  cdf_.back() = 1.0;
}

double InitialSampler::level_probability(int k) const {
  if (k < 0 || k > N_) return 0.0;
  return k == 0 ? cdf_[0] : cdf_[k] - cdf_[k - 1];
}

int InitialSampler::sample_plus_count(ReplicaStream& rng) const {
  const double u = rng.uniform();
  return static_cast<int>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

SpinConfiguration InitialSampler::sample(ReplicaStream& rng) const {
  const int k = std::min(sample_plus_count(rng), N_);
  std::vector<int> idx(static_cast<std::size_t>(N_));
  std::iota(idx.begin(), idx.end(), 0);
  SpinConfiguration sigma(static_cast<std::size_t>(N_), -1);
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(N_ - i));
    std::swap(idx[i], idx[j]);
    sigma[idx[i]] = 1;
  }
  return sigma;
}

SpinConfiguration mc_sample_initial(const MCConfig& cfg, const ModelParams& p, ReplicaStream& rng) {
  return InitialSampler(cfg.N, p).sample(rng);
}

void mc_evolve(SpinConfiguration& sigma, double t, ReplicaStream& rng) {
  check_time(t);
  if (t == 0.0) return;
  const double stay = 0.5 * (1.0 + std::exp(-2.0 * t));
  for (auto& s : sigma) {
    if (rng.uniform() >= stay) s = static_cast<std::int8_t>(-s);
  }
}

KernelEstimate mc_spec_kernel(const MCConfig& cfg, const ModelParams& p, double t, double alpha) {
  cfg.validate();
  check_time(t);
  check_alpha(alpha);
  const InitialSampler sampler(cfg.N, p);
  std::vector<long> accepted(static_cast<std::size_t>(cfg.jobs), 0);
  std::vector<long> plus(static_cast<std::size_t>(cfg.jobs), 0);
  for_replicas(cfg, [&](long first, long last, int slot) {
    long acc = 0;
    long up = 0;
    for (long r = first; r < last; ++r) {
      ReplicaStream rng(cfg.seed, static_cast<std::uint64_t>(r));
      SpinConfiguration sigma = sampler.sample(rng);
      mc_evolve(sigma, t, rng);
      const long rest = std::accumulate(sigma.begin() + 1, sigma.end(), 0L);
      const double m_rest = static_cast<double>(rest) / (cfg.N - 1);
      if (std::abs(m_rest - alpha) <= cfg.window) {
        ++acc;
        if (sigma[0] > 0) ++up;
      }
    }
    accepted[slot] = acc;
    plus[slot] = up;
  });
  KernelEstimate est;
  est.replicas = cfg.replicas;
  est.accepted = std::accumulate(accepted.begin(), accepted.end(), 0L);
  const long up = std::accumulate(plus.begin(), plus.end(), 0L);
  if (est.accepted < 100) {
    std::ostringstream os;
    os << "mc_spec_kernel: only " << est.accepted << " of " << cfg.replicas
       << " replicas accepted (need 100)";
    throw InsufficientAcceptance(os.str(), est.accepted);
  }
  est.gamma_plus_hat = static_cast<double>(up) / est.accepted;
  est.std_err = std::sqrt(est.gamma_plus_hat * (1.0 - est.gamma_plus_hat) / est.accepted);
  return est;
}

std::vector<double> MagnetizationHistogram::modes(double min_fraction, int bin) const {
  bin = std::max(bin, 1);
  std::vector<double> centers;
  std::vector<double> pooled;
  for (std::size_t k = 0; k < counts.size(); k += static_cast<std::size_t>(bin)) {
    double c = 0.0;
    double m = 0.0;
    std::size_t n = 0;
    for (std::size_t q = k; q < std::min(counts.size(), k + bin); ++q, ++n) {
      c += static_cast<double>(counts[q]);
      m += levels[q];
    }
    pooled.push_back(c);
    centers.push_back(m / static_cast<double>(n));
  }
  std::vector<double> smooth(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = std::min(pooled.size() - 1, i + 1);
    double s = 0.0;
    for (std::size_t q = a; q <= b; ++q) s += pooled[q];
    smooth[i] = s / static_cast<double>(b - a + 1);
  }
  const double top = smooth.empty() ? 0.0 : *std::max_element(smooth.begin(), smooth.end());
  std::vector<double> out;
  if (!(top > 0.0)) return out;
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    const double left = i == 0 ? -1.0 : smooth[i - 1];
    const double right = i + 1 == smooth.size() ? -1.0 : smooth[i + 1];
    if (smooth[i] > left && smooth[i] >= right && smooth[i] >= min_fraction * top) {
      out.push_back(centers[i]);
    }
  }
  return out;
}

double MagnetizationHistogram::mean() const {
  double s = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) s += levels[k] * static_cast<double>(counts[k]);
  return accepted > 0 ? s / static_cast<double>(accepted) : 0.0;
}

MagnetizationHistogram mc_conditional_initial(const MCConfig& cfg, const ModelParams& p, double t,
                                              double alpha) {
  cfg.validate();
  check_time(t);
  check_alpha(alpha);
  const InitialSampler sampler(cfg.N, p);
  const std::size_t levels = static_cast<std::size_t>(cfg.N) + 1;
  std::vector<std::vector<long>> partial(static_cast<std::size_t>(cfg.jobs), std::vector<long>(levels, 0));
  for_replicas(cfg, [&](long first, long last, int slot) {
    std::vector<long>& counts = partial[slot];
    for (long r = first; r < last; ++r) {
      ReplicaStream rng(cfg.seed, static_cast<std::uint64_t>(r));
      SpinConfiguration sigma = sampler.sample(rng);
      const long k0 = std::count(sigma.begin(), sigma.end(), std::int8_t{1});
      mc_evolve(sigma, t, rng);
      const long sum = std::accumulate(sigma.begin(), sigma.end(), 0L);
      if (std::abs(static_cast<double>(sum) / cfg.N - alpha) <= cfg.window) ++counts[k0];
    }
  });
  MagnetizationHistogram hist;
  hist.N = cfg.N;
  hist.replicas = cfg.replicas;
  hist.counts.assign(levels, 0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < levels; ++k) hist.counts[k] += part[k];
  }
  for (std::size_t k = 0; k < levels; ++k) {
    hist.levels.push_back((2.0 * static_cast<double>(k) - cfg.N) / cfg.N);
  }
  hist.accepted = std::accumulate(hist.counts.begin(), hist.counts.end(), 0L);
  if (hist.accepted < 100) {
    std::ostringstream os;
    os << "mc_conditional_initial: only " << hist.accepted << " of " << cfg.replicas
       << " replicas accepted (need 100)";
    throw InsufficientAcceptance(os.str(), hist.accepted);
  }
  return hist;
}

}  // namespace cwgng
