#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwgng/bifurcation.hpp"

namespace cwgng {

struct CrossoverTimes {
  std::optional<double> psi_U;
  std::optional<double> psi_L;
  std::optional<double> psi_T;
  std::optional<double> psi_star;
  std::optional<double> U_B;
  std::optional<double> L_B;
  std::optional<double> M_T;
  std::optional<double> M_B;
  std::optional<double> h_star;
  std::optional<double> psi_c;
  /// t_B(L_B): the time at which the single bad magnetization passes L_B.
  std::optional<double> t_B_at_L_B;
  /// Order in which the present times occur, e.g. "psi_U < psi_L < psi_T < psi_star".
  std::string ordering;
};

struct CrossoverOptions {
  /// Probe bad_set on both sides of every time and throw ValidationError if the
  /// cardinality does not change as predicted.
  bool validate = false;
  bool with_h_star = true;
};

CrossoverTimes crossover_times(const ModelParams& p, const CrossoverOptions& opt = {});

struct BadSetOptions {
  int grid = 2048;
};

/// Conditioning magnetizations at time t with more than one global minimizer.
std::vector<double> bad_set(const StationarySolver& solver, double t, const BadSetOptions& opt = {});
std::vector<double> bad_set(const ModelParams& p, double t, const BadSetOptions& opt = {});

enum class GibbsStatus { gibbs, non_gibbs };

const char* to_string(GibbsStatus s);

struct TimelineProbe {
  double t;
  std::vector<double> bad;
};

struct TimelineSegment {
  double t_lo;
  double t_hi;
  GibbsStatus status;
  int bad_count;  ///< predicted number of bad magnetizations inside the segment
  std::string descriptor;
  std::vector<TimelineProbe> probes;
};

struct GibbsTimeline {
  double t_max;
  CrossoverTimes crossovers;
  std::vector<TimelineSegment> segments;  ///< consecutive, covering (0, t_max]
};

/// Gibbs / non-Gibbs segments of (0, t_max] checked by bad_set probes.
/// Throws ValidationError if a probe disagrees with its segment.
GibbsTimeline gibbs_timeline(const ModelParams& p, double t_max, int probes_per_segment = 3);

}  // namespace cwgng
