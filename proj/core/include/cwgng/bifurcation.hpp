#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cwgng/stationary.hpp"
#include "cwgng/tangency.hpp"

namespace cwgng {

enum class ScenarioKind { none, single, double_bifurcation, trifurcation };

/// "none", "single", "double", "tri".
const char* to_string(ScenarioKind k);

/// Discontinuity of t -> m_hat(t, alpha).
struct Jump {
  double t;
  double m_before;
  double m_after;
  std::vector<double> minimizers;  ///< global minimizers at t (cost gap <= 1e-8)
};

struct BifurcationReport {
  double alpha = 0.0;
  ScenarioKind scenario = ScenarioKind::none;
  std::optional<double> t_B;
  std::optional<double> s_B;
  std::optional<double> t_T;
  std::vector<Jump> jumps;
};

struct ScenarioOptions {
  int samples_per_piece = 48;
  /// Upper end of the time sweep; <= 0 picks max(20, 3 x last fold time).
  double t_end = 0.0;
  /// Re-derive the jumps with branch_track and throw ContradictionError on disagreement.
  bool cross_validate = false;
};

/// Bifurcation scenario of t -> m_hat(t, alpha) for t in (0, t_end].
BifurcationReport scenario(const StationarySolver& solver, double alpha,
                           const ScenarioOptions& opt = {});
BifurcationReport scenario(const ModelParams& p, double alpha, const ScenarioOptions& opt = {});

struct Trifurcation {
  double M_T;
  double t_T;
  std::vector<double> minimizers;  ///< the three coexisting global minimizers
};

/// Requires J > 3/2 and h > 0. Throws NotFound if there is no double-bifurcation window.
Trifurcation trifurcation_magnetization(const ModelParams& p);

/// Field above which the double-bifurcation window closes. Requires J > 3/2.
double h_star(double J);

/// t_B(L_B) minus the cusp time at argmin F: positive exactly when a
/// double-bifurcation window (L_B, M_T) exists. Empty if L_B is undefined.
std::optional<double> double_window_margin(const ModelParams& p);

}  // namespace cwgng
