#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cwgng/model.hpp"

namespace cwgng {

/// Tangency of l_{t,alpha} and k: k'(m) = coth(2t) and k(m) = l_{t,alpha}(m).
struct TangencyPoint {
  double m_tilde;
  double t_tilde;
};

/// F(m) = (m k'(m) - k(m)) / sqrt(k'(m)^2 - 1). Throws DomainError if k'(m) <= 1.
double tangency_F(double m, const ModelParams& p);

/// Analytic derivative k''(m) (k k' - m) / (k'^2 - 1)^{3/2}.
double tangency_F_prime(double m, const ModelParams& p);

/// (1/2) acoth(k'(m)); the time at which the tangency at m happens.
double tangency_time(double m, const ModelParams& p);

/// Maximal open intervals of [-1, 1] on which k' > 1, with the closed end
/// kept where the interval reaches -1 or +1.
std::vector<std::pair<double, double>> tangency_domain(const ModelParams& p);

/// Critical points of F on its domain: zeros of k'' and of k k' - m.
std::vector<double> tangency_critical_points(const ModelParams& p);

struct TangencyBounds {
  std::optional<double> U_B;  ///< max of F on [0, 1]
  std::optional<double> L_B;  ///< min of F on [-1, 0]
  std::optional<double> m_U;  ///< argmax
  std::optional<double> m_L;  ///< argmin
};

/// Grid scan of F followed by golden-section refinement. A bound is absent
/// when F has no domain on that half-interval or is unbounded there.
TangencyBounds tangency_bounds(const ModelParams& p);

/// All solutions (m, t) of the tangency system for this alpha, sorted by time.
/// Critical points of F with |F - alpha| <= 1e-9 are included as double roots.
std::vector<TangencyPoint> tangency_points(const ModelParams& p, double alpha);

/// Times of the tangency points, sorted and deduplicated.
std::vector<double> fold_times(const ModelParams& p, double alpha);

}  // namespace cwgng
