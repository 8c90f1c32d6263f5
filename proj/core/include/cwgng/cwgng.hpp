#pragma once

#include "cwgng/bifurcation.hpp"
#include "cwgng/cost.hpp"
#include "cwgng/crossover.hpp"
#include "cwgng/errors.hpp"
#include "cwgng/model.hpp"
#include "cwgng/monte_carlo.hpp"
#include "cwgng/overshoot.hpp"
#include "cwgng/path_dp.hpp"
#include "cwgng/roots.hpp"
#include "cwgng/stationary.hpp"
#include "cwgng/tangency.hpp"

namespace cwgng {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace cwgng
