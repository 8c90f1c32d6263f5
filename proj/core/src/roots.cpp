#include "cwgng/roots.hpp"

#include <iterator>

namespace cwgng {

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / n;
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<double> merge_sorted(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cwgng
