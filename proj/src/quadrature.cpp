#include "refine/quadrature.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "refine/errors.hpp"

namespace refine {
namespace {
constexpr int kMinLevel = 4;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& config) {
  if (!(b > a)) return 0.0;
  // Running sums of the Simpson weights: ends, odd-indexed, even-indexed nodes.
  const double ends = f(a) + f(b);
  double odd = f(0.5 * (a + b));
  double even = 0.0;
  std::size_t intervals = 2;
  double previous = (b - a) / 6.0 * (ends + 4.0 * odd);
  for (int level = 2; level <= config.max_levels; ++level) {
    even += odd;
    odd = 0.0;
    intervals *= 2;
    const double h = (b - a) / static_cast<double>(intervals);
    for (std::size_t i = 1; i < intervals; i += 2) {
      odd += f(a + static_cast<double>(i) * h);
    }
    const double estimate = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    if (level >= kMinLevel && std::abs(estimate - previous) <= config.tolerance) {
      return estimate;
    }
    previous = estimate;
  }
  throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] after " + std::to_string(config.max_levels) +
                           " levels",
                       previous);
}

double integrate_panels(const std::function<double(double)>& f, std::span<const double> points,
                        const QuadratureConfig& config) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    try {
      total += integrate(f, points[i], points[i + 1], config);
    } catch (const NumericalError& e) {
      throw NumericalError(e.what(), total + e.last_estimate());
    }
  }
  return total;
}

std::vector<double> find_crossings(const std::function<double(double)>& g, double a, double b,
                                   int samples, double width) {
  std::vector<double> roots;
  if (!(b > a) || samples < 1) return roots;
  // Last sample with a nonzero value, and the run of exact zeros after it.
  double x0 = a;
  double g0 = g(a);
  double zero_first = 0.0;
  double zero_last = 0.0;
  bool in_zero_run = false;
  for (int i = 1; i <= samples; ++i) {
    const double x1 = i == samples ? b : a + (b - a) * i / samples;
    const double g1 = g(x1);
    if (g1 == 0.0) {
      if (!in_zero_run) zero_first = x1;
      zero_last = x1;
      in_zero_run = true;
      continue;
    }
    if (g0 != 0.0 && (g0 < 0.0) != (g1 < 0.0)) {
      if (in_zero_run) {
        roots.push_back(0.5 * (zero_first + zero_last));
      } else {
        double lo = x0;
        double hi = x1;
        const bool rising = g0 < 0.0;
        while (hi - lo > width) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double gm = g(mid);
          if (gm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((gm < 0.0) == rising) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        roots.push_back(0.5 * (lo + hi));
      }
    }
    in_zero_run = false;
    x0 = x1;
    g0 = g1;
  }
  return roots;
}

}  // namespace refine
