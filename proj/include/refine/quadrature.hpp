#pragma once

#include <functional>
#include <span>

namespace refine {

struct QuadratureConfig {
  double tolerance = 1e-9;
  int max_levels = 20;
};

// Composite Simpson on [a, b] with 2^L subintervals, doubling L until two
// successive estimates differ by at most `tolerance` (checked from level 4).
// Throws NumericalError carrying the last estimate when max_levels is reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& config = {});

// Sum of `integrate` over consecutive panels [points[i], points[i+1]], added
// in panel order.
double integrate_panels(const std::function<double(double)>& f, std::span<const double> points,
                        const QuadratureConfig& config = {});

// Roots of g in [a, b] located by scanning `samples` points for strict sign
// changes and bisecting each bracket to width `width`.
std::vector<double> find_crossings(const std::function<double(double)>& g, double a, double b,
                                   int samples = 4096, double width = 1e-12);

}  // namespace refine
