#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace refine {

// Both class conditionals below this value: the posterior is undefined and
// falls back to the prior.
inline constexpr double kDensityFloor = 1e-300;
// Additive smoothing applied to every cell of a sample-estimated joint.
inline constexpr double kJointSmoothing = 1e-9;
// Gaussian supports are truncated at this many standard deviations.
inline constexpr double kGaussianSupportSigmas = 8.0;

struct GaussianDensity {
  double mu = 0.0;
  double sigma = 1.0;

  // Throws ParameterError unless sigma > 0 and both fields are finite.
  GaussianDensity(double mu, double sigma);

  double pdf(double x) const;
};

// Piecewise-constant density on [lo, hi] with k equal-width bins; `mass[i]` is
// the density value on bin i, so sum(mass) * bin_width() = 1.
class GridDensity {
 public:
  // Validates nonnegativity and normalization (1e-9); throws ParameterError.
  GridDensity(double lo, double hi, std::vector<double> mass);

  // Rescales `weights` to a normalized density.
  static GridDensity from_weights(double lo, double hi, std::vector<double> weights);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t bins() const noexcept { return mass_.size(); }
  double bin_width() const noexcept { return (hi_ - lo_) / static_cast<double>(mass_.size()); }
  double bin_center(std::size_t i) const noexcept;
  const std::vector<double>& mass() const noexcept { return mass_; }

  // Zero outside [lo, hi]; the value at hi belongs to the last bin.
  double pdf(double x) const;
  // Bin index with the edge rule: values below lo map to 0, at or above hi to k-1.
  std::size_t bin_of(double x) const noexcept;

 private:
  double lo_;
  double hi_;
  std::vector<double> mass_;
};

using Density = std::variant<GaussianDensity, GridDensity>;

double pdf(const Density& density, double x);
// Integration support: mu +- 8 sigma for Gaussians, [lo, hi] for grids.
std::pair<double, double> support(const Density& density);
// Points where the density is not smooth (grid bin edges).
std::vector<double> breakpoints(const Density& density);

// Class conditionals P(x|1), P(x|-1) and prior pi = P(y = 1).
class ClassConditionalModel {
 public:
  // Throws ParameterError unless 0 < prior < 1.
  ClassConditionalModel(Density positive, Density negative, double prior = 0.5);

  const Density& positive() const noexcept { return positive_; }
  const Density& negative() const noexcept { return negative_; }
  double prior() const noexcept { return prior_; }

  // P(1|x); returns the prior where both conditionals are below kDensityFloor.
  double posterior(double x) const;
  // pi P(x|1) + (1 - pi) P(x|-1).
  double marginal(double x) const;

  // Union of both supports.
  std::pair<double, double> support() const;
  // Sorted, deduplicated breakpoints of both densities inside support().
  std::vector<double> breakpoints() const;

  // Classes swapped and prior replaced by 1 - prior.
  ClassConditionalModel swapped() const;

 private:
  Density positive_;
  Density negative_;
  double prior_;
};

double posterior(const ClassConditionalModel& model, double x);
double marginal(const ClassConditionalModel& model, double x);

// Out-of-range samples are counted into the nearest edge bin. Throws
// ParameterError for k == 0 or lo >= hi, EstimationError when no sample lies
// inside [lo, hi].
GridDensity histogram_from_samples(std::span<const double> samples, std::size_t k, double lo,
                                   double hi);

// One labelled observation of up to two discrete features.
struct JointRow {
  std::size_t x = 0;
  std::size_t z = 0;
  int label = 1;  // -1 or +1
};

// Discrete joint P(x, z, y) over |X| x |Z| x {-1, +1}. A single-feature joint
// has |Z| = 1.
class DiscreteJoint {
 public:
  // `table` is indexed [(x * nz + z) * 2 + (y == +1)] and is normalized to sum 1.
  // Throws ShapeError on size mismatch, ParameterError for negative or all-zero tables.
  DiscreteJoint(std::size_t nx, std::size_t nz, std::vector<double> table);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t nz() const noexcept { return nz_; }

  double p(std::size_t x, std::size_t z, int label) const;
  // P(x, z) and P(1 | x, z); the posterior of an empty cell is the class prior.
  double cell_mass(std::size_t x, std::size_t z) const;
  double cell_posterior(std::size_t x, std::size_t z) const;
  double prior() const;  // P(y = 1)

  // P(x, y) with z summed out (nz = 1).
  DiscreteJoint marginal_x() const;
  // P(z, y) with x summed out, re-indexed as a single-feature joint.
  DiscreteJoint marginal_z() const;

  const std::vector<double>& table() const noexcept { return table_; }

 private:
  std::size_t nx_;
  std::size_t nz_;
  std::vector<double> table_;
};

// Normalizes the table without smoothing.
DiscreteJoint joint_from_table(std::size_t nx, std::size_t nz, std::vector<double> table);

// Empirical joint with kJointSmoothing added to every cell before
// renormalization. Support sizes default (0) to 1 + the largest category seen.
// Throws EstimationError for empty input, InputError for labels outside {-1,+1}
// or categories beyond a given support size.
DiscreteJoint joint_from_samples(std::span<const JointRow> rows, std::size_t nx = 0,
                                 std::size_t nz = 0);

}  // namespace refine
