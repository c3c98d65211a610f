#include "refine/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "refine/errors.hpp"

namespace refine {

GaussianDensity::GaussianDensity(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw ParameterError("gaussian density needs finite mu and sigma > 0");
  }
}

double GaussianDensity::pdf(double x) const {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

GridDensity::GridDensity(double lo, double hi, std::vector<double> mass)
    : lo_(lo), hi_(hi), mass_(std::move(mass)) {
  if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
    throw ParameterError("grid density needs finite lo < hi");
  }
  if (mass_.empty()) {
    throw ParameterError("grid density needs at least one bin");
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ParameterError("grid density mass must be finite and nonnegative");
    }
    total += m;
  }
  if (std::abs(total * bin_width() - 1.0) > 1e-9) {
    throw ParameterError("grid density does not integrate to 1 (got " +
                         std::to_string(total * bin_width()) + ")");
  }
}

GridDensity GridDensity::from_weights(double lo, double hi, std::vector<double> weights) {
  if (!(lo < hi)) {
    throw ParameterError("grid density needs lo < hi");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    throw ParameterError("grid density weights must have positive total");
  }
  const double width = (hi - lo) / static_cast<double>(weights.size());
  for (double& w : weights) {
    w /= total * width;
  }
  return GridDensity(lo, hi, std::move(weights));
}

double GridDensity::bin_center(std::size_t i) const noexcept {
  return lo_ + (static_cast<double>(i) + 0.5) * bin_width();
}

std::size_t GridDensity::bin_of(double x) const noexcept {
  if (!(x > lo_)) return 0;
  if (x >= hi_) return mass_.size() - 1;
  const auto i = static_cast<std::size_t>((x - lo_) / bin_width());
  return std::min(i, mass_.size() - 1);
}

double GridDensity::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return mass_[bin_of(x)];
}

double pdf(const Density& density, double x) {
  return std::visit([x](const auto& d) { return d.pdf(x); }, density);
}

std::pair<double, double> support(const Density& density) {
  if (const auto* g = std::get_if<GaussianDensity>(&density)) {
    return {g->mu - kGaussianSupportSigmas * g->sigma, g->mu + kGaussianSupportSigmas * g->sigma};
  }
  const auto& grid = std::get<GridDensity>(density);
  return {grid.lo(), grid.hi()};
}

std::vector<double> breakpoints(const Density& density) {
  std::vector<double> out;
  if (const auto* grid = std::get_if<GridDensity>(&density)) {
    out.reserve(grid->bins() + 1);
    for (std::size_t i = 0; i <= grid->bins(); ++i) {
      out.push_back(grid->lo() + static_cast<double>(i) * grid->bin_width());
    }
    out.back() = grid->hi();
  }
  return out;
}

ClassConditionalModel::ClassConditionalModel(Density positive, Density negative, double prior)
    : positive_(std::move(positive)), negative_(std::move(negative)), prior_(prior) {
  if (!(prior_ > 0.0 && prior_ < 1.0)) {
    throw ParameterError("prior must lie in (0,1), got " + std::to_string(prior_));
  }
}

double ClassConditionalModel::posterior(double x) const {
  const double p = pdf(positive_, x);
  const double q = pdf(negative_, x);
  if (p < kDensityFloor && q < kDensityFloor) return prior_;
  const double a = prior_ * p;
  const double b = (1.0 - prior_) * q;
  return a / (a + b);
}

double ClassConditionalModel::marginal(double x) const {
  return prior_ * pdf(positive_, x) + (1.0 - prior_) * pdf(negative_, x);
}

std::pair<double, double> ClassConditionalModel::support() const {
  const auto [a0, b0] = refine::support(positive_);
  const auto [a1, b1] = refine::support(negative_);
  return {std::min(a0, a1), std::max(b0, b1)};
}

std::vector<double> ClassConditionalModel::breakpoints() const {
  const auto [lo, hi] = support();
  std::vector<double> out = refine::breakpoints(positive_);
  const auto more = refine::breakpoints(negative_);
  out.insert(out.end(), more.begin(), more.end());
  out.push_back(lo);
  out.push_back(hi);
  std::erase_if(out, [lo, hi](double x) { return x < lo || x > hi; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ClassConditionalModel ClassConditionalModel::swapped() const {
  return ClassConditionalModel(negative_, positive_, 1.0 - prior_);
}

double posterior(const ClassConditionalModel& model, double x) { return model.posterior(x); }

double marginal(const ClassConditionalModel& model, double x) { return model.marginal(x); }

GridDensity histogram_from_samples(std::span<const double> samples, std::size_t k, double lo,
                                   double hi) {
  if (k == 0 || !(lo < hi)) {
    throw ParameterError("histogram needs k >= 1 and lo < hi");
  }
  const bool any_inside = std::any_of(samples.begin(), samples.end(),
                                      [lo, hi](double s) { return s >= lo && s <= hi; });
  if (!any_inside) {
    throw EstimationError("no sample lies inside the histogram range");
  }
  std::vector<double> counts(k, 0.0);
  GridDensity shape(lo, hi, std::vector<double>(k, 1.0 / (hi - lo)));
  for (double s : samples) {
    if (std::isnan(s)) continue;
    counts[shape.bin_of(s)] += 1.0;
  }
  return GridDensity::from_weights(lo, hi, std::move(counts));
}

DiscreteJoint::DiscreteJoint(std::size_t nx, std::size_t nz, std::vector<double> table)
    : nx_(nx), nz_(nz), table_(std::move(table)) {
  if (nx_ == 0 || nz_ == 0 || table_.size() != nx_ * nz_ * 2) {
    throw ShapeError("joint table size does not match support sizes");
  }
  double total = 0.0;
  for (double v : table_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ParameterError("joint table entries must be finite and nonnegative");
    }
    total += v;
  }
  if (!(total > 0.0)) {
    throw ParameterError("joint table has zero total mass");
  }
  for (double& v : table_) v /= total;
}

double DiscreteJoint::p(std::size_t x, std::size_t z, int label) const {
  return table_[(x * nz_ + z) * 2 + (label == 1 ? 1 : 0)];
}

double DiscreteJoint::cell_mass(std::size_t x, std::size_t z) const {
  return p(x, z, -1) + p(x, z, 1);
}

double DiscreteJoint::cell_posterior(std::size_t x, std::size_t z) const {
  const double m = cell_mass(x, z);
  return m > 0.0 ? p(x, z, 1) / m : prior();
}

double DiscreteJoint::prior() const {
  double s = 0.0;
  for (std::size_t i = 1; i < table_.size(); i += 2) s += table_[i];
  return s;
}

DiscreteJoint DiscreteJoint::marginal_x() const {
  std::vector<double> t(nx_ * 2, 0.0);
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t z = 0; z < nz_; ++z) {
      t[x * 2] += p(x, z, -1);
      t[x * 2 + 1] += p(x, z, 1);
    }
  }
  return DiscreteJoint(nx_, 1, std::move(t));
}

DiscreteJoint DiscreteJoint::marginal_z() const {
  std::vector<double> t(nz_ * 2, 0.0);
  for (std::size_t x = 0; x < nx_; ++x) {
    for (std::size_t z = 0; z < nz_; ++z) {
      t[z * 2] += p(x, z, -1);
      t[z * 2 + 1] += p(x, z, 1);
    }
  }
  return DiscreteJoint(nz_, 1, std::move(t));
}

DiscreteJoint joint_from_table(std::size_t nx, std::size_t nz, std::vector<double> table) {
  return DiscreteJoint(nx, nz, std::move(table));
}

DiscreteJoint joint_from_samples(std::span<const JointRow> rows, std::size_t nx, std::size_t nz) {
  if (rows.empty()) {
    throw EstimationError("cannot estimate a joint from zero rows");
  }
  std::size_t seen_x = 0;
  std::size_t seen_z = 0;
  for (const auto& r : rows) {
    if (r.label != 1 && r.label != -1) {
      throw InputError("labels must be -1 or +1, got " + std::to_string(r.label));
    }
    seen_x = std::max(seen_x, r.x + 1);
    seen_z = std::max(seen_z, r.z + 1);
  }
  if (nx == 0) nx = seen_x;
  if (nz == 0) nz = seen_z;
  if (seen_x > nx || seen_z > nz) {
    throw InputError("category index exceeds the declared support size");
  }
  std::vector<double> t(nx * nz * 2, 0.0);
  for (const auto& r : rows) {
    t[(r.x * nz + r.z) * 2 + (r.label == 1 ? 1 : 0)] += 1.0;
  }
  const auto n = static_cast<double>(rows.size());
  for (double& v : t) v = v / n + kJointSmoothing;
  return DiscreteJoint(nx, nz, std::move(t));
}

}  // namespace refine
