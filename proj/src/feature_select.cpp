#include "refine/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refine/errors.hpp"
#include "refine/refinement.hpp"

namespace refine {
namespace {

double kl_term(double p, double q) {
  if (p <= 0.0) return 0.0;
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return p * std::log(p / q);
}

double binary_neg_entropy(double g) {
  return (g > 0.0 ? g * std::log(g) : 0.0) + (g < 1.0 ? (1.0 - g) * std::log(1.0 - g) : 0.0);
}

std::optional<double> residual_for(const MaximalReward& reward, double refinement, double md,
                                   double prior) {
  if (reward.family() != RewardFamily::natural_log) return std::nullopt;
  return refinement - (md + binary_neg_entropy(prior));
}

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ShapeError("KL divergence needs distributions over the same support");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += kl_term(p[i], q[i]);
  return total;
}

double kl_divergence(const GridDensity& p, const GridDensity& q) {
  if (p.bins() != q.bins() || p.lo() != q.lo() || p.hi() != q.hi()) {
    throw ShapeError("KL divergence needs densities on the same grid");
  }
  return kl_divergence(p.mass(), q.mass()) * p.bin_width();
}

double marginal_diversity(const DiscreteJoint& joint) {
  const DiscreteJoint xy = joint.marginal_x();
  const double prior = xy.prior();
  std::vector<double> px(xy.nx());
  std::vector<double> pos(xy.nx());
  std::vector<double> neg(xy.nx());
  for (std::size_t x = 0; x < xy.nx(); ++x) {
    px[x] = xy.cell_mass(x, 0);
    pos[x] = prior > 0.0 ? xy.p(x, 0, 1) / prior : 0.0;
    neg[x] = prior < 1.0 ? xy.p(x, 0, -1) / (1.0 - prior) : 0.0;
  }
  double md = 0.0;
  if (prior > 0.0) md += prior * kl_divergence(pos, px);
  if (prior < 1.0) md += (1.0 - prior) * kl_divergence(neg, px);
  return md;
}

double marginal_diversity(const ClassConditionalModel& model, const QuadratureConfig& quad) {
  const double pi = model.prior();
  const auto integrand = [&](double x) {
    const double p = pdf(model.positive(), x);
    const double q = pdf(model.negative(), x);
    const double m = pi * p + (1.0 - pi) * q;
    return pi * kl_term(p, m) + (1.0 - pi) * kl_term(q, m);
  };
  const auto points = model.breakpoints();
  return integrate_panels(integrand, points, quad);
}

FeatureScoreReport refinement_feature_score(const DiscreteJoint& joint, const MaximalReward& reward,
                                            std::string feature) {
  const DiscreteJoint xy = joint.marginal_x();
  FeatureScoreReport report;
  report.feature = std::move(feature);
  report.refinement = conditional_refinement(xy, reward);
  report.md = marginal_diversity(xy);
  report.entropy_identity_residual = residual_for(reward, report.refinement, report.md, xy.prior());
  return report;
}

FeatureScoreReport refinement_feature_score(const ClassConditionalModel& model,
                                            const MaximalReward& reward, std::string feature,
                                            const QuadratureConfig& quad) {
  FeatureScoreReport report;
  report.feature = std::move(feature);
  report.refinement = refinement_data(model, reward, quad);
  report.md = marginal_diversity(model, quad);
  report.entropy_identity_residual =
      residual_for(reward, report.refinement, report.md, model.prior());
  return report;
}

double conditional_refinement(const DiscreteJoint& joint, const MaximalReward& reward) {
  double total = 0.0;
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    for (std::size_t z = 0; z < joint.nz(); ++z) {
      const double mass = joint.cell_mass(x, z);
      if (mass == 0.0) continue;
      total += mass * reward.value(joint.cell_posterior(x, z));
    }
  }
  return total;
}

std::pair<std::vector<std::size_t>, std::size_t> discretize(std::span<const double> column,
                                                            std::size_t bins) {
  if (bins == 0) {
    throw ParameterError("discretization needs at least one bin");
  }
  std::vector<std::size_t> categories(column.size(), 0);
  if (column.empty()) return {categories, 1};
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return {categories, 1};
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t i = 0; i < column.size(); ++i) {
    const auto b = static_cast<std::size_t>((column[i] - lo) / width);
    categories[i] = std::min(b, bins - 1);
  }
  return {categories, bins};
}

std::vector<RankedFeature> greedy_rank(const TabularDataset& dataset, const MaximalReward& reward,
                                       std::size_t k, std::size_t bins) {
  const std::size_t features = dataset.columns.size();
  if (features == 0 || dataset.labels.empty()) {
    throw InputError("dataset has no features or no rows");
  }
  for (const auto& column : dataset.columns) {
    if (column.size() != dataset.labels.size()) {
      throw InputError("dataset columns and labels differ in length");
    }
  }
  if (k > features) {
    throw ParameterError("cannot rank " + std::to_string(k) + " of " + std::to_string(features) +
                         " features");
  }

  std::vector<std::vector<std::size_t>> categories(features);
  std::vector<std::size_t> sizes(features);
  for (std::size_t f = 0; f < features; ++f) {
    std::tie(categories[f], sizes[f]) = discretize(dataset.columns[f], bins);
  }
  const auto name_of = [&dataset](std::size_t f) {
    return f < dataset.feature_names.size() ? dataset.feature_names[f] : "x" + std::to_string(f);
  };
  const auto joint_of = [&](std::size_t a, std::optional<std::size_t> b) {
    std::vector<JointRow> rows(dataset.labels.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i] = {categories[a][i], b ? categories[*b][i] : 0, dataset.labels[i]};
    }
    return joint_from_samples(rows, sizes[a], b ? sizes[*b] : 1);
  };

  std::vector<RankedFeature> ranked;
  std::vector<bool> taken(features, false);
  std::optional<std::size_t> last;
  while (ranked.size() < k) {
    std::size_t best = features;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < features; ++f) {
      if (taken[f]) continue;
      const double score = last ? conditional_refinement(joint_of(*last, f), reward)
                                : conditional_refinement(joint_of(f, std::nullopt), reward);
      if (best == features || score > best_score) {
        best = f;
        best_score = score;
      }
    }
    taken[best] = true;
    ranked.push_back({best, name_of(best), best_score});
    last = best;
  }
  return ranked;
}

}  // namespace refine
