#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "refine/density.hpp"
#include "refine/quadrature.hpp"
#include "refine/reward.hpp"

namespace refine {

// Sum p ln(p/q) over a shared support; 0 ln 0 = 0 and p > 0 = q gives +inf.
// Throws ShapeError when the supports differ.
double kl_divergence(std::span<const double> p, std::span<const double> q);
double kl_divergence(const GridDensity& p, const GridDensity& q);

// sum_y P(y) KL(P(x|y) || P(x)). For a two-feature joint, z is summed out.
double marginal_diversity(const DiscreteJoint& joint);
double marginal_diversity(const ClassConditionalModel& model, const QuadratureConfig& quad = {});

struct FeatureScoreReport {
  std::string feature;
  double refinement = 0.0;
  double md = 0.0;
  // refinement - (md + g ln g + (1-g) ln(1-g)), g = P(y=1); only for log-natural.
  std::optional<double> entropy_identity_residual;
};

FeatureScoreReport refinement_feature_score(const DiscreteJoint& joint, const MaximalReward& reward,
                                            std::string feature = {});
FeatureScoreReport refinement_feature_score(const ClassConditionalModel& model,
                                            const MaximalReward& reward, std::string feature = {},
                                            const QuadratureConfig& quad = {});

// sum_{x,z} P(x,z) J(P(1|x,z)).
double conditional_refinement(const DiscreteJoint& joint, const MaximalReward& reward);

struct TabularDataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> columns;  // one column per feature
  std::vector<int> labels;                   // -1 / +1
};

inline constexpr std::size_t kDefaultFeatureBins = 16;

// Equal-width categories over the column range; a constant column maps to a
// single category. Returns (categories, support size).
std::pair<std::vector<std::size_t>, std::size_t> discretize(std::span<const double> column,
                                                            std::size_t bins);

struct RankedFeature {
  std::size_t index = 0;
  std::string name;
  double score = 0.0;  // refinement for the first pick, conditional refinement after
};

// First pick maximizes refinement; every later pick maximizes conditional
// refinement given the previously picked feature. Ties go to the lower index.
// Throws ParameterError when k exceeds the feature count, InputError for an
// empty or ragged dataset.
std::vector<RankedFeature> greedy_rank(const TabularDataset& dataset, const MaximalReward& reward,
                                       std::size_t k, std::size_t bins = kDefaultFeatureBins);

}  // namespace refine
