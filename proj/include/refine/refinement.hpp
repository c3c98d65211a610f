#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refine/density.hpp"
#include "refine/links.hpp"
#include "refine/quadrature.hpp"
#include "refine/reward.hpp"

namespace refine {

// ---------------------------------------------------------------------------
// Elicitation setting: forecasts and their calibration/refinement split.

struct ForecastRecord {
  double eta_hat = 0.5;
  int outcome = 1;  // -1 or +1
};

// Nonempty set of forecasts with eta_hat in [0,1] and outcomes in {-1,+1}.
class ForecastRecordSet {
 public:
  // Throws InputError on empty input, bad predictions or bad outcomes.
  explicit ForecastRecordSet(std::vector<ForecastRecord> records);

  std::span<const ForecastRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::vector<ForecastRecord> records_;
};

struct DecompositionBin {
  double eta_hat = 0.0;    // mean prediction in the bin
  double frequency = 0.0;  // fraction of records in the bin, s_b
  double eta = 0.0;        // empirical positive frequency
  std::size_t count = 0;
  bool clamped = false;    // a score argument hit the derivative clamp
};

struct Decomposition {
  double total = 0.0;
  double calibration = 0.0;
  double refinement = 0.0;
  std::vector<DecompositionBin> per_bin;  // occupied bins only, in bin order
};

inline constexpr std::size_t kDefaultDecompositionBins = 20;

// Groups records into `bins` equal-width bins over [0,1] (1.0 falls in the
// last bin) and splits the expected score into calibration and refinement.
// Throws InputError for bins == 0, UnsupportedError for non-differentiable J.
Decomposition decompose_forecasts(const ForecastRecordSet& records, const MaximalReward& reward,
                                  std::size_t bins = kDefaultDecompositionBins);

// Midpoint sum of s(eta_hat) J(calibration_map(eta_hat)) over a density on [0,1].
double refinement_elicitation(const GridDensity& s,
                              const std::function<double(double)>& calibration_map,
                              const MaximalReward& reward);

// ---------------------------------------------------------------------------
// Classifier-output setting.

// Midpoint sum of s(v) J(g(v)) with g the inverse link. Throws DomainError
// when [s.lo(), s.hi()] is not inside the link domain.
double refinement_classifier_output(const GridDensity& s_v, const LinkFunction& link,
                                    const MaximalReward& reward);

// ---------------------------------------------------------------------------
// Data-distribution setting.

// Integral of P(x) J(P(1|x)) over the model support. Panels are split at grid
// edges and at points where the posterior crosses 1/2.
double refinement_data(const ClassConditionalModel& model, const MaximalReward& reward,
                       const QuadratureConfig& quad = {});

struct BayesErrorReport {
  double bayes_error = 0.0;
  double miss_rate = 0.0;            // P(decide -1 | y = +1)
  double false_positive_rate = 0.0;  // P(decide +1 | y = -1)
  std::map<std::string, double> bounds;  // reward name -> -refinement
};

inline const std::vector<int> kDefaultBoundPolyOrders = {2, 4};

// Bayes error as minus the zero-one refinement, the two class error rates,
// and upper bounds from every bound-family reward plus poly-<n> for the
// given orders.
BayesErrorReport bayes_error(const ClassConditionalModel& model, const QuadratureConfig& quad = {},
                             std::span<const int> poly_orders = kDefaultBoundPolyOrders);

// Names with a closed-form refinement integrand in terms of P(x|1), P(x|-1).
const std::vector<std::string>& closed_form_names();

// Refinement from the closed-form integrand. Requires equal priors
// (UnsupportedError otherwise); RegistryError for names without a closed form.
double closed_form_bound(const ClassConditionalModel& model, std::string_view reward,
                         const QuadratureConfig& quad = {});

// Bound chain: the ordered list (tightest first) and any adjacent pairs whose
// bounds are out of order by more than `tolerance`.
struct ChainViolation {
  std::string tighter;
  std::string looser;
  double excess = 0.0;  // bound(tighter) - bound(looser) > tolerance
};

std::vector<std::string> bound_chain(std::span<const int> poly_orders = kDefaultBoundPolyOrders);

std::vector<ChainViolation> check_bound_chain(const BayesErrorReport& report,
                                              std::span<const int> poly_orders =
                                                  kDefaultBoundPolyOrders,
                                              double tolerance = 1e-6);

struct RefinementTerm {
  double x = 0.0;
  double marginal = 0.0;
  double reward = 0.0;   // J(eta(x))
  double product = 0.0;  // P(x) J(eta(x))
};

std::vector<RefinementTerm> refinement_terms_table(const ClassConditionalModel& model,
                                                   const MaximalReward& reward,
                                                   std::span<const double> grid);

}  // namespace refine
