#include "refine/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "refine/errors.hpp"
#include "refine/poly_reward.hpp"

namespace refine {

ForecastRecordSet::ForecastRecordSet(std::vector<ForecastRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) {
    throw InputError("forecast record set is empty");
  }
  for (const auto& r : records_) {
    if (!(r.eta_hat >= 0.0 && r.eta_hat <= 1.0)) {
      throw InputError("forecast eta_hat must lie in [0,1], got " + std::to_string(r.eta_hat));
    }
    if (r.outcome != 1 && r.outcome != -1) {
      throw InputError("forecast outcome must be -1 or +1, got " + std::to_string(r.outcome));
    }
  }
}

Decomposition decompose_forecasts(const ForecastRecordSet& records, const MaximalReward& reward,
                                  std::size_t bins) {
  if (bins == 0) {
    throw InputError("decomposition needs at least one bin");
  }
  const ScorePair scores(reward);

  struct Accumulator {
    std::size_t count = 0;
    std::size_t positives = 0;
    double prediction_sum = 0.0;
  };
  std::vector<Accumulator> acc(bins);
  for (const auto& r : records.records()) {
    const auto b = std::min(static_cast<std::size_t>(r.eta_hat * static_cast<double>(bins)), bins - 1);
    acc[b].count += 1;
    acc[b].positives += r.outcome == 1 ? 1 : 0;
    acc[b].prediction_sum += r.eta_hat;
  }

  Decomposition out;
  const auto n = static_cast<double>(records.size());
  for (const auto& a : acc) {
    if (a.count == 0) continue;
    DecompositionBin bin;
    bin.count = a.count;
    bin.frequency = static_cast<double>(a.count) / n;
    bin.eta_hat = a.prediction_sum / static_cast<double>(a.count);
    bin.eta = static_cast<double>(a.positives) / static_cast<double>(a.count);
    bin.clamped = ScorePair::clamped(bin.eta_hat) || ScorePair::clamped(bin.eta);

    const double pos_hat = scores.i_pos(bin.eta_hat);
    const double neg_hat = scores.i_neg(bin.eta_hat);
    const double calibration = bin.eta * (pos_hat - scores.i_pos(bin.eta)) +
                               (1.0 - bin.eta) * (neg_hat - scores.i_neg(bin.eta));
    out.calibration += bin.frequency * calibration;
    out.refinement += bin.frequency * reward.value(bin.eta);
    out.total += bin.frequency * (bin.eta * pos_hat + (1.0 - bin.eta) * neg_hat);
    out.per_bin.push_back(bin);
  }
  return out;
}

double refinement_elicitation(const GridDensity& s,
                              const std::function<double(double)>& calibration_map,
                              const MaximalReward& reward) {
  if (s.lo() < 0.0 || s.hi() > 1.0) {
    throw DomainError("prediction density must live on [0,1]");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < s.bins(); ++i) {
    if (s.mass()[i] == 0.0) continue;
    total += s.mass()[i] * reward.value(calibration_map(s.bin_center(i)));
  }
  return total * s.bin_width();
}

double refinement_classifier_output(const GridDensity& s_v, const LinkFunction& link,
                                    const MaximalReward& reward) {
  if (!link.domain().contains(s_v.lo(), s_v.hi())) {
    throw DomainError("output grid [" + std::to_string(s_v.lo()) + ", " +
                      std::to_string(s_v.hi()) + "] leaves the domain of link '" + link.name() +
                      "'");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < s_v.bins(); ++i) {
    if (s_v.mass()[i] == 0.0) continue;
    total += s_v.mass()[i] * reward.value(link.inverse(s_v.bin_center(i)));
  }
  return total * s_v.bin_width();
}

namespace {

// Panel boundaries: support ends, grid edges, and posterior crossings of 1/2.
std::vector<double> panel_points(const ClassConditionalModel& model) {
  std::vector<double> points = model.breakpoints();
  const auto excess = [&model](double x) { return model.posterior(x) - 0.5; };
  const int per_panel = std::max<int>(16, 4096 / static_cast<int>(points.size() - 1));
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const auto found = find_crossings(excess, points[i], points[i + 1], per_panel);
    crossings.insert(crossings.end(), found.begin(), found.end());
  }
  points.insert(points.end(), crossings.begin(), crossings.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

}  // namespace

double refinement_data(const ClassConditionalModel& model, const MaximalReward& reward,
                       const QuadratureConfig& quad) {
  const auto points = panel_points(model);
  const auto integrand = [&](double x) {
    const double m = model.marginal(x);
    return m == 0.0 ? 0.0 : m * reward.value(model.posterior(x));
  };
  return integrate_panels(integrand, points, quad);
}

BayesErrorReport bayes_error(const ClassConditionalModel& model, const QuadratureConfig& quad,
                             std::span<const int> poly_orders) {
  BayesErrorReport report;
  report.bayes_error = -refinement_data(model, make_reward("zero-one"), quad);

  const auto points = panel_points(model);
  const auto p = [&model](double x) { return pdf(model.positive(), x); };
  const auto q = [&model](double x) { return pdf(model.negative(), x); };
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    if (model.posterior(0.5 * (a + b)) >= 0.5) {
      report.false_positive_rate += integrate(q, a, b, quad);
    } else {
      report.miss_rate += integrate(p, a, b, quad);
    }
  }

  for (const auto& name : reward_names()) {
    const auto reward = make_reward(name);
    if (reward.family() != RewardFamily::bound || !reward.differentiable()) continue;
    report.bounds[name] = -refinement_data(model, reward, quad);
  }
  for (int n : poly_orders) {
    const auto reward = build_poly_reward(n).as_reward();
    report.bounds[reward.name()] = -refinement_data(model, reward, quad);
  }
  return report;
}

const std::vector<std::string>& closed_form_names() {
  static const std::vector<std::string> names = {"ls",   "exp", "log",    "log-cos",
                                                 "cosh", "sec", "poly-2", "poly-4"};
  return names;
}

namespace {

double xlog_ratio(double a, double s) { return a > 0.0 ? a * std::log(a / s) : 0.0; }

// Integrand of the closed-form refinement for equal priors, in terms of
// p = P(x|1), q = P(x|-1) and s = p + q = 2 P(x).
std::function<double(double, double)> closed_form_integrand(std::string_view name) {
  if (name == "ls") {
    return [](double p, double q) { return -p * q / (p + q); };
  }
  if (name == "exp") {
    return [](double p, double q) { return -0.5 * std::sqrt(p * q); };
  }
  if (name == "log") {
    return [](double p, double q) {
      const double s = p + q;
      return kLogScale / 2.0 * (xlog_ratio(p, s) + xlog_ratio(q, s));
    };
  }
  if (name == "log-cos") {
    return [](double p, double q) {
      constexpr double c = kLogCosScale;
      const double s = p + q;
      return s / 2.0 * (-1.0 / c) *
             std::log(std::cos(c * (p - q) / (2.0 * s)) / std::cos(c / 2.0));
    };
  }
  if (name == "cosh") {
    return [](double p, double q) {
      constexpr double c = kCoshScale;
      const double s = p + q;
      return s / 2.0 * (std::cosh(c * (q - p) / (2.0 * s)) - std::cosh(-c / 2.0));
    };
  }
  if (name == "sec") {
    return [](double p, double q) {
      constexpr double c = kSecScale;
      const double s = p + q;
      return s / 2.0 * (1.0 / std::cos(c * (q - p) / (2.0 * s)) - 1.0 / std::cos(-c / 2.0));
    };
  }
  // Published monomials; p^k / s^(k-1) is written as s r^k with r = p / s.
  if (name == "poly-2") {
    const auto poly = build_poly_reward(2);
    const double k1 = static_cast<double>(poly.k1());
    const double k2 = static_cast<double>(poly.k2());
    return [k1, k2](double p, double q) {
      const double s = p + q;
      const double r = p / s;
      return k2 / 2.0 *
             (s * std::pow(r, 4) / 12.0 + s * std::pow(r, 6) / 30.0 - s * std::pow(r, 5) / 10.0 +
              k1 * p);
    };
  }
  if (name == "poly-4") {
    const auto poly = build_poly_reward(4);
    const double k1 = static_cast<double>(poly.k1());
    const double k2 = static_cast<double>(poly.k2());
    return [k1, k2](double p, double q) {
      const double s = p + q;
      const double r = p / s;
      return k2 / 2.0 *
             (s * std::pow(r, 10) / 90.0 - s * std::pow(r, 9) / 18.0 +
              3.0 * s * std::pow(r, 8) / 28.0 - 2.0 * s * std::pow(r, 7) / 21.0 +
              s * std::pow(r, 6) / 30.0 + k1 * p);
    };
  }
  throw RegistryError("no closed-form refinement for reward '" + std::string(name) + "'");
}

}  // namespace

double closed_form_bound(const ClassConditionalModel& model, std::string_view reward,
                         const QuadratureConfig& quad) {
  const auto integrand = closed_form_integrand(reward);
  if (model.prior() != 0.5) {
    throw UnsupportedError("closed-form refinement assumes equal priors");
  }
  const auto points = panel_points(model);
  const auto f = [&](double x) {
    const double p = pdf(model.positive(), x);
    const double q = pdf(model.negative(), x);
    if (p < kDensityFloor && q < kDensityFloor) return 0.0;
    return integrand(p, q);
  };
  return integrate_panels(f, points, quad);
}

std::vector<std::string> bound_chain(std::span<const int> poly_orders) {
  std::vector<int> orders(poly_orders.begin(), poly_orders.end());
  std::sort(orders.rbegin(), orders.rend());
  std::vector<std::string> chain = {"zero-one"};
  for (int n : orders) {
    if (n > 0) chain.push_back("poly-" + std::to_string(n));
  }
  const auto& rest = bound_chain_names();
  chain.insert(chain.end(), rest.begin(), rest.end());
  return chain;
}

std::vector<ChainViolation> check_bound_chain(const BayesErrorReport& report,
                                              std::span<const int> poly_orders,
                                              double tolerance) {
  const auto chain = bound_chain(poly_orders);
  const auto value = [&report](const std::string& name) {
    return name == "zero-one" ? report.bayes_error : report.bounds.at(name);
  };
  std::vector<ChainViolation> out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const double excess = value(chain[i]) - value(chain[i + 1]);
    if (excess > tolerance) {
      out.push_back({chain[i], chain[i + 1], excess});
    }
  }
  return out;
}

std::vector<RefinementTerm> refinement_terms_table(const ClassConditionalModel& model,
                                                   const MaximalReward& reward,
                                                   std::span<const double> grid) {
  std::vector<RefinementTerm> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    RefinementTerm t;
    t.x = x;
    t.marginal = model.marginal(x);
    t.reward = reward.value(model.posterior(x));
    t.product = t.marginal * t.reward;
    rows.push_back(t);
  }
  return rows;
}

}  // namespace refine
