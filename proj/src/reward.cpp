#include "refine/reward.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <utility>

#include "refine/errors.hpp"
#include "refine/poly_reward.hpp"

namespace refine {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_neg_entropy(double eta) { return xlogx(eta) + xlogx(1.0 - eta); }

double logit(double eta) { return std::log(eta) - std::log1p(-eta); }

MaximalReward zero_one() {
  return {"zero-one", RewardFamily::bound,
          [](double eta) { return -std::min(eta, 1.0 - eta); }, nullptr};
}

// -scale * eta (1 - eta); scale 2 is LS, scale 4 the Table-2 savage/tangent.
MaximalReward quadratic(std::string name, RewardFamily family, double scale) {
  return {std::move(name), family,
          [scale](double eta) { return -scale * eta * (1.0 - eta); },
          [scale](double eta) { return scale * (2.0 * eta - 1.0); }};
}

MaximalReward root(std::string name, RewardFamily family, double scale) {
  return {std::move(name), family,
          [scale](double eta) { return -scale * std::sqrt(eta * (1.0 - eta)); },
          [scale](double eta) {
            return -scale * (1.0 - 2.0 * eta) / (2.0 * std::sqrt(eta * (1.0 - eta)));
          }};
}

MaximalReward logistic(std::string name, RewardFamily family, double scale) {
  return {std::move(name), family,
          [scale](double eta) { return scale * binary_neg_entropy(eta); },
          [scale](double eta) { return scale * logit(eta); }};
}

MaximalReward log_cos() {
  constexpr double c = kLogCosScale;
  return {"log-cos", RewardFamily::bound,
          [](double eta) {
            return (-1.0 / c) * std::log(std::cos(c * (eta - 0.5)) / std::cos(c / 2.0));
          },
          [](double eta) { return std::tan(c * (eta - 0.5)); }};
}

MaximalReward hyperbolic_cosine() {
  constexpr double c = kCoshScale;
  return {"cosh", RewardFamily::bound,
          [](double eta) { return std::cosh(c * (0.5 - eta)) - std::cosh(-c / 2.0); },
          [](double eta) { return -c * std::sinh(c * (0.5 - eta)); }};
}

MaximalReward secant() {
  constexpr double c = kSecScale;
  return {"sec", RewardFamily::bound,
          [](double eta) {
            return 1.0 / std::cos(c * (0.5 - eta)) - 1.0 / std::cos(-c / 2.0);
          },
          [](double eta) {
            const double u = c * (0.5 - eta);
            return -c * std::tan(u) / std::cos(u);
          }};
}

MaximalReward polynomial(std::string_view name) {
  const std::string_view digits = name.substr(5);
  long n = -1;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size() || n < 0) {
    throw RegistryError("unknown reward '" + std::string(name) + "'");
  }
  return build_poly_reward(static_cast<int>(n)).as_reward();
}

}  // namespace

std::string_view to_string(RewardFamily family) {
  switch (family) {
    case RewardFamily::bound: return "bound";
    case RewardFamily::loss: return "loss";
    case RewardFamily::natural_log: return "natural_log";
  }
  return "unknown";
}

void check_probability(double eta, std::string_view what) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(eta));
  }
}

MaximalReward::MaximalReward(std::string name, RewardFamily family, Function value,
                             Function derivative)
    : name_(std::move(name)),
      family_(family),
      value_(std::move(value)),
      derivative_(std::move(derivative)) {}

double MaximalReward::value(double eta) const {
  check_probability(eta, "eta");
  return value_(eta);
}

double MaximalReward::derivative(double eta) const {
  if (!derivative_) {
    throw UnsupportedError("reward '" + name_ + "' has no derivative");
  }
  check_probability(eta, "eta");
  return derivative_(eta);
}

MaximalReward make_reward(std::string_view name) {
  if (name == "zero-one") return zero_one();
  if (name == "ls") return quadratic("ls", RewardFamily::bound, 2.0);
  if (name == "exp") return root("exp", RewardFamily::bound, 1.0);
  if (name == "exp-loss") return root("exp-loss", RewardFamily::loss, 2.0);
  if (name == "log") return logistic("log", RewardFamily::bound, kLogScale);
  if (name == "log-natural") return logistic("log-natural", RewardFamily::natural_log, 1.0);
  if (name == "log-cos") return log_cos();
  if (name == "cosh") return hyperbolic_cosine();
  if (name == "sec") return secant();
  if (name == "savage") return quadratic("savage", RewardFamily::loss, 4.0);
  if (name == "tangent") return quadratic("tangent", RewardFamily::loss, 4.0);
  if (name == "savage-bound") return quadratic("savage-bound", RewardFamily::bound, 2.0);
  if (name == "tangent-bound") return quadratic("tangent-bound", RewardFamily::bound, 2.0);
  if (name.starts_with("poly-")) return polynomial(name);
  throw RegistryError("unknown reward '" + std::string(name) + "'");
}

const std::vector<std::string>& reward_names() {
  static const std::vector<std::string> names = {
      "zero-one", "ls",      "exp",     "exp-loss",     "log",          "log-natural", "log-cos",
      "cosh",     "sec",     "savage",  "tangent",      "savage-bound", "tangent-bound"};
  return names;
}

const std::vector<std::string>& bound_chain_names() {
  static const std::vector<std::string> names = {"ls", "cosh", "sec", "log", "log-cos", "exp"};
  return names;
}

double eval_reward(std::string_view name, double eta) { return make_reward(name).value(eta); }

ScorePair::ScorePair(MaximalReward reward) : reward_(std::move(reward)) {
  if (!reward_.differentiable()) {
    throw UnsupportedError("reward '" + reward_.name() + "' has no score functions");
  }
}

bool ScorePair::clamped(double eta) noexcept {
  return eta < kDerivativeClamp || eta > 1.0 - kDerivativeClamp;
}

namespace {
double clamp_eta(double eta) {
  return std::clamp(eta, kDerivativeClamp, 1.0 - kDerivativeClamp);
}
}  // namespace

double ScorePair::i_pos(double eta) const {
  return reward_.value(eta) + (1.0 - eta) * reward_.derivative(clamp_eta(eta));
}

double ScorePair::i_neg(double eta) const {
  return reward_.value(eta) - eta * reward_.derivative(clamp_eta(eta));
}

ScorePair derive_scores(const MaximalReward& reward) { return ScorePair(reward); }

double expected_conditional_score(const MaximalReward& reward, double eta, double eta_hat) {
  check_probability(eta, "eta");
  check_probability(eta_hat, "eta_hat");
  const ScorePair scores(reward);
  return eta * scores.i_pos(eta_hat) + (1.0 - eta) * scores.i_neg(eta_hat);
}

}  // namespace refine
