#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace refine {

// Scaling family of a maximal reward.
//   bound:       normalized so that J(1/2) = -1/2 and J(0) = J(1) = 0
//   loss:        the scaling that pairs with a tabulated margin loss
//   natural_log: unnormalized logistic reward in nats
enum class RewardFamily { bound, loss, natural_log };

std::string_view to_string(RewardFamily family);

// Published scale constants. These are kept as printed, not recomputed from
// the normalization they approximate.
inline constexpr double kLogScale = 0.7213;
inline constexpr double kLogCosScale = 2.5854;
inline constexpr double kCoshScale = 1.9248;
inline constexpr double kSecScale = 1.6821;

// Derivative arguments are clamped to [kDerivativeClamp, 1 - kDerivativeClamp]
// when building score functions, where log/exp derivatives diverge.
inline constexpr double kDerivativeClamp = 1e-12;

// A maximal reward function J : [0,1] -> (-inf, 0], convex and symmetric.
// Immutable; copies share the underlying callables.
class MaximalReward {
 public:
  using Function = std::function<double(double)>;

  // `derivative` may be empty for members with a kink (zero-one).
  MaximalReward(std::string name, RewardFamily family, Function value,
                Function derivative);

  const std::string& name() const noexcept { return name_; }
  RewardFamily family() const noexcept { return family_; }
  bool differentiable() const noexcept { return static_cast<bool>(derivative_); }

  // Throws DomainError outside [0,1].
  double value(double eta) const;
  double operator()(double eta) const { return value(eta); }

  // Throws UnsupportedError for non-differentiable members and DomainError
  // outside [0,1]. Diverges (inf) at the endpoints for log/exp members.
  double derivative(double eta) const;

 private:
  std::string name_;
  RewardFamily family_;
  Function value_;
  Function derivative_;
};

// Looks up a registered reward. Besides the fixed names this accepts
// "poly-<n>" for even n up to the default polynomial capacity.
// Throws RegistryError for unknown names.
MaximalReward make_reward(std::string_view name);

// Fixed registered names (poly-<n> members are not listed).
const std::vector<std::string>& reward_names();

// Members of the bound family in the order of their published closeness to
// the zero-one reward: ls, cosh, sec, log, log-cos, exp.
const std::vector<std::string>& bound_chain_names();

double eval_reward(std::string_view name, double eta);

// Proper score functions derived from a differentiable maximal reward:
//   I1(eta)  = J(eta) + (1 - eta) J'(eta)
//   I-1(eta) = J(eta) - eta J'(eta)
// J' is evaluated at eta clamped to [kDerivativeClamp, 1 - kDerivativeClamp],
// so both functions stay finite and eta I1 + (1 - eta) I-1 = J holds exactly
// up to rounding, including at the endpoints.
class ScorePair {
 public:
  explicit ScorePair(MaximalReward reward);

  double i_pos(double eta) const;
  double i_neg(double eta) const;
  const std::string& source() const noexcept { return reward_.name(); }
  const MaximalReward& reward() const noexcept { return reward_; }

  // True when `eta` lies outside the unclamped derivative range.
  static bool clamped(double eta) noexcept;

 private:
  MaximalReward reward_;
};

// Throws UnsupportedError when J has no derivative.
ScorePair derive_scores(const MaximalReward& reward);

// eta * I1(eta_hat) + (1 - eta) * I-1(eta_hat); never exceeds J(eta).
double expected_conditional_score(const MaximalReward& reward, double eta,
                                  double eta_hat);

void check_probability(double eta, std::string_view what);

}  // namespace refine
