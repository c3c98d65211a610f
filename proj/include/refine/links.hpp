#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refine/reward.hpp"

namespace refine {

// Domain of classifier outputs v for a link. Infinite ends are allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool open = false;

  bool contains(double v) const noexcept;
  bool contains(double a, double b) const noexcept;  // closure contains [a, b]
};

// Logit-type links return +-kLinkSentinel (scaled by the link) at eta in {0,1}.
inline constexpr double kLinkSentinel = 709.0;

// Optimal link f*: [0,1] -> R and its inverse on `domain`.
class LinkFunction {
 public:
  using Function = std::function<double(double)>;

  LinkFunction(std::string name, Function forward, Function inverse, Interval domain);

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }

  // Throws DomainError outside [0,1] or when the image leaves the domain.
  double forward(double eta) const;
  // Throws DomainError outside the domain.
  double inverse(double v) const;

 private:
  std::string name_;
  Function forward_;
  Function inverse_;
  Interval domain_;
};

// "ls", "exp", "log", "savage", "tangent", "zero-one-a", "zero-one-b".
LinkFunction make_link(std::string_view name);
const std::vector<std::string>& link_names();

double link_eval(std::string_view name, double eta);
double inverse_link_eval(std::string_view name, double v);

// Tabulated proper margin loss phi(v).
struct MarginLoss {
  std::string name;
  std::function<double(double)> phi;
};

// "ls", "exp", "log", "savage", "tangent".
MarginLoss make_margin_loss(std::string_view name);
const std::vector<std::string>& margin_loss_names();

// Reward name in the scaling that pairs with the tabulated margin losses
// (savage/tangent: -4 eta(1-eta), exp: -2 sqrt(eta(1-eta)), log: natural).
std::string loss_scaled_reward(std::string_view name);
// Reward name in the scaling of the tabulated composites
// (savage/tangent: -2 eta(1-eta)); other names are unchanged.
std::string composite_scaled_reward(std::string_view name);

// phi(v) = -J(g(v)) - (1 - g(v)) J'(g(v)) with g the inverse link, J resolved
// through loss_scaled_reward.
double loss_from_reward(std::string_view reward, std::string_view link, double v);

// J(g(v)), J resolved through composite_scaled_reward.
double composite_reward(std::string_view reward, std::string_view link, double v);

struct ScoreLossIdentity {
  double i_pos = 0.0;         // I1(eta)
  double neg_phi_pos = 0.0;   // -phi(f*(eta))
  double i_neg = 0.0;         // I-1(eta)
  double neg_phi_neg = 0.0;   // -phi(-f*(eta))
};

// Both sides of I1 = -phi(f*), I-1 = -phi(-f*) with phi from loss_from_reward.
ScoreLossIdentity score_loss_identity_check(std::string_view reward, std::string_view link,
                                            double eta);

// Number of sign changes of the forward-difference derivative of f over the
// grid, ignoring differences with |df| <= flat.
int derivative_sign_changes(const std::function<double(double)>& f, std::span<const double> grid,
                            double flat = 0.0);

// Evenly spaced points over the link domain; infinite ends are cut at +-span.
std::vector<double> domain_grid(const LinkFunction& link, std::size_t points, double span = 10.0);

}  // namespace refine
