#include "refine/links.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "refine/errors.hpp"

namespace refine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

// Log-odds with the infinity sentinel at the endpoints.
double logit(double eta) {
  if (eta <= 0.0) return -kLinkSentinel;
  if (eta >= 1.0) return kLinkSentinel;
  return std::log(eta) - std::log1p(-eta);
}

LinkFunction affine_link(std::string name) {
  return {std::move(name), [](double eta) { return 2.0 * eta - 1.0; },
          [](double v) { return (1.0 + v) / 2.0; }, Interval{-1.0, 1.0, false}};
}

LinkFunction logistic_link(std::string name) {
  return {std::move(name), logit, logistic, Interval{-kInf, kInf, true}};
}

}  // namespace

bool Interval::contains(double v) const noexcept {
  if (std::isnan(v)) return false;
  return open ? (v > lo && v < hi) : (v >= lo && v <= hi);
}

bool Interval::contains(double a, double b) const noexcept {
  return a <= b && a >= lo && b <= hi;
}

LinkFunction::LinkFunction(std::string name, Function forward, Function inverse, Interval domain)
    : name_(std::move(name)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      domain_(domain) {}

double LinkFunction::forward(double eta) const {
  check_probability(eta, "eta");
  const double v = forward_(eta);
  if (!domain_.contains(v)) {
    throw DomainError("link '" + name_ + "' maps eta=" + std::to_string(eta) +
                      " outside its domain");
  }
  return v;
}

double LinkFunction::inverse(double v) const {
  if (!domain_.contains(v)) {
    throw DomainError("v=" + std::to_string(v) + " outside the domain of link '" + name_ + "'");
  }
  return inverse_(v);
}

LinkFunction make_link(std::string_view name) {
  if (name == "ls") return affine_link("ls");
  if (name == "zero-one-a") return affine_link("zero-one-a");
  if (name == "log") return logistic_link("log");
  if (name == "savage") return logistic_link("savage");
  if (name == "zero-one-b") return logistic_link("zero-one-b");
  if (name == "exp") {
    return {"exp", [](double eta) { return 0.5 * logit(eta); },
            [](double v) { return logistic(2.0 * v); }, Interval{-kInf, kInf, true}};
  }
  if (name == "tangent") {
    const double edge = std::tan(0.5);
    return {"tangent", [](double eta) { return std::tan(eta - 0.5); },
            [](double v) { return std::atan(v) + 0.5; }, Interval{-edge, edge, true}};
  }
  throw RegistryError("unknown link '" + std::string(name) + "'");
}

const std::vector<std::string>& link_names() {
  static const std::vector<std::string> names = {"ls",      "exp",        "log",       "savage",
                                                 "tangent", "zero-one-a", "zero-one-b"};
  return names;
}

double link_eval(std::string_view name, double eta) { return make_link(name).forward(eta); }

double inverse_link_eval(std::string_view name, double v) { return make_link(name).inverse(v); }

MarginLoss make_margin_loss(std::string_view name) {
  if (name == "ls") return {"ls", [](double v) { return 0.5 * (1.0 - v) * (1.0 - v); }};
  if (name == "exp") return {"exp", [](double v) { return std::exp(-v); }};
  if (name == "log") {
    return {"log", [](double v) {
              return v > -30.0 ? std::log1p(std::exp(-v)) : -v + std::log1p(std::exp(v));
            }};
  }
  if (name == "savage") {
    return {"savage", [](double v) {
              const double d = 1.0 + std::exp(v);
              return 4.0 / (d * d);
            }};
  }
  if (name == "tangent") {
    return {"tangent", [](double v) {
              const double a = 2.0 * std::atan(v) - 1.0;
              return a * a;
            }};
  }
  throw RegistryError("unknown margin loss '" + std::string(name) + "'");
}

const std::vector<std::string>& margin_loss_names() {
  static const std::vector<std::string> names = {"ls", "exp", "log", "savage", "tangent"};
  return names;
}

std::string loss_scaled_reward(std::string_view name) {
  if (name == "exp") return "exp-loss";
  if (name == "log") return "log-natural";
  if (name == "savage-bound") return "savage";
  if (name == "tangent-bound") return "tangent";
  return std::string(name);
}

std::string composite_scaled_reward(std::string_view name) {
  if (name == "savage") return "savage-bound";
  if (name == "tangent") return "tangent-bound";
  return std::string(name);
}

double loss_from_reward(std::string_view reward, std::string_view link, double v) {
  const ScorePair scores(make_reward(loss_scaled_reward(reward)));
  return -scores.i_pos(make_link(link).inverse(v));
}

double composite_reward(std::string_view reward, std::string_view link, double v) {
  return make_reward(composite_scaled_reward(reward)).value(make_link(link).inverse(v));
}

ScoreLossIdentity score_loss_identity_check(std::string_view reward, std::string_view link,
                                            double eta) {
  const ScorePair scores(make_reward(loss_scaled_reward(reward)));
  const double v = make_link(link).forward(eta);
  ScoreLossIdentity out;
  out.i_pos = scores.i_pos(eta);
  out.i_neg = scores.i_neg(eta);
  out.neg_phi_pos = -loss_from_reward(reward, link, v);
  out.neg_phi_neg = -loss_from_reward(reward, link, -v);
  return out;
}

int derivative_sign_changes(const std::function<double(double)>& f, std::span<const double> grid,
                            double flat) {
  int changes = 0;
  int last_sign = 0;
  if (grid.size() < 2) return 0;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    const double d = cur - prev;
    prev = cur;
    if (std::abs(d) <= flat) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

std::vector<double> domain_grid(const LinkFunction& link, std::size_t points, double span) {
  const Interval& d = link.domain();
  const double lo = std::isinf(d.lo) ? -span : d.lo;
  const double hi = std::isinf(d.hi) ? span : d.hi;
  const bool interior = d.open && !std::isinf(d.lo);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = interior ? (static_cast<double>(i) + 1.0) / (static_cast<double>(points) + 1.0)
                              : static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = lo + t * (hi - lo);
  }
  return grid;
}

}  // namespace refine
