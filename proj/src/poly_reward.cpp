#include "refine/poly_reward.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "refine/errors.hpp"

namespace refine {
namespace {

Rational binomial(int n, int k) {
  Rational c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return c;
}

// Coefficients of (eta (1 - eta))^n = sum_k C(n,k) (-1)^k eta^(n+k).
std::vector<Rational> expand_second_derivative(int n) {
  std::vector<Rational> c(2 * n + 1, Rational(0));
  for (int k = 0; k <= n; ++k) {
    c[n + k] = (k % 2 == 0 ? 1 : -1) * binomial(n, k);
  }
  return c;
}

std::vector<Rational> antiderivative(const std::vector<Rational>& c) {
  std::vector<Rational> out(c.size() + 1, Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i + 1] = c[i] / static_cast<long>(i + 1);
  }
  return out;
}

// Gauss-Legendre rule with m points mapped to [0,1] (Newton on P_m).
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(m, 0.0);
  weights.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

Rational evaluate(const std::vector<Rational>& coefficients, const Rational& x) {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

PolynomialReward build_poly_reward(int n, int max_order) {
  if (n < 0 || n % 2 != 0) {
    throw ParameterError("polynomial order must be even and nonnegative, got " + std::to_string(n));
  }
  if (n > max_order) {
    throw CapacityError("polynomial order " + std::to_string(n) + " exceeds maximum " +
                        std::to_string(max_order));
  }
  PolynomialReward p;
  p.n_ = n;
  p.q_ = antiderivative(expand_second_derivative(n));
  p.r_ = antiderivative(p.q_);
  const Rational half(1, 2);
  p.k1_ = -evaluate(p.q_, half);
  p.k2_ = p.k2_for(p.k1_);
  p.k2_float_ = static_cast<double>(p.k2_);
  gauss_legendre(n + 2, p.nodes_, p.weights_);
  return p;
}

Rational PolynomialReward::k2_for(const Rational& k1) const {
  const Rational half(1, 2);
  return Rational(-1, 2) / (evaluate(r_, half) + k1 * half);
}

Rational PolynomialReward::exact_value(const Rational& eta) const {
  return k2_ * (evaluate(r_, eta) + k1_ * eta);
}

// With d = eta - 1/2 and t = 1/2 + d x:
//   J(eta)  = -1/2 + K2 d^2 int_0^1 (1 - x) (1/4 - d^2 x^2)^n dx
//   J'(eta) =        K2 d   int_0^1          (1/4 - d^2 x^2)^n dx
// Both integrands are nonnegative polynomials of degree <= 2n+1.
double PolynomialReward::value(double eta) const {
  const double d = eta - 0.5;
  const double d2 = d * d;
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double x = nodes_[j];
    sum += weights_[j] * (1.0 - x) * std::pow(0.25 - d2 * x * x, n_);
  }
  return -0.5 + k2_float_ * d2 * sum;
}

double PolynomialReward::derivative(double eta) const {
  const double d = eta - 0.5;
  const double d2 = d * d;
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double x = nodes_[j];
    sum += weights_[j] * std::pow(0.25 - d2 * x * x, n_);
  }
  return k2_float_ * d * sum;
}

MaximalReward PolynomialReward::as_reward() const {
  auto shared = std::make_shared<const PolynomialReward>(*this);
  return {"poly-" + std::to_string(n_), RewardFamily::bound,
          [shared](double eta) { return shared->value(eta); },
          [shared](double eta) { return shared->derivative(eta); }};
}

double eval_poly(const PolynomialReward& poly, double eta) {
  check_probability(eta, "eta");
  return poly.value(eta);
}

}  // namespace refine
