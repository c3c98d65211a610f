#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <vector>

#include "refine/reward.hpp"

namespace refine {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultMaxPolyOrder = 32;

// Polynomial maximal reward J(eta) = K2 (R(eta) + K1 eta) with
// J''(eta) = K2 (eta (1 - eta))^n. Q is the term-wise antiderivative of
// (eta (1 - eta))^n, R the antiderivative of Q (both with zero constant),
// K1 = -Q(1/2) gives J'(1/2) = 0 and K2 scales J(1/2) to -1/2.
//
// All constants are exact. Floating evaluation goes through a positive
// integral representation instead of the monomial coefficients, which
// alternate in sign and cancel badly for large n.
class PolynomialReward {
 public:
  int order() const noexcept { return n_; }

  // Monomial coefficients of R, index = power.
  const std::vector<Rational>& coefficients() const noexcept { return r_; }
  // Monomial coefficients of Q, index = power.
  const std::vector<Rational>& q_coefficients() const noexcept { return q_; }
  const Rational& k1() const noexcept { return k1_; }
  const Rational& k2() const noexcept { return k2_; }

  // K2 recomputed from a caller-supplied K1 (e.g. a rounded one).
  Rational k2_for(const Rational& k1) const;

  // Exact J at a rational point.
  Rational exact_value(const Rational& eta) const;

  double value(double eta) const;
  double derivative(double eta) const;

  // Bound-family view registered as "poly-<n>".
  MaximalReward as_reward() const;

 private:
  friend PolynomialReward build_poly_reward(int n, int max_order);

  int n_ = 0;
  std::vector<Rational> q_;
  std::vector<Rational> r_;
  Rational k1_;
  Rational k2_;
  double k2_float_ = 0.0;
  // Gauss-Legendre nodes/weights on [0,1], exact for degree 2n+3.
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Throws ParameterError for odd or negative n, CapacityError for n > max_order.
PolynomialReward build_poly_reward(int n, int max_order = kDefaultMaxPolyOrder);

// Throws DomainError outside [0,1].
double eval_poly(const PolynomialReward& poly, double eta);

Rational evaluate(const std::vector<Rational>& coefficients, const Rational& x);

}  // namespace refine
