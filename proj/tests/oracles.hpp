#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_pdf(double x, double mu = 0.0, double sigma = 1.0) {
  const double z = (x - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

// Bayes error of N(mu,1) vs N(-mu,1) with equal priors.
inline double gaussian_bayes_error(double mu) { return normal_cdf(-std::abs(mu)); }

// Half the Bhattacharyya coefficient of two unit-variance Gaussians.
inline double half_bhattacharyya(double delta_mu) {
  return 0.5 * std::exp(-delta_mu * delta_mu / 8.0);
}

inline double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

inline double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

// table[(x * nz + z) * 2 + (y == +1)], entries sum to one.
struct Joint3 {
  std::size_t nx;
  std::size_t nz;
  std::vector<double> t;

  double at(std::size_t x, std::size_t z, int pos) const { return t[(x * nz + z) * 2 + pos]; }
};

// H(y | x, z) straight from the definition.
inline double conditional_entropy_xz(const Joint3& j) {
  double h = 0.0;
  for (std::size_t x = 0; x < j.nx; ++x) {
    for (std::size_t z = 0; z < j.nz; ++z) {
      const double p1 = j.at(x, z, 1);
      const double p0 = j.at(x, z, 0);
      const double m = p0 + p1;
      if (m > 0.0) h -= xlogx(p1) + xlogx(p0) - xlogx(m);
    }
  }
  return h;
}

// H(y | x), summing z out.
inline double conditional_entropy_x(const Joint3& j) {
  double h = 0.0;
  for (std::size_t x = 0; x < j.nx; ++x) {
    double p0 = 0.0;
    double p1 = 0.0;
    for (std::size_t z = 0; z < j.nz; ++z) {
      p0 += j.at(x, z, 0);
      p1 += j.at(x, z, 1);
    }
    h -= xlogx(p1) + xlogx(p0) - xlogx(p0 + p1);
  }
  return h;
}

inline double label_entropy(const Joint3& j) {
  double p1 = 0.0;
  for (std::size_t i = 1; i < j.t.size(); i += 2) p1 += j.t[i];
  return binary_entropy(p1);
}

// I(x; y) = sum p(x,y) ln(p(x,y) / (p(x) p(y))).
inline double mutual_information_x(const Joint3& j) {
  std::vector<double> px(j.nx, 0.0);
  std::vector<double> pxy(j.nx * 2, 0.0);
  double py1 = 0.0;
  for (std::size_t x = 0; x < j.nx; ++x) {
    for (std::size_t z = 0; z < j.nz; ++z) {
      for (int y = 0; y < 2; ++y) {
        pxy[x * 2 + y] += j.at(x, z, y);
        px[x] += j.at(x, z, y);
        if (y == 1) py1 += j.at(x, z, y);
      }
    }
  }
  double mi = 0.0;
  for (std::size_t x = 0; x < j.nx; ++x) {
    for (int y = 0; y < 2; ++y) {
      const double p = pxy[x * 2 + y];
      const double py = y == 1 ? py1 : 1.0 - py1;
      if (p > 0.0) mi += p * std::log(p / (px[x] * py));
    }
  }
  return mi;
}

// Strictly positive random joint.
inline Joint3 random_joint(std::mt19937_64& rng, std::size_t nx, std::size_t nz) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Joint3 j{nx, nz, std::vector<double>(nx * nz * 2)};
  double total = 0.0;
  for (double& v : j.t) total += (v = u(rng));
  for (double& v : j.t) v /= total;
  return j;
}

}  // namespace oracle
