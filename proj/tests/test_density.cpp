#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "refine/density.hpp"
#include "refine/errors.hpp"
#include "refine/quadrature.hpp"

using namespace refine;

TEST_CASE("gaussian posterior and marginal") {
  const ClassConditionalModel m(GaussianDensity(1.5, 1.0), GaussianDensity(-1.5, 1.0));
  CHECK(posterior(m, 0.0) == doctest::Approx(0.5));
  CHECK(posterior(m, 1.5) == doctest::Approx(1.0 / (1.0 + std::exp(-4.5))).epsilon(1e-13));
  CHECK(posterior(m, 1.5) == doctest::Approx(0.9891).epsilon(1e-4));
  CHECK(marginal(m, 0.0) == doctest::Approx(oracle::normal_pdf(1.5)).epsilon(1e-14));
  CHECK(marginal(m, 0.0) == doctest::Approx(0.12952).epsilon(1e-4));
}

TEST_CASE("identical conditionals") {
  const ClassConditionalModel m(GaussianDensity(0.3, 2.0), GaussianDensity(0.3, 2.0));
  for (double x : {-5.0, 0.0, 0.3, 7.0}) {
    CHECK(posterior(m, x) == doctest::Approx(0.5));
    CHECK(marginal(m, x) == doctest::Approx(oracle::normal_pdf(x, 0.3, 2.0)));
  }
}

TEST_CASE("histogram pair mixes piecewise constant") {
  const GridDensity a(0.0, 2.0, {0.75, 0.25});
  const GridDensity b(0.0, 2.0, {0.25, 0.75});
  const ClassConditionalModel m(a, b, 0.25);
  CHECK(marginal(m, 0.5) == doctest::Approx(0.25 * 0.75 + 0.75 * 0.25));
  CHECK(marginal(m, 1.5) == doctest::Approx(0.25 * 0.25 + 0.75 * 0.75));
  CHECK(posterior(m, 0.5) == doctest::Approx(0.5));
  CHECK(marginal(m, 3.0) == 0.0);
  // Both densities vanish: the floor rule returns the prior.
  CHECK(posterior(m, 3.0) == doctest::Approx(0.25));
}

TEST_CASE("posterior is a probability and swaps with the classes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> pu(0.05, 0.95);
  for (int t = 0; t < 50; ++t) {
    const ClassConditionalModel m(GaussianDensity(u(rng), 0.5 + std::abs(u(rng))),
                                  GaussianDensity(u(rng), 0.5 + std::abs(u(rng))), pu(rng));
    const auto s = m.swapped();
    for (double x = -12.0; x <= 12.0; x += 0.37) {
      const double p = posterior(m, x);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(std::abs(p + posterior(s, x) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("marginal integrates to one") {
  for (double mu : {0.1, 1.5, 4.0}) {
    const ClassConditionalModel m(GaussianDensity(mu, 1.0), GaussianDensity(-mu, 1.0));
    const double total = integrate([&](double x) { return marginal(m, x); }, -mu - 8.0, mu + 8.0);
    CHECK(std::abs(total - 1.0) <= 1e-6);
  }
}

TEST_CASE("posterior is monotone for monotone likelihood ratio") {
  const ClassConditionalModel m(GaussianDensity(1.0, 1.0), GaussianDensity(-1.0, 1.0), 0.3);
  double prev = -1.0;
  for (double x = -8.0; x <= 8.0; x += 0.01) {
    const double p = posterior(m, x);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("grid density validation") {
  CHECK_THROWS_AS(GridDensity(0.0, 1.0, {0.5, 0.5}), ParameterError);
  CHECK_THROWS_AS(GridDensity(1.0, 0.0, {1.0}), ParameterError);
  CHECK_THROWS_AS(GridDensity(0.0, 1.0, {}), ParameterError);
  CHECK_THROWS_AS(GridDensity(0.0, 1.0, {2.5, -0.5}), ParameterError);
  CHECK_NOTHROW(GridDensity(0.0, 1.0, {1.5, 0.5}));
  CHECK_THROWS_AS(GaussianDensity(0.0, 0.0), ParameterError);
  CHECK_THROWS_AS(ClassConditionalModel(GaussianDensity(0, 1), GaussianDensity(0, 1), 1.0),
                  ParameterError);
  const GridDensity g(-1.0, 1.0, {0.2, 0.8});
  CHECK(g.bin_center(0) == doctest::Approx(-0.5));
  CHECK(g.bin_of(1.0) == 1);
  CHECK(g.bin_of(-7.0) == 0);
}

TEST_CASE("histogram_from_samples") {
  SUBCASE("all samples at the midpoint, one bin") {
    const std::vector<double> s(5, 1.5);
    const auto h = histogram_from_samples(s, 1, 1.0, 2.0);
    CHECK(h.mass()[0] == doctest::Approx(1.0));
    const auto h2 = histogram_from_samples(std::vector<double>{3.0}, 1, 1.0, 5.0);
    CHECK(h2.mass()[0] == doctest::Approx(0.25));
  }
  SUBCASE("uniform draws") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(1000);
    for (double& v : s) v = u(rng);
    const auto h = histogram_from_samples(s, 10, 0.0, 1.0);
    // Binomial(1000, 0.1): sd of a bin density is sqrt(90)/100.
    const double five_sigma = 5.0 * std::sqrt(90.0) / 100.0;
    double total = 0.0;
    for (double m : h.mass()) {
      CHECK(std::abs(m - 1.0) <= five_sigma);
      total += m * h.bin_width();
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("edge rule and clamping") {
    const std::vector<double> s = {1.0, -3.0, 0.2, 9.0};
    const auto h = histogram_from_samples(s, 4, 0.0, 1.0);
    CHECK(h.mass()[3] == doctest::Approx(2.0 * 4.0 / 4.0));
    CHECK(h.mass()[0] == doctest::Approx(2.0 * 4.0 / 4.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(histogram_from_samples(std::vector<double>{5.0}, 3, 0.0, 1.0),
                    EstimationError);
    CHECK_THROWS_AS(histogram_from_samples(std::vector<double>{}, 3, 0.0, 1.0), EstimationError);
    CHECK_THROWS_AS(histogram_from_samples(std::vector<double>{0.5}, 0, 0.0, 1.0),
                    ParameterError);
  }
}

TEST_CASE("discrete joints") {
  SUBCASE("xor rows") {
    const std::vector<JointRow> rows = {{0, 0, -1}, {0, 1, 1}, {1, 0, 1}, {1, 1, -1}};
    const auto j = joint_from_samples(rows);
    CHECK(j.nx() == 2);
    CHECK(j.nz() == 2);
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t z = 0; z < 2; ++z) {
        CHECK(j.cell_mass(x, z) == doctest::Approx(0.25));
        const double eta = j.cell_posterior(x, z);
        CHECK(std::min(eta, 1.0 - eta) <= 1e-8);
      }
    }
    CHECK(j.prior() == doctest::Approx(0.5));
  }
  SUBCASE("single repeated row") {
    const std::vector<JointRow> rows(10, JointRow{1, 0, 1});
    const auto j = joint_from_samples(rows, 2, 1);
    CHECK(j.p(1, 0, 1) == doctest::Approx(1.0 - 3e-9).epsilon(1e-12));
    CHECK(j.p(0, 0, -1) == doctest::Approx(1e-9).epsilon(1e-6));
  }
  SUBCASE("table passthrough normalizes") {
    const auto j = joint_from_table(1, 2, {1.0, 1.0, 2.0, 4.0});
    double total = 0.0;
    for (double v : j.table()) total += v;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(j.p(0, 1, 1) == doctest::Approx(0.5));
    CHECK(j.marginal_z().p(1, 0, -1) == doctest::Approx(0.25));
    CHECK(j.marginal_x().p(0, 0, 1) == doctest::Approx(5.0 / 8.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(joint_from_samples(std::vector<JointRow>{}), EstimationError);
    CHECK_THROWS_AS(joint_from_samples(std::vector<JointRow>{{0, 0, 0}}), InputError);
    CHECK_THROWS_AS(joint_from_table(2, 2, {1.0, 2.0}), ShapeError);
    CHECK_THROWS_AS(joint_from_table(1, 1, {1.0, -1.0}), ParameterError);
  }
}
