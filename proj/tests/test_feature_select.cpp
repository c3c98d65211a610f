#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "refine/errors.hpp"
#include "refine/feature_select.hpp"

using namespace refine;

namespace {

DiscreteJoint from_oracle(const oracle::Joint3& j) { return joint_from_table(j.nx, j.nz, j.t); }

// Binary x with P(x, y): x determined by y, equal priors.
DiscreteJoint determined_binary() { return joint_from_table(2, 1, {0.5, 0.0, 0.0, 0.5}); }

}  // namespace

TEST_CASE("kl_divergence") {
  const std::vector<double> p = {0.9, 0.1};
  const std::vector<double> q = {0.5, 0.5};
  CHECK(kl_divergence(p, q) == doctest::Approx(0.9 * std::log(1.8) + 0.1 * std::log(0.2)));
  CHECK(kl_divergence(p, q) == doctest::Approx(0.36806).epsilon(1e-5));
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(std::isinf(kl_divergence(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0})));
  CHECK_THROWS_AS(kl_divergence(p, std::vector<double>{1.0}), ShapeError);
  const GridDensity a(0.0, 1.0, {1.5, 0.5});
  const GridDensity b(0.0, 1.0, {1.0, 1.0});
  CHECK(kl_divergence(a, b) == doctest::Approx(0.5 * (1.5 * std::log(1.5) + 0.5 * std::log(0.5))));
  CHECK_THROWS_AS(kl_divergence(a, GridDensity(0.0, 2.0, {0.5, 0.5})), ShapeError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(5);
    std::vector<double> y(5);
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 0; i < 5; ++i) {
      sx += (x[i] = u(rng));
      sy += (y[i] = u(rng));
    }
    for (int i = 0; i < 5; ++i) {
      x[i] /= sx;
      y[i] /= sy;
    }
    CHECK(kl_divergence(x, y) >= 0.0);
  }
}

TEST_CASE("marginal diversity") {
  CHECK(std::abs(marginal_diversity(joint_from_table(2, 1, {0.2, 0.2, 0.3, 0.3}))) <= 1e-15);
  CHECK(marginal_diversity(determined_binary()) == doctest::Approx(std::log(2.0)));
  const ClassConditionalModel same(GaussianDensity(0, 1), GaussianDensity(0, 1));
  CHECK(std::abs(marginal_diversity(same)) <= 1e-12);
  const double near = marginal_diversity(
      ClassConditionalModel(GaussianDensity(0.1, 1), GaussianDensity(-0.1, 1)));
  const double far = marginal_diversity(
      ClassConditionalModel(GaussianDensity(1.5, 1), GaussianDensity(-1.5, 1)));
  CHECK(near > 0.0);
  CHECK(far > near);
}

TEST_CASE("refinement_feature_score examples") {
  const auto nat = make_reward("log-natural");
  const auto flat = refinement_feature_score(joint_from_table(2, 1, {0.25, 0.25, 0.25, 0.25}), nat);
  CHECK(flat.refinement == doctest::Approx(-std::log(2.0)));
  CHECK(std::abs(flat.md) <= 1e-15);
  REQUIRE(flat.entropy_identity_residual);
  CHECK(std::abs(*flat.entropy_identity_residual) <= 1e-12);

  const auto sharp = refinement_feature_score(determined_binary(), nat, "x");
  CHECK(sharp.feature == "x");
  CHECK(std::abs(sharp.refinement) <= 1e-15);
  CHECK(sharp.md == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(*sharp.entropy_identity_residual) <= 1e-12);

  CHECK_FALSE(refinement_feature_score(determined_binary(), make_reward("ls"))
                  .entropy_identity_residual.has_value());
}

TEST_CASE("continuous model residual") {
  const ClassConditionalModel m(GaussianDensity(1.0, 1.0), GaussianDensity(-0.5, 1.5), 0.4);
  const auto r = refinement_feature_score(m, make_reward("log-natural"));
  REQUIRE(r.entropy_identity_residual);
  CHECK(std::abs(*r.entropy_identity_residual) <= 1e-8);
}

TEST_CASE("entropy identities on random joints") {
  std::mt19937_64 rng(99);
  const auto nat = make_reward("log-natural");
  for (int t = 0; t < 150; ++t) {
    const auto oj = oracle::random_joint(rng, 2 + t % 5, 1 + t % 4);
    const auto j = from_oracle(oj);
    const auto report = refinement_feature_score(j, nat);
    CHECK(std::abs(report.refinement + oracle::conditional_entropy_x(oj)) <= 1e-12);
    CHECK(std::abs(report.refinement -
                   (oracle::mutual_information_x(oj) - oracle::label_entropy(oj))) <= 1e-12);
    CHECK(std::abs(*report.entropy_identity_residual) <= 1e-10);
    CHECK(report.md >= 0.0);
    const double cond = conditional_refinement(j, nat);
    CHECK(std::abs(cond + oracle::conditional_entropy_xz(oj)) <= 1e-12);
    CHECK(cond >= report.refinement - 1e-12);
  }
}

TEST_CASE("conditional refinement examples") {
  const auto nat = make_reward("log-natural");
  // XOR: y = x xor z with uniform cells.
  const auto xor_joint = joint_from_table(2, 2, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0});
  CHECK(std::abs(conditional_refinement(xor_joint, nat)) <= 1e-15);
  // Uninformative x and noise z.
  const auto noise = joint_from_table(2, 2, std::vector<double>(8, 0.125));
  CHECK(conditional_refinement(noise, nat) == doctest::Approx(-std::log(2.0)));
  // z a copy of x.
  const std::vector<double> single = {0.3, 0.1, 0.15, 0.45};
  std::vector<double> dup(8, 0.0);
  dup[(0 * 2 + 0) * 2 + 0] = 0.3;
  dup[(0 * 2 + 0) * 2 + 1] = 0.1;
  dup[(1 * 2 + 1) * 2 + 0] = 0.15;
  dup[(1 * 2 + 1) * 2 + 1] = 0.45;
  CHECK(conditional_refinement(joint_from_table(2, 2, dup), nat) ==
        doctest::Approx(refinement_feature_score(joint_from_table(2, 1, single), nat).refinement));
}

TEST_CASE("non-log rewards give valid scores") {
  const auto xor_joint = joint_from_table(2, 2, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0});
  std::mt19937_64 rng(5);
  for (const char* name : {"ls", "cosh", "sec", "log", "log-cos", "exp", "poly-2", "zero-one"}) {
    CAPTURE(name);
    const auto j = make_reward(name);
    CHECK(std::abs(conditional_refinement(xor_joint, j)) <= 1e-15);
    for (int t = 0; t < 20; ++t) {
      const double s = conditional_refinement(from_oracle(oracle::random_joint(rng, 3, 3)), j);
      CHECK(s <= 0.0);
      CHECK(s >= -0.5 - 5e-5);
    }
  }
}

TEST_CASE("discretize") {
  const auto [cats, size] = discretize(std::vector<double>{0.0, 0.5, 1.0, 0.26}, 4);
  CHECK(size == 4);
  CHECK(cats == std::vector<std::size_t>{0, 2, 3, 1});
  const auto [flat, one] = discretize(std::vector<double>{2.0, 2.0}, 8);
  CHECK(one == 1);
  CHECK(flat == std::vector<std::size_t>{0, 0});
  CHECK_THROWS_AS(discretize(std::vector<double>{1.0}, 0), ParameterError);
}

TEST_CASE("greedy ranking") {
  SUBCASE("single feature") {
    TabularDataset d{{"only"}, {{0, 1, 0, 1}}, {-1, 1, -1, 1}};
    const auto r = greedy_rank(d, make_reward("log-natural"), 1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].name == "only");
    CHECK(std::abs(r[0].score) <= 1e-7);
  }
  SUBCASE("independent features tie and fall back to index order") {
    TabularDataset d{{"a", "b", "c"},
                     {{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 0, 0}},
                     {-1, 1, 1, -1}};
    // Every feature alone leaves y uniform.
    const auto r = greedy_rank(d, make_reward("log-natural"), 1);
    CHECK(r[0].index == 0);
    CHECK(r[0].score == doctest::Approx(-std::log(2.0)).epsilon(1e-7));
  }
  SUBCASE("constant feature is uninformative") {
    TabularDataset d{{"k", "x"}, {{3, 3, 3, 3}, {0, 1, 0, 1}}, {-1, 1, -1, 1}};
    const auto r = greedy_rank(d, make_reward("log-natural"), 2);
    CHECK(r[0].name == "x");
    CHECK(r[1].name == "k");
  }
  SUBCASE("errors") {
    TabularDataset d{{"a"}, {{0, 1}}, {1, -1}};
    CHECK_THROWS_AS(greedy_rank(d, make_reward("ls"), 2), ParameterError);
    TabularDataset bad{{"a"}, {{0, 1, 2}}, {1, -1}};
    CHECK_THROWS_AS(greedy_rank(bad, make_reward("ls"), 1), InputError);
  }
}
