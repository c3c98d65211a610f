#include <doctest.h>

#include <cmath>
#include <vector>

#include "refine/errors.hpp"
#include "refine/quadrature.hpp"

using namespace refine;

TEST_CASE("integrate smooth functions") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("panels handle a kink exactly") {
  const auto f = [](double x) { return std::min(x, 1.0 - x); };
  const std::vector<double> points = {0.0, 0.5, 1.0};
  CHECK(integrate_panels(f, points) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("non-convergence carries the last estimate") {
  const auto f = [](double x) { return std::sin(1.0 / x); };
  try {
    integrate(f, 1e-4, 1.0, QuadratureConfig{1e-14, 6});
    FAIL("expected a numerical error");
  } catch (const NumericalError& e) {
    CHECK(std::isfinite(e.last_estimate()));
  }
}

TEST_CASE("find_crossings") {
  const auto roots = find_crossings([](double x) { return (x - 0.3) * (x + 1.7); }, -3.0, 3.0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-1.7).epsilon(1e-11));
  CHECK(roots[1] == doctest::Approx(0.3).epsilon(1e-11));
  // A root that lands exactly on a sample point.
  const auto on_grid = find_crossings([](double x) { return x; }, -1.0, 1.0);
  REQUIRE(on_grid.size() == 1);
  CHECK(on_grid[0] == 0.0);
  CHECK(find_crossings([](double) { return 1.0; }, 0.0, 1.0).empty());
}
