#include <cmath>
#include <limits>

#include "doctest.h"
#include "seqode/oracle.hpp"

using namespace seqode;

TEST_SUITE("oracle") {

TEST_CASE("positive offset keeps the slope positive") {
  const auto sol = scalar_heaviside_solve(2.0, PiecewiseConstantFn::constant(1.0), 0.0, 1.0);
  CHECK(sol.switch_times.empty());
  CHECK(sol.eval(0.0) == 0.0);
  CHECK(sol.eval(0.5) == 1.0);
  CHECK(sol.eval(1.0) == 2.0);
}

TEST_CASE("threshold start goes downward: H(0) = -1") {
  const auto sol = scalar_heaviside_solve(3.0, PiecewiseConstantFn::constant(0.0), 0.0, 1.0);
  CHECK(sol.switch_times.empty());
  CHECK(sol.eval(1.0) == -3.0);
  CHECK(sol.eval(0.25) == -0.75);
}

TEST_CASE("two-piece offset produces one switch") {
  const PiecewiseConstantFn rho({0.5}, {1.0, -10.0});
  const auto sol = scalar_heaviside_solve(1.0, rho, 0.0, 1.0);
  REQUIRE(sol.switch_times.size() == 1);
  CHECK(sol.switch_times[0] == 0.5);
  CHECK(sol.eval(0.25) == 0.25);           // u = t while u + 1 > 0
  CHECK(sol.eval(0.5) == 0.5);
  CHECK(sol.eval(0.75) == doctest::Approx(0.25));  // u = 0.5 - (t - 0.5)
  CHECK(sol.eval(1.0) == doctest::Approx(0.0));
}

TEST_CASE("event count never exceeds the number of rho breakpoints") {
  const PiecewiseConstantFn rho({0.25, 0.5, 0.75}, {1.0, -5.0, 1.0, -5.0});
  for (double u0 : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    const auto sol = scalar_heaviside_solve(1.5, rho, u0, 1.0);
    CHECK(sol.switch_times.size() <= rho.breakpoints().size());
    // Segments are contiguous and continuous across joins.
    for (std::size_t s = 1; s < sol.segments.size(); ++s) {
      CHECK(sol.segments[s].t0 == sol.segments[s - 1].t1);
      CHECK(sol.segments[s].u0 ==
            doctest::Approx(sol.segments[s - 1].eval(sol.segments[s - 1].t1)));
    }
  }
}

TEST_CASE("dieudonne mode values") {
  CHECK(dieudonne_mode_solve(5, 0.0, 100000) == 0.0);
  // Mode 0: forcing 1 dominates; crude sandwich x' in [1, sqrt(x) + 1]
  // gives x(1) in [1, 2.3].
  const double x0 = dieudonne_mode_solve(0, 1.0, 100000);
  CHECK(x0 >= 1.0);
  CHECK(x0 <= 2.3);
  // Comparison principle: d/dt sqrt(x) >= 1/2 once positive, so
  // x_k(1) >= 1/4 up to integration error for every k.
  for (std::int64_t k : {0, 9, 99, 999, 9999})
    CHECK(dieudonne_mode_solve(k, 1.0, 100000) >= 0.249);
  // T = 2, mode 0: lower bound (T/2)^2 = 1.
  CHECK(dieudonne_mode_solve(0, 2.0, 100000) >= 1.0);
}

TEST_CASE("dieudonne mode is monotone in T and antitone in k") {
  double prev = 0.0;
  for (double T : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const double v = dieudonne_mode_solve(7, T, 50000);
    CHECK(v >= prev);
    prev = v;
  }
  double prev_k = std::numeric_limits<double>::infinity();
  for (std::int64_t k : {0, 1, 3, 9, 31, 99}) {
    const double v = dieudonne_mode_solve(k, 1.0, 50000);
    CHECK(v <= prev_k);
    prev_k = v;
  }
}

}  // TEST_SUITE
