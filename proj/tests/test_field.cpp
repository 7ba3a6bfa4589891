#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>

#include "doctest.h"
#include "seqode/field.hpp"
#include "seqode/quadrature.hpp"

using namespace seqode;

namespace {

HeavisideFieldParams basic_params(int p = 1) {
  return {p, IndexMap::identity(),
          [](std::int64_t) { return PiecewiseConstantFn::constant(1.0); }};
}

OrderInterval unit_box(double lo, double hi, int n = 8) {
  return OrderInterval(CoeffVec(std::vector<double>(n, lo)),
                       CoeffVec(std::vector<double>(n, hi)));
}

std::uint64_t hash_doubles(const std::vector<double>& vals) {
  // FNV-1a over the byte representation.
  std::uint64_t h = 1469598103934665603ull;
  for (double v : vals) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("heaviside field values") {
  const Field f = heaviside_field(basic_params());
  const CoeffVec zero = CoeffVec::zero();
  // H(0 + 1) = 1 at every coordinate.
  for (std::int64_t k = 0; k < 8; ++k)
    CHECK(f.eval_coord(0.3, zero, k) == double(k + 1));

  // rho = 0 hits the threshold: H(0) = -1.
  const Field f0 = heaviside_field(
      {1, IndexMap::identity(), [](std::int64_t) { return PiecewiseConstantFn::constant(0.0); }});
  for (std::int64_t k = 0; k < 8; ++k)
    CHECK(f0.eval_coord(0.0, zero, k) == -double(k + 1));

  const Field fh = heaviside_field(
      {2, IndexMap::half(), [](std::int64_t) { return PiecewiseConstantFn::constant(1.0); }});
  CHECK(fh.eval_coord(0.0, zero, 5) == 36.0);  // 6^2 * H(x_2 + 1)
}

TEST_CASE("heaviside threshold value is pinned: H(0) = -1") {
  const Field f = heaviside_field(basic_params());
  const CoeffVec at_threshold({-1.0});  // x_0 + rho = 0
  CHECK(f.eval_coord(0.0, at_threshold, 0) == -1.0);
  const CoeffVec above({std::nextafter(-1.0, 0.0)});
  CHECK(f.eval_coord(0.0, above, 0) == 1.0);
}

TEST_CASE("dieudonne field values") {
  const Field f = dieudonne_field();
  CHECK(f.eval_coord(0.0, CoeffVec({4.0}), 0) == 3.0);       // sqrt(4) + 1
  CHECK(f.eval_coord(0.0, CoeffVec({-1.0}), 0) == 1.0);      // q(-1) = 0
  CHECK(f.eval_coord(0.0, CoeffVec::zero(), 9) == doctest::Approx(0.1));
}

TEST_CASE("scalar-h field values") {
  const Field f = scalar_h_field();
  CHECK(f.eval_coord(0.0, CoeffVec({1.0}), 0) == 1.0);
  CHECK(f.eval_coord(0.0, CoeffVec({1.5}), 0) == -1.0);
  CHECK(f.eval_coord(0.0, CoeffVec({-7.0}), 0) == 1.0);
  CHECK_FALSE(f.declared_monotone);
}

TEST_CASE("piecewise rho evaluation and exact integrals") {
  const PiecewiseConstantFn rho({0.5}, {1.0, -10.0});
  CHECK(rho(0.0) == 1.0);
  CHECK(rho(0.49) == 1.0);
  CHECK(rho(0.5) == -10.0);
  CHECK(rho.integral(0.0, 1.0) == doctest::Approx(0.5 - 5.0));
  // step integral of H(x + rho) with x = 0: +1 on [0,0.5), -1 after.
  CHECK(rho.step_integral(0.0, 0.0, 1.0) == doctest::Approx(0.0));
  CHECK(rho.step_integral(0.0, 0.25, 0.75) == doctest::Approx(0.0));
  CHECK(rho.step_integral(0.0, 0.0, 0.5) == 0.5);
}

TEST_CASE("check_monotone finds the scalar-h witness") {
  const Field f = scalar_h_field();
  const auto box = unit_box(0.0, 2.0, 1);
  const auto rep = check_monotone(f, box, {0.0, 0.5, 1.0}, 1000, 7, 1);
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->k == 0);
  CHECK(rep.witness->lhs == 1.0);
  CHECK(rep.witness->rhs == -1.0);
}

TEST_CASE("check_monotone passes for heaviside and dieudonne") {
  const Field f = heaviside_field(basic_params());
  const OrderInterval box(
      CoeffVec::from_anchor(AnchorSeq::poly(-1.0, 1)),
      CoeffVec::from_anchor(AnchorSeq::poly(2.0, 1)));
  CHECK(check_monotone(f, box, {0.0, 0.5, 1.0}, 1000, 3, 16).ok);

  const Field d = dieudonne_field();
  const auto dbox = unit_box(-1.0, 4.0, 8);
  CHECK(check_monotone(d, dbox, {0.0, 1.0}, 1000, 3, 8).ok);
}

TEST_CASE("heaviside monotonicity is exact over the sign configurations") {
  const Field f = heaviside_field(basic_params());
  // x <= y coordinatewise in the three eta configurations: both below the
  // threshold, straddling it, both above.
  const CoeffVec below({-3.0}), at({-1.0}), above({0.5});
  CHECK(f.eval_coord(0.0, below, 0) <= f.eval_coord(0.0, at, 0));
  CHECK(f.eval_coord(0.0, at, 0) <= f.eval_coord(0.0, above, 0));
  CHECK(f.eval_coord(0.0, below, 0) <= f.eval_coord(0.0, above, 0));
}

TEST_CASE("check_bound examples") {
  const Field f = heaviside_field(basic_params());
  const OrderInterval box(CoeffVec::from_anchor(AnchorSeq::poly(-1.0, 1)),
                          CoeffVec::from_anchor(AnchorSeq::poly(2.0, 1)));
  CHECK(check_bound(f, box, CoeffVec::from_anchor(AnchorSeq::poly(1.0, 1)),
                    {0.0, 1.0}, 500, 5, 16)
            .ok);
  // C_k = k leaves no room at k = 0 where f_0 can be +1.
  const auto bad = check_bound(
      f, box, CoeffVec::from_anchor(AnchorSeq::custom(
                  [](std::int64_t k) { return double(k); }, Sign::Nonneg, 1.0, 1, "k")),
      {0.0, 1.0}, 500, 5, 16);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->k == 0);

  const Field d = dieudonne_field();
  const auto dbox = unit_box(0.0, 200.0, 4);
  const auto drep = check_bound(d, dbox, CoeffVec::from_anchor(AnchorSeq::constant(10.0)),
                                {0.0, 1.0}, 500, 5, 4);
  CHECK_FALSE(drep.ok);  // sqrt(200) + 1 > 10
}

TEST_CASE("check_subsolution examples") {
  const Field f = heaviside_field(basic_params());
  const TimeGrid grid = TimeGrid::uniform(1.0, 64);
  // x_*k = -(k+1): f(., x_*) >= -(k+1) so the integral stays above x_*.
  CHECK(check_subsolution(f, CoeffVec::from_anchor(AnchorSeq::poly(-1.0, 1)),
                          CoeffVec::zero(), grid, 8)
            .ok);
  // x_* = x_hat = 0 with rho = 1: f(., 0) = k+1 >= 0.
  CHECK(check_subsolution(f, CoeffVec::zero(), CoeffVec::zero(), grid, 8).ok);
  // A strictly positive x_* above x_hat fails at t = 0.
  const auto bad =
      check_subsolution(constant_field(CoeffVec::zero()), CoeffVec({0.5}),
                        CoeffVec::zero(), grid, 1);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness.has_value());
}

TEST_CASE("check_left_continuity on the built-in fields") {
  const Field f = heaviside_field(basic_params());
  const OrderInterval box(CoeffVec::from_anchor(AnchorSeq::poly(-1.0, 1)),
                          CoeffVec::from_anchor(AnchorSeq::poly(2.0, 1)));
  CHECK(check_left_continuity(f, box, {0.0, 0.5, 1.0}, 400, 9, 48, 8).ok);

  const Field d = dieudonne_field();
  const auto dbox = unit_box(-1.0, 4.0, 8);
  CHECK(check_left_continuity(d, dbox, {0.0, 1.0}, 400, 9, 48, 8).ok);
}

TEST_CASE("ladders approaching a heaviside threshold from below stay matched") {
  // Target with eta = x_0 + 1 = 0 exactly; every rung below has eta < 0 and
  // the limit value matches H(0) = -1.
  const Field f = heaviside_field(basic_params());
  const OrderInterval box(CoeffVec({-2.0}), CoeffVec({-1.0}));
  CHECK(check_left_continuity(f, box, {0.0}, 200, 21, 48, 1).ok);
}

TEST_CASE("a right-continuous step field fails the ladder check") {
  // Fixture: H'(eta) = +1 for eta >= 0, -1 below -- right continuous.
  Field f;
  f.name = "right-continuous-step";
  f.eval_coord = [](double, const CoeffVec& x, std::int64_t k) {
    return x.coord(k) >= 0.0 ? 1.0 : -1.0;
  };
  f.depends_on = [](std::int64_t k) { return std::vector<std::int64_t>{k}; };
  f.piecewise_constant_in_x = true;
  // Box whose ceiling sits exactly at the threshold: ladders approach 0 from
  // below, values stay -1, but f(0) = +1.
  const OrderInterval box(CoeffVec({-1.0}), CoeffVec({0.0}));
  const auto rep = check_left_continuity(f, box, {0.0}, 400, 23, 48, 1);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("field evaluation is pure (hash regression)") {
  const Field f = heaviside_field(basic_params(2));
  auto sweep = [&] {
    std::vector<double> out;
    for (int rep = 0; rep < 3; ++rep)
      for (std::int64_t k = 0; k < 16; ++k)
        for (double t : {0.0, 0.25, 0.75})
          out.push_back(f.eval_coord(t, CoeffVec({0.1, -0.4, 2.0}), k));
    return hash_doubles(out);
  };
  CHECK(sweep() == sweep());
}

TEST_CASE("dependency honesty: untracked coordinates never matter") {
  const Field f = heaviside_field(
      {1, IndexMap::half(), [](std::int64_t) { return PiecewiseConstantFn::constant(1.0); }});
  std::vector<double> base(8, 0.25);
  for (std::int64_t k = 0; k < 8; ++k) {
    const auto deps = f.depends_on(k);
    for (std::int64_t other = 0; other < 8; ++other) {
      if (std::find(deps.begin(), deps.end(), other) != deps.end()) continue;
      std::vector<double> perturbed = base;
      perturbed[static_cast<std::size_t>(other)] += 17.5;
      CHECK(f.eval_coord(0.0, CoeffVec(base), k) ==
            f.eval_coord(0.0, CoeffVec(perturbed), k));
    }
  }
}

TEST_CASE("check reports are deterministic in the seed") {
  const Field f = heaviside_field(basic_params());
  const OrderInterval box(CoeffVec::from_anchor(AnchorSeq::poly(-1.0, 1)),
                          CoeffVec::from_anchor(AnchorSeq::poly(2.0, 1)));
  const auto a = check_monotone(f, box, {0.0, 1.0}, 100, 77, 8);
  const auto b = check_monotone(f, box, {0.0, 1.0}, 100, 77, 8);
  CHECK(a.ok == b.ok);
  CHECK(a.detail == b.detail);
}

TEST_CASE("index map table is identity beyond its entries") {
  const IndexMap n = IndexMap::table({1, 2, 3});
  CHECK(n.map(0) == 1);
  CHECK(n.map(2) == 3);
  CHECK(n.map(3) == 3);
  CHECK(n.map(10) == 10);
}

}  // TEST_SUITE
