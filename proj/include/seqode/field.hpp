#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "seqode/space.hpp"

namespace seqode {

/// Piecewise-constant function of time on [0, inf): value(j) holds on
/// [breakpoints[j-1], breakpoints[j]) with breakpoints[-1] := 0 and the last
/// value extending to infinity. Carries its own exact interval integral.
class PiecewiseConstantFn {
 public:
  static PiecewiseConstantFn constant(double v) { return PiecewiseConstantFn({}, {v}); }
  PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values);

  double operator()(double t) const;
  /// Exact integral over [t0, t1].
  double integral(double t0, double t1) const;
  /// Integral of eta |-> step(x + value) over [t0, t1] with step(e) = -1 for
  /// e <= 0, +1 for e > 0; exact per piece.
  double step_integral(double x, double t0, double t1) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// The right-hand side f of the evolution problem, exposed coordinatewise:
/// f(t, x) = sum_k eval_coord(t, x, k) e_k. Rules must be pure. Metadata
/// declares what the hypothesis checkers then probe empirically.
struct Field {
  std::string name;
  std::function<double(double, const CoeffVec&, std::int64_t)> eval_coord;
  std::function<std::vector<std::int64_t>(std::int64_t)> depends_on;
  std::optional<AnchorSeq> declared_bound;
  bool declared_monotone = false;
  bool declared_order_left_continuous = false;
  /// Piecewise-constant in the state argument; left-continuity checks then
  /// demand exact matches instead of a small tolerance.
  bool piecewise_constant_in_x = false;
  /// Exact integral of xi |-> eval_coord(xi, x, k) over [t0, t1] with the
  /// state frozen; defaults to the left-endpoint rule when absent.
  std::function<double(double, double, const CoeffVec&, std::int64_t)> integrate_coord;

  double cell_integral(double t0, double t1, const CoeffVec& x, std::int64_t k) const {
    if (integrate_coord) return integrate_coord(t0, t1, x, k);
    return eval_coord(t0, x, k) * (t1 - t0);
  }
};

/// Index map k -> n(k) selected by name.
struct IndexMap {
  std::string name;
  std::function<std::int64_t(std::int64_t)> map;
  static IndexMap identity();
  static IndexMap half();
  /// Explicit finite list; identity beyond.
  static IndexMap table(std::vector<std::int64_t> entries);
};

struct HeavisideFieldParams {
  int p = 1;
  IndexMap n = IndexMap::identity();
  /// Per-coordinate time offset rho_k.
  std::function<PiecewiseConstantFn(std::int64_t)> rho;
};

/// f_k(t,x) = (k+1)^p * H(x_{n(k)} + rho_k(t)) with H(eta) = -1 for eta <= 0
/// and +1 for eta > 0. The threshold value H(0) = -1 is what makes every
/// coordinate order-left-continuous; tests pin it.
Field heaviside_field(const HeavisideFieldParams& params);

/// Countable system q(x_k) + 1/(k+1) with q(xi) = sqrt(xi) for xi >= 0 and 0
/// below; monotone, but admits no uniform bound C.
Field dieudonne_field();

/// One-coordinate field h(x) = 1 for x <= 1, -1 above; monotonicity fails at
/// the threshold and the integral equation has no continuous solution.
Field scalar_h_field();

/// f identically equal to a constant vector (test and demo plumbing).
Field constant_field(const CoeffVec& c);

struct CheckWitness {
  double t = 0.0;
  std::int64_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string description;
};

struct CheckReport {
  std::string check_name;
  bool ok = false;
  std::optional<CheckWitness> witness;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

/// Monotonicity probe for condition x <= y => f(t,x) <= f(t,y): draws x in
/// the box and y = x + nonnegative perturbation clipped to the box, then
/// compares coordinatewise up to check_depth. Deterministic in rng_seed;
/// failure reports the smallest (trial, k) witness.
CheckReport check_monotone(const Field& f, const OrderInterval& box,
                           const std::vector<double>& t_samples, std::int64_t trials,
                           std::uint64_t rng_seed, std::int64_t check_depth = 32);

/// Uniform-bound probe f_k(t,x) <= C_k on sampled (t, x, k).
CheckReport check_bound(const Field& f, const OrderInterval& box,
                        const CoeffVec& candidate_C,
                        const std::vector<double>& t_samples, std::int64_t trials,
                        std::uint64_t rng_seed, std::int64_t check_depth = 32);

class TimeGrid;  // quadrature.hpp

/// Subsolution probe: x_* <= x_hat + integral_0^t f(xi, x_*) dxi at every
/// grid node, coordinates k < N, with cell-exact quadrature of the
/// constant-in-x integrand.
CheckReport check_subsolution(const Field& f, const CoeffVec& x_star,
                              const CoeffVec& x_hat, const TimeGrid& grid,
                              std::int64_t N);

/// Order-left-continuity probe: builds increasing ladders x(1) << x(2) << ...
/// approaching a target x' geometrically from below and compares field values
/// at the last rung against the target. Exact match required for
/// piecewise-constant fields, 1e-9 otherwise.
CheckReport check_left_continuity(const Field& f, const OrderInterval& box,
                                  const std::vector<double>& t_samples,
                                  std::int64_t trials, std::uint64_t rng_seed,
                                  int ladder_len = 48, std::int64_t check_depth = 32);

}  // namespace seqode
