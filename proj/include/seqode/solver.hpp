#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqode/field.hpp"
#include "seqode/quadrature.hpp"
#include "seqode/space.hpp"

namespace seqode {

/// A fully specified initial value problem instance: the space, the field,
/// the initial datum x_hat, the subsolution x_star (iteration start), the
/// uniform bound C, horizon, truncation depth, grid, and iteration controls.
struct Problem {
  SpaceSpec space;
  Field field;
  CoeffVec x_hat;
  CoeffVec x_star;
  CoeffVec bound_C;
  double T = 1.0;
  std::int64_t N = 1;
  TimeGrid grid;
  double tol_residual = 1e-12;
  int max_iters = 200;
  int max_refines = 0;
  bool override_hypotheses = false;
  std::uint64_t rng_seed = 0;
  std::int64_t hypothesis_trials = 400;

  /// Validates shape invariants and the consistency x_star <= x_hat + T|C|.
  void validate() const;
  /// Enclosure ceiling x_hat + T * |C|.
  CoeffVec ceiling() const;
  /// [x_star, ceiling], the iteration's invariant region.
  OrderInterval enclosure_box() const;
};

enum class SolveStatus { Converged, NotConverged, Refused };

struct ResidualReport {
  std::array<double, 8> per_index{};  // seminorm residuals i = 1..8, max over nodes
  double coord_max = 0.0;             // max |(Phi u - u)_k(t_j)|
};

struct SolveReport {
  Trajectory trajectory;
  SolveStatus status = SolveStatus::NotConverged;
  bool converged = false;
  int iterations = 0;
  int refines = 0;
  ResidualReport residual;
  /// Exact nodewise certificate: every iterate dominated its predecessor.
  bool monotone_certificate = false;
  /// Exact certificate: every iterate stayed in [x_star, x_hat + t|C|].
  bool enclosure_certificate = false;
  std::vector<CheckReport> hypothesis_reports;
  std::vector<std::string> warnings;
  /// Signed increment at the final node (coordinate of largest magnitude),
  /// one entry per iteration; oscillation here is the nonexistence signature.
  std::vector<double> final_node_increments;

  std::string summary() const;
};

class MonotoneViolation : public std::runtime_error {
 public:
  MonotoneViolation(int iteration, std::int64_t node, std::int64_t k)
      : std::runtime_error("monotonicity violated during iteration " +
                           std::to_string(iteration) + " at node " +
                           std::to_string(node) + ", coordinate " + std::to_string(k)),
        iteration(iteration), node(node), coordinate(k) {}
  int iteration;
  std::int64_t node;
  std::int64_t coordinate;
};

/// Monotone fixed-point iteration u^{m+1} = Phi(u^m) from u^0 = x_star.
/// Runs the four hypothesis probes first and refuses (status Refused) when
/// any fails, unless override_hypotheses is set. With a genuinely monotone
/// field the iterate sequence ascends exactly in floating point; any exact
/// decrease without the override raises MonotoneViolation. Convergence means
/// both the iterate increment and the fixed-point residual fell to
/// tol_residual, coordinatewise at every node.
SolveReport solve(const Problem& p);

/// Seminorm residuals of Phi(u) - u sampled at the grid nodes.
ResidualReport residual(const Problem& p, const Trajectory& u);

/// Coordinatewise, nodewise supremum of verified solutions, with its own
/// residual report. Inputs must share the grid ("grid mismatch") and each
/// must have residual coord_max <= tol_residual.
std::pair<Trajectory, ResidualReport> sup_solutions(const Problem& p,
                                                    const std::vector<Trajectory>& sols);

struct WeakDerivativeReport {
  double fraction_ok = 0.0;
  std::int64_t excluded_nodes = 0;
  std::int64_t compared = 0;
};

/// Compares central differences of u against the field along the trajectory
/// at interior nodes; node/coordinate pairs where the field switches within
/// the two adjacent cells are excluded from the comparison.
WeakDerivativeReport weak_derivative_diagnostic(const Problem& p, const Trajectory& u,
                                                double tol);

struct DieudonneReport {
  std::vector<std::int64_t> modes;
  std::vector<double> values_at_T;
  double inf_value = 0.0;
};

/// Integrates the decoupled modes x' = q(x) + 1/(k+1), x(0) = 0 with the
/// oracle and reports x_k(T) per mode and their minimum; the values staying
/// bounded away from zero is what rules out a c0-valued solution.
DieudonneReport dieudonne_diagnostic(double T, const std::vector<std::int64_t>& modes,
                                     std::int64_t fine_M);

}  // namespace seqode
