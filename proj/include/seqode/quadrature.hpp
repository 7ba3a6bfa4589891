#pragma once

#include <cstdint>
#include <vector>

#include "seqode/field.hpp"
#include "seqode/space.hpp"

namespace seqode {

/// Strictly increasing nodes t_0 = 0 < t_1 < ... < t_M = T.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> nodes);
  static TimeGrid uniform(double T, std::int64_t M);

  const std::vector<double>& nodes() const { return nodes_; }
  std::int64_t cells() const { return static_cast<std::int64_t>(nodes_.size()) - 1; }
  double horizon() const { return nodes_.back(); }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.nodes_ == b.nodes_;
  }

 private:
  std::vector<double> nodes_;
};

/// Bisect every cell; the node set is a superset of the input's.
TimeGrid refine(const TimeGrid& grid);

/// Coefficients u_k(t_j) on a time grid for k < N, plus a point-valued tail
/// holding coordinates k >= N (frozen throughout; the solver pins them to the
/// subsolution tail).
class Trajectory {
 public:
  Trajectory(TimeGrid grid, std::int64_t n_coords, std::vector<double> values,
             Tail beyond);
  static Trajectory constant(const TimeGrid& grid, std::int64_t n_coords,
                             const CoeffVec& x);

  const TimeGrid& grid() const { return grid_; }
  std::int64_t n_coords() const { return n_; }
  std::int64_t n_nodes() const { return static_cast<std::int64_t>(grid_.nodes().size()); }
  const Tail& beyond() const { return beyond_; }

  double value(std::int64_t node, std::int64_t k) const {
    return values_[static_cast<std::size_t>(node * n_ + k)];
  }
  double& value(std::int64_t node, std::int64_t k) {
    return values_[static_cast<std::size_t>(node * n_ + k)];
  }
  const std::vector<double>& raw() const { return values_; }

  /// The state at a node as a coefficient vector (prefix = stored row,
  /// tail = the frozen beyond-tail).
  CoeffVec at_node(std::int64_t node) const;

  /// Left-constant extension onto a refinement of this grid.
  Trajectory extended_to(const TimeGrid& fine) const;

 private:
  TimeGrid grid_;
  std::int64_t n_;
  std::vector<double> values_;
  Tail beyond_;
};

/// The integral operator u |-> x_hat + integral_0^t f(xi, u(xi)) dxi at grid
/// level. Per cell [t_l, t_{l+1}] the state is frozen at the left endpoint,
/// which keeps the discrete operator exactly order-monotone; the time
/// dependence inside a cell is integrated exactly when the field supports it.
Trajectory phi_apply(const Field& f, const CoeffVec& x_hat, const Trajectory& u);

/// Finitely-valued function on a partition of [0, T]: value j holds on
/// [breakpoints[j], breakpoints[j+1]).
struct StepFn {
  std::vector<double> breakpoints;  // 0 = b_0 < b_1 < ... < b_m = T
  std::vector<CoeffVec> cell_values;

  StepFn(std::vector<double> breakpoints_, std::vector<CoeffVec> cell_values_);
  std::int64_t cells() const { return static_cast<std::int64_t>(cell_values.size()); }
  double cell_length(std::int64_t c) const {
    return breakpoints[static_cast<std::size_t>(c + 1)] -
           breakpoints[static_cast<std::size_t>(c)];
  }
};

/// sum over cells of value * (cell length), coefficientwise.
CoeffVec step_integral(const StepFn& s);

/// alpha*s + beta*r on the common refinement of the two partitions.
StepFn step_combine(double alpha, const StepFn& s, double beta, const StepFn& r);

struct DominatedConvergenceReport {
  bool ok = false;
  bool gaps_decreasing = false;
  bool dominated = false;
  /// gaps[n][i-1] = ||integral(s_n) - integral(limit)||_i.
  std::vector<std::vector<double>> gaps;
  std::string detail;
};

/// Grid-level dominated-convergence harness: checks that the integral gaps
/// ||int s_n - int limit||_i shrink along the sequence and that every s_n is
/// dominated, ||s_n(t)||_i <= dominator[i-1] pointwise per cell. A test
/// harness, not a theorem prover.
DominatedConvergenceReport dominated_convergence_check(
    const std::vector<StepFn>& s_seq, const StepFn& limit,
    const std::vector<double>& dominators, const SpaceSpec& spec,
    double tolerance = 1e-9);

}  // namespace seqode
