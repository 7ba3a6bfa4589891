#include "seqode/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqode {

// ---------------------------------------------------------------------------
// TimeGrid

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw std::invalid_argument("grid needs at least one cell");
  if (nodes_.front() != 0.0) throw std::invalid_argument("grid must start at t = 0");
  for (std::size_t j = 0; j + 1 < nodes_.size(); ++j)
    if (!(nodes_[j] < nodes_[j + 1]))
      throw std::invalid_argument("grid nodes must be strictly increasing");
  for (double t : nodes_)
    if (!std::isfinite(t)) throw std::invalid_argument("grid nodes must be finite");
}

TimeGrid TimeGrid::uniform(double T, std::int64_t M) {
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  std::vector<double> nodes(static_cast<std::size_t>(M) + 1);
  for (std::int64_t j = 0; j <= M; ++j)
    nodes[static_cast<std::size_t>(j)] =
        static_cast<double>(j) * T / static_cast<double>(M);
  nodes.back() = T;
  return TimeGrid(std::move(nodes));
}

TimeGrid refine(const TimeGrid& grid) {
  const auto& n = grid.nodes();
  std::vector<double> out;
  out.reserve(2 * n.size() - 1);
  for (std::size_t j = 0; j + 1 < n.size(); ++j) {
    out.push_back(n[j]);
    out.push_back(0.5 * (n[j] + n[j + 1]));
  }
  out.push_back(n.back());
  return TimeGrid(std::move(out));
}

// ---------------------------------------------------------------------------
// Trajectory

Trajectory::Trajectory(TimeGrid grid, std::int64_t n_coords, std::vector<double> values,
                       Tail beyond)
    : grid_(std::move(grid)), n_(n_coords), values_(std::move(values)),
      beyond_(std::move(beyond)) {
  if (n_ < 1) throw std::invalid_argument("trajectory needs at least one coordinate");
  const std::size_t expect =
      grid_.nodes().size() * static_cast<std::size_t>(n_);
  if (values_.size() != expect)
    throw std::invalid_argument("trajectory value matrix has wrong shape");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("trajectory values must be finite");
}

Trajectory Trajectory::constant(const TimeGrid& grid, std::int64_t n_coords,
                                const CoeffVec& x) {
  if (x.prefix_len() > n_coords)
    throw std::invalid_argument("constant trajectory: prefix longer than truncation");
  std::vector<double> values(grid.nodes().size() * static_cast<std::size_t>(n_coords));
  for (std::size_t j = 0; j < grid.nodes().size(); ++j)
    for (std::int64_t k = 0; k < n_coords; ++k)
      values[j * static_cast<std::size_t>(n_coords) + static_cast<std::size_t>(k)] =
          x.coord(k);
  return Trajectory(grid, n_coords, std::move(values), x.tail());
}

CoeffVec Trajectory::at_node(std::int64_t node) const {
  std::vector<double> row(static_cast<std::size_t>(n_));
  for (std::int64_t k = 0; k < n_; ++k) row[static_cast<std::size_t>(k)] = value(node, k);
  return CoeffVec(std::move(row), beyond_);
}

Trajectory Trajectory::extended_to(const TimeGrid& fine) const {
  const auto& coarse = grid_.nodes();
  const auto& target = fine.nodes();
  std::vector<double> values(target.size() * static_cast<std::size_t>(n_));
  std::size_t src = 0;
  for (std::size_t j = 0; j < target.size(); ++j) {
    while (src + 1 < coarse.size() && coarse[src + 1] <= target[j]) ++src;
    for (std::int64_t k = 0; k < n_; ++k)
      values[j * static_cast<std::size_t>(n_) + static_cast<std::size_t>(k)] =
          value(static_cast<std::int64_t>(src), k);
  }
  return Trajectory(fine, n_, std::move(values), beyond_);
}

// ---------------------------------------------------------------------------
// Phi

Trajectory phi_apply(const Field& f, const CoeffVec& x_hat, const Trajectory& u) {
  const auto& nodes = u.grid().nodes();
  const std::int64_t n = u.n_coords();
  std::vector<double> values(nodes.size() * static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    values[static_cast<std::size_t>(k)] = x_hat.coord(k);
  for (std::size_t l = 0; l + 1 < nodes.size(); ++l) {
    const CoeffVec frozen = u.at_node(static_cast<std::int64_t>(l));
    const double t0 = nodes[l];
    const double t1 = nodes[l + 1];
    for (std::int64_t k = 0; k < n; ++k) {
      double increment;
      try {
        increment = f.cell_integral(t0, t1, frozen, k);
      } catch (const std::exception& e) {
        throw std::runtime_error("field evaluation failed at node " + std::to_string(l) +
                                 ", coordinate " + std::to_string(k) + ": " + e.what());
      }
      values[(l + 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] =
          values[l * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)] +
          increment;
    }
  }
  return Trajectory(u.grid(), n, std::move(values), u.beyond());
}

// ---------------------------------------------------------------------------
// Step functions

StepFn::StepFn(std::vector<double> breakpoints_, std::vector<CoeffVec> cell_values_)
    : breakpoints(std::move(breakpoints_)), cell_values(std::move(cell_values_)) {
  if (breakpoints.size() != cell_values.size() + 1)
    throw std::invalid_argument("step function needs one more breakpoint than cells");
  if (breakpoints.front() != 0.0)
    throw std::invalid_argument("step function domain must start at 0");
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j)
    if (!(breakpoints[j] < breakpoints[j + 1]))
      throw std::invalid_argument("step function breakpoints must increase");
}

CoeffVec step_integral(const StepFn& s) {
  std::int64_t n = 0;
  for (const auto& v : s.cell_values) n = std::max(n, v.prefix_len());
  std::vector<long double> acc(static_cast<std::size_t>(n), 0.0L);
  Tail tail = TailZero{};
  for (std::int64_t c = 0; c < s.cells(); ++c) {
    const auto& v = s.cell_values[static_cast<std::size_t>(c)];
    const long double len = s.cell_length(c);
    for (std::int64_t k = 0; k < n; ++k)
      acc[static_cast<std::size_t>(k)] += len * static_cast<long double>(v.coord(k));
    tail = tail_add(tail, tail_scale(v.tail(), s.cell_length(c)));
  }
  std::vector<double> prefix(acc.begin(), acc.end());
  return CoeffVec(std::move(prefix), std::move(tail));
}

StepFn step_combine(double alpha, const StepFn& s, double beta, const StepFn& r) {
  if (s.breakpoints.back() != r.breakpoints.back())
    throw std::invalid_argument("step functions must share their domain");
  std::vector<double> merged;
  std::merge(s.breakpoints.begin(), s.breakpoints.end(), r.breakpoints.begin(),
             r.breakpoints.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  auto value_at = [](const StepFn& f, double t) -> const CoeffVec& {
    std::size_t c = 0;
    while (c + 1 < f.cell_values.size() &&
           t >= f.breakpoints[c + 1])
      ++c;
    return f.cell_values[c];
  };
  std::vector<CoeffVec> cells;
  cells.reserve(merged.size() - 1);
  for (std::size_t j = 0; j + 1 < merged.size(); ++j) {
    const double mid = merged[j];
    cells.push_back(alpha * value_at(s, mid) + beta * value_at(r, mid));
  }
  return StepFn(std::move(merged), std::move(cells));
}

DominatedConvergenceReport dominated_convergence_check(
    const std::vector<StepFn>& s_seq, const StepFn& limit,
    const std::vector<double>& dominators, const SpaceSpec& spec, double tolerance) {
  DominatedConvergenceReport rep;
  if (s_seq.empty()) throw std::invalid_argument("empty approximating sequence");
  const int imax = static_cast<int>(dominators.size());
  const CoeffVec limit_integral = step_integral(limit);
  rep.dominated = true;
  for (const auto& s : s_seq) {
    const CoeffVec gap_vec = step_integral(s) - limit_integral;
    std::vector<double> row;
    for (int i = 1; i <= imax; ++i)
      row.push_back(seminorm(gap_vec, i, spec).value);
    rep.gaps.push_back(std::move(row));
    for (std::int64_t c = 0; c < s.cells() && rep.dominated; ++c)
      for (int i = 1; i <= imax; ++i) {
        const auto nv = seminorm(s.cell_values[static_cast<std::size_t>(c)], i, spec);
        if (nv.value + nv.tail_bound > dominators[static_cast<std::size_t>(i - 1)]) {
          rep.dominated = false;
          rep.detail = "dominator violated by s_" + std::to_string(rep.gaps.size() - 1) +
                       " at cell " + std::to_string(c) + ", index " + std::to_string(i);
          break;
        }
      }
  }
  rep.gaps_decreasing = true;
  for (std::size_t nidx = 1; nidx < rep.gaps.size() && rep.gaps_decreasing; ++nidx)
    for (int i = 0; i < imax; ++i)
      if (rep.gaps[nidx][static_cast<std::size_t>(i)] >
          rep.gaps[nidx - 1][static_cast<std::size_t>(i)]) {
        rep.gaps_decreasing = false;
        rep.detail = "gap increased from s_" + std::to_string(nidx - 1) + " to s_" +
                     std::to_string(nidx) + " at index " + std::to_string(i + 1);
        break;
      }
  bool final_small = true;
  for (int i = 0; i < imax; ++i)
    final_small = final_small && rep.gaps.back()[static_cast<std::size_t>(i)] <= tolerance;
  rep.ok = rep.gaps_decreasing && rep.dominated && final_small;
  if (rep.ok) rep.detail = "gaps decrease and final gap is below tolerance";
  return rep;
}

}  // namespace seqode
