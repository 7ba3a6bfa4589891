#include "seqode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "seqode/oracle.hpp"

namespace seqode {

void Problem::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(tol_residual > 0.0)) throw std::invalid_argument("tol_residual must be positive");
  if (grid.horizon() != T)
    throw std::invalid_argument("grid horizon does not match T");
  if (!leq(x_star, ceiling()).holds)
    throw std::invalid_argument("x_star is not below x_hat + T|C|");
}

CoeffVec Problem::ceiling() const { return x_hat + T * abs(bound_C); }

OrderInterval Problem::enclosure_box() const { return OrderInterval(x_star, ceiling()); }

std::string SolveReport::summary() const {
  std::ostringstream os;
  switch (status) {
    case SolveStatus::Converged: os << "converged"; break;
    case SolveStatus::NotConverged: os << "not converged"; break;
    case SolveStatus::Refused: os << "refused (hypothesis check failed)"; break;
  }
  os << " after " << iterations << " iterations, " << refines << " refines\n";
  os << "  coordinate residual max: " << residual.coord_max << "\n";
  os << "  seminorm residuals (i=1..8):";
  for (double r : residual.per_index) os << " " << r;
  os << "\n  monotone certificate: " << (monotone_certificate ? "true" : "false");
  os << "\n  enclosure certificate: " << (enclosure_certificate ? "true" : "false");
  return os.str();
}

namespace {

std::vector<double> hypothesis_times(double T) {
  std::vector<double> ts;
  for (int j = 0; j <= 8; ++j) ts.push_back(T * static_cast<double>(j) / 8.0);
  return ts;
}

struct IterateComparison {
  double max_increment = 0.0;
  bool nondecreasing = true;
  std::int64_t bad_node = -1, bad_coord = -1;
  double last_node_signed = 0.0;  // signed increment at final node, dominant coordinate
};

IterateComparison compare_iterates(const Trajectory& prev, const Trajectory& next) {
  IterateComparison c;
  const std::int64_t nodes = prev.n_nodes();
  const std::int64_t n = prev.n_coords();
  double best_abs = -1.0;
  for (std::int64_t j = 0; j < nodes; ++j)
    for (std::int64_t k = 0; k < n; ++k) {
      const double d = next.value(j, k) - prev.value(j, k);
      c.max_increment = std::max(c.max_increment, std::abs(d));
      if (d < 0.0 && c.nondecreasing) {
        c.nondecreasing = false;
        c.bad_node = j;
        c.bad_coord = k;
      }
      if (j == nodes - 1 && std::abs(d) > best_abs) {
        best_abs = std::abs(d);
        c.last_node_signed = d;
      }
    }
  return c;
}

// Exact enclosure check x_*k <= u_k(t_j) <= x_hat_k + t_j * |C|_k.
bool enclosure_holds(const Problem& p, const Trajectory& u) {
  const auto& nodes = u.grid().nodes();
  const std::int64_t n = u.n_coords();
  const CoeffVec absC = abs(p.bound_C);
  for (std::int64_t k = 0; k < n; ++k) {
    const double lo = p.x_star.coord(k);
    const double xh = p.x_hat.coord(k);
    const double ck = absC.coord(k);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double v = u.value(static_cast<std::int64_t>(j), k);
      if (v < lo || v > xh + nodes[j] * ck) return false;
    }
  }
  return true;
}

// Plateau: the last `window` increments all sit above tol within a factor-2
// band of one another, i.e. the iteration keeps producing the same-size
// steps without progressing.
bool plateau(const std::vector<double>& increments, double tol, int window = 5) {
  if (static_cast<int>(increments.size()) < window) return false;
  double lo = increments.back(), hi = increments.back();
  for (int j = 0; j < window; ++j) {
    const double v = increments[increments.size() - 1 - static_cast<std::size_t>(j)];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return lo > tol && hi <= 2.0 * lo;
}

}  // namespace

SolveReport solve(const Problem& p) {
  p.validate();
  SolveReport rep{Trajectory::constant(p.grid, p.N, p.x_star)};

  // Truncation honesty: coordinates >= N are pinned to the subsolution tail,
  // so a dependency reaching past N reads frozen data. Warn loudly.
  for (std::int64_t k = 0; k < p.N; ++k)
    for (std::int64_t d : p.field.depends_on(k))
      if (d >= p.N)
        rep.warnings.push_back("coordinate " + std::to_string(k) +
                               " depends on truncated coordinate " + std::to_string(d) +
                               " (>= N = " + std::to_string(p.N) + ")");

  const auto box = p.enclosure_box();
  const auto ts = hypothesis_times(p.T);
  const std::int64_t depth = std::max<std::int64_t>(p.N, 8);
  rep.hypothesis_reports.push_back(
      check_monotone(p.field, box, ts, p.hypothesis_trials, p.rng_seed, depth));
  rep.hypothesis_reports.push_back(check_bound(p.field, box, p.bound_C, ts,
                                               p.hypothesis_trials, p.rng_seed + 1, depth));
  rep.hypothesis_reports.push_back(
      check_subsolution(p.field, p.x_star, p.x_hat, p.grid, p.N));
  rep.hypothesis_reports.push_back(check_left_continuity(
      p.field, box, ts, p.hypothesis_trials, p.rng_seed + 2, 48, depth));
  bool hyp_ok = true;
  for (const auto& r : rep.hypothesis_reports) hyp_ok = hyp_ok && r.ok;
  if (!hyp_ok && !p.override_hypotheses) {
    rep.status = SolveStatus::Refused;
    return rep;
  }

  TimeGrid grid = p.grid;
  Trajectory u = Trajectory::constant(grid, p.N, p.x_star);
  rep.monotone_certificate = true;
  rep.enclosure_certificate = true;
  std::vector<double> increments;

  while (rep.iterations < p.max_iters) {
    Trajectory next = phi_apply(p.field, p.x_hat, u);
    ++rep.iterations;
    const IterateComparison cmp = compare_iterates(u, next);
    increments.push_back(cmp.max_increment);
    rep.final_node_increments.push_back(cmp.last_node_signed);
    if (!cmp.nondecreasing) {
      if (!p.override_hypotheses)
        throw MonotoneViolation(rep.iterations, cmp.bad_node, cmp.bad_coord);
      rep.monotone_certificate = false;
    }
    if (!enclosure_holds(p, next)) rep.enclosure_certificate = false;
    u = std::move(next);

    if (cmp.max_increment <= p.tol_residual) {
      // The residual of the accepted iterate is the next increment; require
      // it to be small as well so converged implies coord_max <= tol. The
      // probe only counts as an iteration when it advances the iterate.
      Trajectory probe = phi_apply(p.field, p.x_hat, u);
      const IterateComparison pc = compare_iterates(u, probe);
      if (!pc.nondecreasing) {
        if (!p.override_hypotheses)
          throw MonotoneViolation(rep.iterations + 1, pc.bad_node, pc.bad_coord);
        rep.monotone_certificate = false;
      }
      if (!enclosure_holds(p, probe)) rep.enclosure_certificate = false;
      if (pc.max_increment <= p.tol_residual) {
        rep.converged = true;
        rep.status = SolveStatus::Converged;
        break;
      }
      ++rep.iterations;
      increments.push_back(pc.max_increment);
      rep.final_node_increments.push_back(pc.last_node_signed);
      u = std::move(probe);
      continue;
    }

    if (plateau(increments, p.tol_residual) && rep.refines < p.max_refines) {
      // Grid limitation suspected: bisect and restart the ascent from the
      // subsolution. Restarting keeps the monotone certificate exact; a
      // left-constant transfer of the current iterate can dip below its own
      // Phi image at the new nodes and break the ascent.
      ++rep.refines;
      grid = refine(grid);
      u = Trajectory::constant(grid, p.N, p.x_star);
      increments.clear();
    }
  }

  Problem pg = p;
  pg.grid = u.grid();
  rep.residual = residual(pg, u);
  rep.trajectory = std::move(u);
  if (rep.converged && rep.residual.coord_max > p.tol_residual) {
    // Should be unreachable: convergence requires the probe increment, which
    // equals this residual, to be below tolerance already.
    rep.converged = false;
    rep.status = SolveStatus::NotConverged;
  }
  return rep;
}

ResidualReport residual(const Problem& p, const Trajectory& u) {
  if (!(u.grid() == p.grid))
    throw std::invalid_argument("grid mismatch");
  ResidualReport rep;
  const Trajectory pu = phi_apply(p.field, p.x_hat, u);
  const std::int64_t n = u.n_coords();
  for (std::int64_t j = 0; j < u.n_nodes(); ++j) {
    std::vector<double> diff(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
      diff[static_cast<std::size_t>(k)] = pu.value(j, k) - u.value(j, k);
      rep.coord_max = std::max(rep.coord_max, std::abs(diff[static_cast<std::size_t>(k)]));
    }
    const CoeffVec d(std::move(diff), TailZero{});
    for (int i = 1; i <= 8; ++i)
      rep.per_index[static_cast<std::size_t>(i - 1)] =
          std::max(rep.per_index[static_cast<std::size_t>(i - 1)],
                   seminorm(d, i, p.space).value);
  }
  return rep;
}

std::pair<Trajectory, ResidualReport> sup_solutions(const Problem& p,
                                                    const std::vector<Trajectory>& sols) {
  if (sols.empty()) throw std::invalid_argument("sup of empty set undefined");
  for (const auto& s : sols) {
    if (!(s.grid() == sols.front().grid()) || s.n_coords() != sols.front().n_coords())
      throw std::invalid_argument("grid mismatch");
  }
  if (!(sols.front().grid() == p.grid)) throw std::invalid_argument("grid mismatch");
  for (const auto& s : sols) {
    const auto r = residual(p, s);
    if (r.coord_max > p.tol_residual)
      throw std::invalid_argument("input residual " + std::to_string(r.coord_max) +
                                  " exceeds tolerance");
  }
  const CoeffVec upper = p.ceiling();
  const std::int64_t n = sols.front().n_coords();
  std::vector<double> values(static_cast<std::size_t>(sols.front().n_nodes() * n));
  for (std::int64_t j = 0; j < sols.front().n_nodes(); ++j) {
    std::vector<CoeffVec> at;
    at.reserve(sols.size());
    for (const auto& s : sols) at.push_back(s.at_node(j));
    const CoeffVec sup = coordwise_sup(at, upper);
    for (std::int64_t k = 0; k < n; ++k)
      values[static_cast<std::size_t>(j * n + k)] = sup.coord(k);
  }
  Trajectory out(sols.front().grid(), n, std::move(values), sols.front().beyond());
  ResidualReport r = residual(p, out);
  return {std::move(out), std::move(r)};
}

WeakDerivativeReport weak_derivative_diagnostic(const Problem& p, const Trajectory& u,
                                                double tol) {
  WeakDerivativeReport rep;
  const auto& nodes = u.grid().nodes();
  std::int64_t ok = 0;
  for (std::size_t j = 1; j + 1 < nodes.size(); ++j) {
    const CoeffVec prev = u.at_node(static_cast<std::int64_t>(j - 1));
    const CoeffVec here = u.at_node(static_cast<std::int64_t>(j));
    const CoeffVec next = u.at_node(static_cast<std::int64_t>(j + 1));
    for (std::int64_t k = 0; k < u.n_coords(); ++k) {
      const double f_prev = p.field.eval_coord(nodes[j - 1], prev, k);
      const double f_here = p.field.eval_coord(nodes[j], here, k);
      const double f_next = p.field.eval_coord(nodes[j + 1], next, k);
      // A switch inside either adjacent cell invalidates the comparison.
      if (f_prev != f_here || f_here != f_next) {
        ++rep.excluded_nodes;
        continue;
      }
      const double cd = (next.coord(k) - prev.coord(k)) / (nodes[j + 1] - nodes[j - 1]);
      ++rep.compared;
      if (std::abs(cd - f_here) <= tol) ++ok;
    }
  }
  rep.fraction_ok = rep.compared > 0
                        ? static_cast<double>(ok) / static_cast<double>(rep.compared)
                        : 1.0;
  return rep;
}

DieudonneReport dieudonne_diagnostic(double T, const std::vector<std::int64_t>& modes,
                                     std::int64_t fine_M) {
  DieudonneReport rep;
  rep.modes = modes;
  rep.inf_value = std::numeric_limits<double>::infinity();
  for (std::int64_t k : modes) {
    const double v = dieudonne_mode_solve(k, T, fine_M);
    rep.values_at_T.push_back(v);
    rep.inf_value = std::min(rep.inf_value, v);
  }
  if (modes.empty()) rep.inf_value = 0.0;
  return rep;
}

}  // namespace seqode
