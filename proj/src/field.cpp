#include "seqode/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "seqode/quadrature.hpp"
#include "seqode/rng.hpp"

namespace seqode {

// ---------------------------------------------------------------------------
// PiecewiseConstantFn

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<double> breakpoints,
                                         std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1)
    throw std::invalid_argument("piecewise fn needs one more value than breakpoints");
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j)
    if (!(breakpoints_[j] < breakpoints_[j + 1]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  if (!breakpoints_.empty() && !(breakpoints_.front() > 0.0))
    throw std::invalid_argument("breakpoints must be positive");
}

double PiecewiseConstantFn::operator()(double t) const {
  std::size_t j = 0;
  while (j < breakpoints_.size() && t >= breakpoints_[j]) ++j;
  return values_[j];
}

double PiecewiseConstantFn::integral(double t0, double t1) const {
  double s = 0.0;
  double lo = t0;
  for (std::size_t j = 0; j <= breakpoints_.size(); ++j) {
    const double hi = j < breakpoints_.size() ? breakpoints_[j]
                                              : std::numeric_limits<double>::infinity();
    const double a = std::max(lo, t0);
    const double b = std::min(hi, t1);
    if (b > a) s += values_[j] * (b - a);
    lo = hi;
    if (lo >= t1) break;
  }
  return s;
}

double PiecewiseConstantFn::step_integral(double x, double t0, double t1) const {
  double s = 0.0;
  double lo = 0.0;
  for (std::size_t j = 0; j <= breakpoints_.size(); ++j) {
    const double hi = j < breakpoints_.size() ? breakpoints_[j]
                                              : std::numeric_limits<double>::infinity();
    const double a = std::max(lo, t0);
    const double b = std::min(hi, t1);
    if (b > a) {
      const double eta = x + values_[j];
      s += (eta > 0.0 ? 1.0 : -1.0) * (b - a);
    }
    lo = hi;
    if (lo >= t1) break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Index maps

IndexMap IndexMap::identity() {
  return {"identity", [](std::int64_t k) { return k; }};
}

IndexMap IndexMap::half() {
  return {"half", [](std::int64_t k) { return k / 2; }};
}

IndexMap IndexMap::table(std::vector<std::int64_t> entries) {
  for (std::int64_t e : entries)
    if (e < 0) throw std::invalid_argument("index map entries must be >= 0");
  auto shared = std::make_shared<std::vector<std::int64_t>>(std::move(entries));
  return {"table", [shared](std::int64_t k) {
            if (k >= 0 && static_cast<std::size_t>(k) < shared->size())
              return (*shared)[static_cast<std::size_t>(k)];
            return k;  // identity beyond the table
          }};
}

// ---------------------------------------------------------------------------
// Built-in fields

namespace {
inline double heaviside(double eta) { return eta > 0.0 ? 1.0 : -1.0; }
}  // namespace

Field heaviside_field(const HeavisideFieldParams& params) {
  if (params.p < 1) throw std::invalid_argument("p must be a positive integer");
  if (!params.rho) throw std::invalid_argument("rho rule required");
  const int p = params.p;
  const auto n = params.n.map;
  const auto rho = params.rho;
  Field f;
  f.name = "heaviside(p=" + std::to_string(p) + ",n=" + params.n.name + ")";
  f.eval_coord = [p, n, rho](double t, const CoeffVec& x, std::int64_t k) {
    const double amp = std::pow(static_cast<double>(k + 1), p);
    return amp * heaviside(x.coord(n(k)) + rho(k)(t));
  };
  f.integrate_coord = [p, n, rho](double t0, double t1, const CoeffVec& x,
                                  std::int64_t k) {
    const double amp = std::pow(static_cast<double>(k + 1), p);
    return amp * rho(k).step_integral(x.coord(n(k)), t0, t1);
  };
  f.depends_on = [n](std::int64_t k) { return std::vector<std::int64_t>{n(k)}; };
  f.declared_bound = AnchorSeq::poly(1.0, p);
  f.declared_monotone = true;
  f.declared_order_left_continuous = true;
  f.piecewise_constant_in_x = true;
  return f;
}

Field dieudonne_field() {
  Field f;
  f.name = "dieudonne";
  f.eval_coord = [](double, const CoeffVec& x, std::int64_t k) {
    const double xi = x.coord(k);
    const double q = xi >= 0.0 ? std::sqrt(xi) : 0.0;
    return q + 1.0 / static_cast<double>(k + 1);
  };
  f.depends_on = [](std::int64_t k) { return std::vector<std::int64_t>{k}; };
  f.declared_bound = std::nullopt;  // no uniform C exists
  f.declared_monotone = true;
  f.declared_order_left_continuous = true;
  return f;
}

Field scalar_h_field() {
  Field f;
  f.name = "scalar-h";
  f.eval_coord = [](double, const CoeffVec& x, std::int64_t k) {
    if (k != 0) return 0.0;
    return x.coord(0) <= 1.0 ? 1.0 : -1.0;
  };
  f.depends_on = [](std::int64_t k) {
    return k == 0 ? std::vector<std::int64_t>{0} : std::vector<std::int64_t>{};
  };
  f.declared_bound = AnchorSeq::constant(1.0);
  f.declared_monotone = false;
  f.declared_order_left_continuous = true;
  f.piecewise_constant_in_x = true;
  return f;
}

Field constant_field(const CoeffVec& c) {
  Field f;
  f.name = "constant";
  f.eval_coord = [c](double, const CoeffVec&, std::int64_t k) { return c.coord(k); };
  f.depends_on = [](std::int64_t) { return std::vector<std::int64_t>{}; };
  f.declared_bound = std::nullopt;
  f.declared_monotone = true;
  f.declared_order_left_continuous = true;
  f.piecewise_constant_in_x = true;
  return f;
}

// ---------------------------------------------------------------------------
// Checkers

namespace {

// Draw a point of [lo, hi]: per-coordinate convex combination on the prefix,
// one shared combination parameter for the tail so the result stays a
// point-valued coefficient vector inside the box.
CoeffVec sample_in_box(const OrderInterval& box, std::int64_t depth,
                       std::mt19937_64& gen) {
  std::vector<double> prefix(static_cast<std::size_t>(depth));
  for (std::int64_t k = 0; k < depth; ++k) {
    const double a = box.lo.lower_coord(k);
    const double b = box.hi.upper_coord(k);
    const double u = uniform01(gen);
    prefix[static_cast<std::size_t>(k)] =
        std::clamp(a + u * (b - a), std::min(a, b), std::max(a, b));
  }
  const double alpha = uniform01(gen);
  AnchorSeq tail = add(scale(tail_lower(box.lo.tail()), 1.0 - alpha),
                       scale(tail_upper(box.hi.tail()), alpha));
  return CoeffVec(std::move(prefix), TailAnchor{tail});
}

// The box ceiling as a point-valued vector; discontinuity thresholds tend to
// sit exactly on box boundaries, so the ladder check probes it explicitly.
CoeffVec ceiling_point(const OrderInterval& box, std::int64_t depth) {
  std::vector<double> prefix(static_cast<std::size_t>(depth));
  for (std::int64_t k = 0; k < depth; ++k)
    prefix[static_cast<std::size_t>(k)] = box.hi.upper_coord(k);
  return CoeffVec(std::move(prefix), TailAnchor{tail_upper(box.hi.tail())});
}

// y >= x inside the box: push each coordinate toward the box ceiling.
CoeffVec sample_above(const CoeffVec& x, const OrderInterval& box,
                      std::int64_t depth, std::mt19937_64& gen) {
  std::vector<double> prefix(static_cast<std::size_t>(depth));
  for (std::int64_t k = 0; k < depth; ++k) {
    const double b = box.hi.upper_coord(k);
    const double xv = x.coord(k);
    const double u = uniform01(gen);
    prefix[static_cast<std::size_t>(k)] = std::clamp(xv + u * (b - xv), xv, std::max(xv, b));
  }
  return CoeffVec(std::move(prefix), x.tail());
}

}  // namespace

CheckReport check_monotone(const Field& f, const OrderInterval& box,
                           const std::vector<double>& t_samples, std::int64_t trials,
                           std::uint64_t rng_seed, std::int64_t check_depth) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CheckReport rep;
  rep.check_name = "monotonicity";
  rep.trials = trials;
  rep.seed = rng_seed;
  std::mt19937_64 gen(rng_seed);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const CoeffVec x = sample_in_box(box, check_depth, gen);
    const CoeffVec y = sample_above(x, box, check_depth, gen);
    const double t = t_samples[static_cast<std::size_t>(
        uniform_index(gen, static_cast<std::int64_t>(t_samples.size())))];
    for (std::int64_t k = 0; k < check_depth; ++k) {
      const double fx = f.eval_coord(t, x, k);
      const double fy = f.eval_coord(t, y, k);
      if (fx > fy) {
        rep.ok = false;
        rep.witness = CheckWitness{t, k, fx, fy,
                                   "f_k(t,x) > f_k(t,y) with x <= y; x_k=" +
                                       std::to_string(x.coord(k)) +
                                       " y_k=" + std::to_string(y.coord(k))};
        rep.detail = "violated at trial " + std::to_string(trial);
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.detail = "no violation in " + std::to_string(trials) + " trials";
  return rep;
}

CheckReport check_bound(const Field& f, const OrderInterval& box,
                        const CoeffVec& candidate_C,
                        const std::vector<double>& t_samples, std::int64_t trials,
                        std::uint64_t rng_seed, std::int64_t check_depth) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  CheckReport rep;
  rep.check_name = "uniform-bound";
  rep.trials = trials;
  rep.seed = rng_seed;
  std::mt19937_64 gen(rng_seed);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const CoeffVec x = sample_in_box(box, check_depth, gen);
    const double t = t_samples[static_cast<std::size_t>(
        uniform_index(gen, static_cast<std::int64_t>(t_samples.size())))];
    for (std::int64_t k = 0; k < check_depth; ++k) {
      const double fx = f.eval_coord(t, x, k);
      const double ck = candidate_C.coord(k);
      if (fx > ck) {
        rep.ok = false;
        rep.witness = CheckWitness{t, k, fx, ck, "f_k(t,x) > C_k"};
        rep.detail = "violated at trial " + std::to_string(trial);
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.detail = "no violation in " + std::to_string(trials) + " trials";
  return rep;
}

CheckReport check_subsolution(const Field& f, const CoeffVec& x_star,
                              const CoeffVec& x_hat, const TimeGrid& grid,
                              std::int64_t N) {
  CheckReport rep;
  rep.check_name = "subsolution";
  rep.trials = static_cast<std::int64_t>(grid.nodes().size());
  const Trajectory frozen = Trajectory::constant(grid, N, x_star);
  const Trajectory rhs = phi_apply(f, x_hat, frozen);
  for (std::size_t j = 0; j < grid.nodes().size(); ++j) {
    for (std::int64_t k = 0; k < N; ++k) {
      const double lhs = x_star.coord(k);
      const double r = rhs.value(static_cast<std::int64_t>(j), k);
      if (lhs > r) {
        rep.ok = false;
        rep.witness = CheckWitness{grid.nodes()[j], k, lhs, r,
                                   "x_*k > x_hat_k + integral of f(.,x_*) at node " +
                                       std::to_string(j)};
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.detail = "holds at all " + std::to_string(grid.nodes().size()) + " nodes, k < " +
               std::to_string(N);
  return rep;
}

CheckReport check_left_continuity(const Field& f, const OrderInterval& box,
                                  const std::vector<double>& t_samples,
                                  std::int64_t trials, std::uint64_t rng_seed,
                                  int ladder_len, std::int64_t check_depth) {
  if (ladder_len < 3) throw std::invalid_argument("ladder_len must be >= 3");
  CheckReport rep;
  rep.check_name = "left-continuity";
  rep.trials = trials;
  rep.seed = rng_seed;
  const double tol = f.piecewise_constant_in_x ? 0.0 : 1e-9;
  std::mt19937_64 gen(rng_seed);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const CoeffVec target =
        trial == 0 ? ceiling_point(box, check_depth) : sample_in_box(box, check_depth, gen);
    const double t = t_samples[static_cast<std::size_t>(
        uniform_index(gen, static_cast<std::int64_t>(t_samples.size())))];
    // Rungs x(j) = x' - 2^-j (x' - floor), j = 1..ladder_len: an increasing
    // ladder approaching x' geometrically from below.
    auto rung_at = [&](int j) {
      const double w = std::ldexp(1.0, -j);
      std::vector<double> prefix(static_cast<std::size_t>(check_depth));
      for (std::int64_t k = 0; k < check_depth; ++k) {
        const double gap = target.coord(k) - box.lo.lower_coord(k);
        prefix[static_cast<std::size_t>(k)] = target.coord(k) - w * gap;
      }
      return CoeffVec(std::move(prefix), target.tail());
    };
    const CoeffVec last = rung_at(ladder_len);
    for (std::int64_t k = 0; k < check_depth; ++k) {
      const double f_last = f.eval_coord(t, last, k);
      const double f_target = f.eval_coord(t, target, k);
      if (std::abs(f_last - f_target) > tol) {
        rep.ok = false;
        rep.witness = CheckWitness{t, k, f_last, f_target,
                                   "f along increasing ladder does not reach f(x')"};
        rep.detail = "violated at trial " + std::to_string(trial);
        return rep;
      }
    }
  }
  rep.ok = true;
  rep.detail = "limits match at " + std::to_string(trials) + " sampled targets";
  return rep;
}

}  // namespace seqode
