#pragma once

#include <cstdint>
#include <vector>

#include "seqode/field.hpp"

namespace seqode {

/// Exact solution of a single decoupled mode u' = a * H(u + rho(t)), u(0) = u0,
/// as contiguous affine segments. Independent of the main solver's quadrature,
/// so disagreements are attributable to the solver.
struct ScalarEventSolution {
  struct Segment {
    double t0, t1;     // segment interval
    double u0;         // value at t0
    double slope;      // +a or -a
    double eval(double t) const { return u0 + slope * (t - t0); }
  };
  std::vector<Segment> segments;
  std::vector<double> switch_times;

  double eval(double t) const;
};

/// Event-stepping integrator. Within a rho piece the sign of u + rho is
/// invariant: if u + rho > 0 then u' = +a > 0 keeps it positive, and if
/// u + rho <= 0 then u' = -a keeps it nonpositive (rho constant on the
/// piece). So segments change only at rho breakpoints and each segment is
/// exactly affine.
ScalarEventSolution scalar_heaviside_solve(double a, const PiecewiseConstantFn& rho,
                                           double u0, double T);

/// Fine-grid forward integration of x' = q(x) + 1/(k+1), x(0) = 0, with
/// q(xi) = sqrt(max(xi,0)); returns x_k(T). Nondecreasing in T.
double dieudonne_mode_solve(std::int64_t k, double T, std::int64_t fine_M);

}  // namespace seqode
