#include "seqode/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace seqode {

double ScalarEventSolution::eval(double t) const {
  for (const auto& seg : segments)
    if (t <= seg.t1) return seg.eval(t);
  return segments.back().eval(t);
}

ScalarEventSolution scalar_heaviside_solve(double a, const PiecewiseConstantFn& rho,
                                           double u0, double T) {
  if (!(a > 0.0)) throw std::invalid_argument("amplitude a must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("horizon must be positive");
  ScalarEventSolution sol;
  double t = 0.0;
  double u = u0;
  double prev_slope = 0.0;
  const auto& bps = rho.breakpoints();
  const auto& vals = rho.values();
  for (std::size_t piece = 0; piece <= bps.size() && t < T; ++piece) {
    const double piece_end = piece < bps.size() ? std::min(bps[piece], T) : T;
    if (piece_end <= t) continue;
    const double eta = u + vals[piece];
    const double slope = eta > 0.0 ? a : -a;
    if (!sol.segments.empty() && slope != prev_slope) sol.switch_times.push_back(t);
    sol.segments.push_back({t, piece_end, u, slope});
    u += slope * (piece_end - t);
    t = piece_end;
    prev_slope = slope;
  }
  return sol;
}

double dieudonne_mode_solve(std::int64_t k, double T, std::int64_t fine_M) {
  if (T < 0.0) throw std::invalid_argument("horizon must be nonnegative");
  if (T == 0.0) return 0.0;
  if (fine_M < 1) throw std::invalid_argument("fine_M must be >= 1");
  const double h = T / static_cast<double>(fine_M);
  const double forcing = 1.0 / static_cast<double>(k + 1);
  double x = 0.0;
  for (std::int64_t j = 0; j < fine_M; ++j) {
    const double q = x >= 0.0 ? std::sqrt(x) : 0.0;
    x += h * (q + forcing);
  }
  return x;
}

}  // namespace seqode
