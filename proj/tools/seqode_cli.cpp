// seqode: monotone fixed-point solver for countable ODE systems with
// discontinuous, order-monotone right-hand sides in weighted sequence spaces.
//
// Subcommands:
//   check <problem.json>                 run the hypothesis checkers
//   solve <problem.json> --out <csv>     run the solver, write the trajectory
//   sup   <csv>... --problem <json> --out <csv>
//                                        coordinatewise sup of solutions
//   demo  heaviside|dieudonne|scalar-nonexistence
//
// Exit codes: 0 success, 2 hypothesis/precondition failure, 3 no convergence,
// 64 usage/parse error, 65 grid mismatch, 74 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "seqode/oracle.hpp"
#include "seqode/problem_io.hpp"
#include "seqode/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitUsage = 64;
constexpr int kExitGridMismatch = 65;
constexpr int kExitIo = 74;

void print_check(const seqode::CheckReport& r) {
  std::printf("%-16s %s", r.check_name.c_str(), r.ok ? "PASS" : "FAIL");
  if (r.seed != 0 || r.trials > 0)
    std::printf("  (trials=%lld, seed=%llu)", static_cast<long long>(r.trials),
                static_cast<unsigned long long>(r.seed));
  std::printf("\n");
  if (!r.ok && r.witness) {
    const auto& w = *r.witness;
    std::printf("    witness: t=%.17g k=%lld lhs=%.17g rhs=%.17g\n", w.t,
                static_cast<long long>(w.k), w.lhs, w.rhs);
    if (!w.description.empty()) std::printf("    %s\n", w.description.c_str());
  }
  if (!r.detail.empty()) std::printf("    %s\n", r.detail.c_str());
}

int cmd_check(const std::string& path) {
  const seqode::Problem p = seqode::load_problem(path);
  const auto box = p.enclosure_box();
  std::vector<double> ts;
  for (int j = 0; j <= 8; ++j) ts.push_back(p.T * j / 8.0);
  const std::int64_t depth = std::max<std::int64_t>(p.N, 8);
  std::vector<seqode::CheckReport> reports;
  reports.push_back(seqode::check_monotone(p.field, box, ts, p.hypothesis_trials,
                                           p.rng_seed, depth));
  reports.push_back(seqode::check_bound(p.field, box, p.bound_C, ts,
                                        p.hypothesis_trials, p.rng_seed + 1, depth));
  reports.push_back(seqode::check_subsolution(p.field, p.x_star, p.x_hat, p.grid, p.N));
  reports.push_back(seqode::check_left_continuity(p.field, box, ts, p.hypothesis_trials,
                                                  p.rng_seed + 2, 48, depth));
  bool all_ok = true;
  for (const auto& r : reports) {
    print_check(r);
    all_ok = all_ok && r.ok;
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_solve(const std::string& path, const std::string& out_csv) {
  const seqode::Problem p = seqode::load_problem(path);
  const seqode::SolveReport rep = seqode::solve(p);
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& r : rep.hypothesis_reports)
    if (!r.ok) print_check(r);
  if (rep.status == seqode::SolveStatus::Refused) {
    std::printf("refused: hypothesis checks failed and override_hypotheses is false\n");
    return kExitCheckFailed;
  }
  if (!out_csv.empty()) seqode::write_trajectory_csv(out_csv, rep.trajectory);
  std::printf("%s\n", rep.summary().c_str());
  if (!out_csv.empty()) std::printf("trajectory written to %s\n", out_csv.c_str());
  return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_sup(const std::vector<std::string>& csvs, const std::string& problem_path,
            const std::string& out_csv) {
  const seqode::Problem p = seqode::load_problem(problem_path);
  std::vector<seqode::Trajectory> sols;
  for (const auto& f : csvs)
    sols.push_back(seqode::read_trajectory_csv(f, p.x_star.tail()));
  for (const auto& s : sols) {
    if (!(s.grid() == p.grid) || s.n_coords() != p.N) {
      std::fprintf(stderr, "grid mismatch between %s and the problem file\n",
                   problem_path.c_str());
      return kExitGridMismatch;
    }
  }
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto r = seqode::residual(p, sols[i]);
    std::printf("input %s: residual coord max %.17g\n", csvs[i].c_str(), r.coord_max);
    if (r.coord_max > p.tol_residual) {
      std::printf("input residual exceeds tol_residual = %.17g\n", p.tol_residual);
      return kExitCheckFailed;
    }
  }
  const auto [sup, rep] = seqode::sup_solutions(p, sols);
  if (!out_csv.empty()) seqode::write_trajectory_csv(out_csv, sup);
  std::printf("sup residual coord max %.17g (tol %.17g)\n", rep.coord_max,
              p.tol_residual);
  if (!out_csv.empty()) std::printf("sup trajectory written to %s\n", out_csv.c_str());
  return rep.coord_max <= p.tol_residual ? kExitOk : kExitNotConverged;
}

seqode::Problem demo_heaviside_problem() {
  seqode::Problem p{seqode::SpaceSpec::power_series(),
                    seqode::heaviside_field({1, seqode::IndexMap::identity(),
                                             [](std::int64_t) {
                                               return seqode::PiecewiseConstantFn::constant(1.0);
                                             }}),
                    seqode::CoeffVec::zero(),
                    seqode::CoeffVec::from_anchor(seqode::AnchorSeq::poly(-1.0, 1)),
                    seqode::CoeffVec::from_anchor(seqode::AnchorSeq::poly(1.0, 1)),
                    1.0,
                    16,
                    seqode::TimeGrid::uniform(1.0, 256)};
  p.tol_residual = 1e-12;
  p.max_iters = 64;
  p.max_refines = 0;
  p.rng_seed = 42;
  return p;
}

int demo_heaviside() {
  std::printf("Heaviside system: u_k' = (k+1) H(u_k + 1), u_k(0) = 0, k < 16, T = 1.\n");
  std::printf("The field is nondecreasing in each coordinate and bounded above by\n");
  std::printf("C_k = k+1; x_*k = -(k+1) is a subsolution. The monotone iteration\n");
  std::printf("must converge to u_k(t) = (k+1) t.\n\n");
  const seqode::Problem p = demo_heaviside_problem();
  const seqode::SolveReport rep = seqode::solve(p);
  std::printf("%s\n", rep.summary().c_str());
  double max_err = 0.0;
  const auto& nodes = rep.trajectory.grid().nodes();
  for (std::int64_t j = 0; j < rep.trajectory.n_nodes(); ++j)
    for (std::int64_t k = 0; k < p.N; ++k)
      max_err = std::max(max_err, std::abs(rep.trajectory.value(j, k) -
                                           (k + 1) * nodes[static_cast<std::size_t>(j)]));
  std::printf("max |u_k(t_j) - (k+1) t_j| = %.17g\n", max_err);
  return (rep.converged && max_err <= 1e-12) ? kExitOk : 1;
}

int demo_dieudonne() {
  std::printf("Dieudonne's example, modified: x_k' = q(x_k) + 1/(k+1), x_k(0) = 0,\n");
  std::printf("with q the positive square root. Each mode is monotone, but no\n");
  std::printf("uniform bound C exists, and since x' >= sqrt(max(x,0)) once positive,\n");
  std::printf("every mode satisfies x_k(1) >= 1/4. The values cannot vanish as\n");
  std::printf("k -> infinity, so there is no solution decaying to zero.\n\n");
  const std::vector<std::int64_t> modes{0, 9, 99, 999};
  const auto rep = seqode::dieudonne_diagnostic(1.0, modes, 100000);
  std::printf("%8s  %22s\n", "mode k", "x_k(1)");
  for (std::size_t i = 0; i < rep.modes.size(); ++i)
    std::printf("%8lld  %22.17g\n", static_cast<long long>(rep.modes[i]),
                rep.values_at_T[i]);
  std::printf("minimum over modes: %.17g (lower bound 0.249)\n", rep.inf_value);
  return rep.inf_value >= 0.249 ? kExitOk : 1;
}

int demo_scalar_nonexistence() {
  std::printf("Scalar counterexample: x' = h(x), x(0) = 1, with h(x) = 1 for x <= 1\n");
  std::printf("and -1 for x > 1. h fails monotonicity at the threshold, and the\n");
  std::printf("integral equation has no continuous solution; the iteration must\n");
  std::printf("oscillate instead of settling.\n\n");
  seqode::Problem p{seqode::SpaceSpec::power_series(),
                    seqode::scalar_h_field(),
                    seqode::CoeffVec({1.0}),
                    seqode::CoeffVec::zero(),
                    seqode::CoeffVec({1.0}),
                    1.0,
                    1,
                    seqode::TimeGrid::uniform(1.0, 256)};
  p.tol_residual = 1e-12;
  p.max_iters = 40;
  p.max_refines = 0;
  p.override_hypotheses = true;
  p.rng_seed = 42;
  const auto box = p.enclosure_box();
  std::vector<double> ts{0.0, 0.5, 1.0};
  const auto mono = seqode::check_monotone(p.field, box, ts, 400, p.rng_seed, 1);
  print_check(mono);
  const seqode::SolveReport rep = seqode::solve(p);
  std::printf("%s\n", rep.summary().c_str());
  int alternations = 0, run = 0;
  const auto& incs = rep.final_node_increments;
  for (std::size_t m = 1; m < incs.size(); ++m) {
    if (incs[m] * incs[m - 1] < 0.0)
      ++run;
    else
      run = 0;
    alternations = std::max(alternations, run);
  }
  std::printf("final-node increment sign alternations (longest run): %d\n", alternations);
  const bool demonstrated = !mono.ok && !rep.converged && alternations >= 3;
  std::printf(demonstrated ? "nonexistence obstruction reproduced\n"
                           : "unexpected: obstruction not reproduced\n");
  return demonstrated ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone fixed-point solver for countable ODE systems in weighted "
               "sequence spaces"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "run the hypothesis checkers on a problem file");
  check->add_option("problem", check_path, "problem file (JSON)")->required();

  std::string solve_path, solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "solve a problem file");
  solve_cmd->add_option("problem", solve_path, "problem file (JSON)")->required();
  solve_cmd->add_option("--out", solve_out, "output trajectory CSV");

  std::vector<std::string> sup_csvs;
  std::string sup_problem, sup_out;
  auto* sup_cmd = app.add_subcommand("sup", "coordinatewise sup of solution CSVs");
  sup_cmd->add_option("csvs", sup_csvs, "solution CSV files")->required();
  sup_cmd->add_option("--problem", sup_problem, "problem file (JSON)")->required();
  sup_cmd->add_option("--out", sup_out, "output CSV");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "run a built-in scenario");
  demo->add_option("name", demo_name, "heaviside | dieudonne | scalar-nonexistence")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_path);
    if (solve_cmd->parsed()) return cmd_solve(solve_path, solve_out);
    if (sup_cmd->parsed()) return cmd_sup(sup_csvs, sup_problem, sup_out);
    if (demo->parsed()) {
      if (demo_name == "heaviside") return demo_heaviside();
      if (demo_name == "dieudonne") return demo_dieudonne();
      if (demo_name == "scalar-nonexistence") return demo_scalar_nonexistence();
      std::fprintf(stderr, "unknown demo '%s'\n", demo_name.c_str());
      return kExitUsage;
    }
  } catch (const seqode::ProblemFileError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
