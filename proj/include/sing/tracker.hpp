#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "sing/multipoly.hpp"

namespace sing {

// n polynomial equations in n unknowns, ready for total-degree homotopy.
struct SquareSystem {
  int nvars = 0;
  std::vector<MultiPoly> equations;
  std::vector<int> declared_degrees;
};

// Builds and validates a square system; declared degrees are the symbolic
// total degrees. Throws InputError on a non-square set or an identically
// zero equation.
SquareSystem make_square_system(std::vector<MultiPoly> equations);

// Product of the declared degrees (the path count of the homotopy).
long long bezout_number(const SquareSystem& sys);

struct TrackSettings {
  double step_initial = 0.05;
  double step_min = 1e-10;
  double step_max = 0.1;
  double corrector_tol = 1e-10;
  int max_corrector_iters = 3;
  double endgame_start = 0.1;   // below this t the step is capped at t/10
  double t_final = 1e-8;        // hand off to Newton on the target here
  double infinity_threshold = 1e8;
  double dedup_radius = 1e-6;
  int max_path_steps = 10000;
  double singular_residual_tol = 1e-6;
  // A converged endpoint must polish to this relative residual. Genuine
  // isolated roots refine to the evaluation floor (~1e-15); points hovering
  // near a multiple or positive-dimensional structure plateau well above it
  // and are classified singular however small their Newton steps become.
  double polish_residual = 1e-12;
  // A simple isolated root receives exactly one path, so converged
  // endpoints that share a dedup cluster mark a path that jumped tracks at
  // a close encounter. Suspects are re-tracked with geometrically finer
  // steps for up to this many rounds.
  int retrack_rounds = 2;
  int refine_max_iters = 40;
  std::uint64_t seed = 0;       // drives gamma; start roots are fixed
  int parallelism = 1;
  void validate() const;
};

struct Solution {
  Eigen::VectorXcd point;
  double residual = 0.0;   // relative to equation coefficient norms
  double condition = 0.0;  // sigma_max/sigma_min of the endpoint Jacobian
  int cluster_size = 1;    // paths that landed here; a multiplicity hint
};

struct PathStats {
  long long converged = 0;
  long long diverged_to_infinity = 0;
  long long singular_endpoint = 0;
  long long failed = 0;
  long long total() const {
    return converged + diverged_to_infinity + singular_endpoint + failed;
  }
};

struct SolutionSet {
  std::vector<Solution> solutions;  // deduplicated regular endpoints
  PathStats path_stats;
  long long total_paths = 0;
  // Finite points of paths that ended singular (positive-dimensional
  // components, multiple roots). Deduplicated; diagnostics only.
  std::vector<Eigen::VectorXcd> singular_points;
};

// Total-degree homotopy continuation over all Bezout-many start roots of
// G_k = x_k^D_k - 1, with the gamma trick H = gamma*t*G + (1-t)*F, a
// 4th-order predictor on the Davidenko ODE and a Newton corrector. Results
// are bit-identical for any parallelism level.
SolutionSet solve(const SquareSystem& sys, const TrackSettings& settings);

struct RefineResult {
  Eigen::VectorXcd point;
  double residual = 0.0;
  bool converged = false;     // quadratic convergence observed
  double condition = 0.0;
  double last_step_ratio = 0.0;
};

// Plain Newton on the square system; keeps the best-residual iterate, so
// refinement never reports a worse residual than its input.
RefineResult newton_refine(const SquareSystem& sys, const Eigen::VectorXcd& x0,
                           double tol, int max_iter);

// Single-linkage clustering of points at the given radius. Returns clusters
// as index lists into the input, in a canonical order independent of input
// permutation and thread count.
std::vector<std::vector<int>> dedupe(const std::vector<Eigen::VectorXcd>& pts,
                                     double radius);

// Max_i |eq_i(x)| / (l1 coeff norm of eq_i * max(1,|x|_inf)^deg_i).
double relative_residual(const SquareSystem& sys, const Eigen::VectorXcd& x);

}  // namespace sing
