#pragma once

// Numerical integration on (0, inf) with explicit finiteness decisions.
//
// Improper integrals are summed over dyadic blocks [T, 2T] outward from 1
// (and [s/2, s] inward toward 0). The growth exponent sigma of the block
// sums (log2 of the block ratio, least-squares over the last fit_blocks
// blocks) is the integrand's log-log slope plus one, so the tail converges
// iff sigma < 0. Decisions use a margin around sigma = 0:
//
//   sigma <  -margin                    converged
//   sigma >= +margin                    divergent
//   -log_band <= sigma < +margin        divergent (logarithmic growth)
//   otherwise                           inconclusive

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace multimono {

struct QuadratureSpec {
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  int max_intervals = 400;     // per adaptive call
  int max_doublings = 64;      // tail and head block limit
  int min_tail_blocks = 14;    // T = 1, 2, ..., 2^13 always visited
  int fit_blocks = 7;          // about two decades
  double slope_margin = 0.15;
  double log_band = 0.025;
};

enum class Convergence { converged, divergent, inconclusive };

std::string to_string(Convergence c);

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool ok = true;  // false if max_intervals was hit before tolerance
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) on a finite interval.
IntegralResult integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals = 400);

/// Single 15-point Kronrod rule on [a, b].
double kronrod15(const RealFn& f, double a, double b);

/// Least-squares slope of log2|B_j| against j over the last `window` blocks;
/// -inf when the last three blocks are exactly zero.
double block_growth(const std::vector<double>& blocks, int window);

/// Classifies a block-growth exponent per the table above.
Convergence classify_growth(double sigma, const QuadratureSpec& spec);

struct ImproperResult {
  double value = 0.0;  // +inf when divergent
  double error = 0.0;
  Convergence status = Convergence::converged;
  double tail_slope = 0.0;  // fitted integrand exponent toward +inf (-inf: vanishes)
  double head_slope = 0.0;  // fitted integrand exponent toward 0
  std::vector<double> cutoffs;           // T_k
  std::vector<double> truncated_values;  // integral over (lo, T_k]
};

/// Integral of f over (lo, hi); lo may be 0 and hi may be +inf. Breakpoints
/// inside the range split the adaptive subintervals.
ImproperResult integrate_improper(const RealFn& f, double lo, double hi,
                                  std::span<const double> breakpoints,
                                  const QuadratureSpec& spec = {});

/// Geometric grid used for ess-sup majorants.
struct MajorantGrid {
  double t_min = 1e-4;
  double t_max = 1e6;
  int points = 4096;
};

struct MajorantResult {
  double value = 0.0;  // +inf when divergent
  Convergence status = Convergence::converged;
  double tail_slope = 0.0;  // fitted exponent of t^k M(t) from the block sums
  double head = 0.0;        // contribution of (0, t_min)
  double tail = 0.0;        // extrapolated contribution of (t_max, inf)
  std::vector<double> cutoffs;
  std::vector<double> truncated_values;
  std::string note;
};

/// Integral over (0, inf) of t^k * sup_{u >= t} g(u), the sup taken as a
/// backward running maximum on the grid. g must be nonnegative. Extra points
/// (typically breakpoints of g) are merged into the grid.
MajorantResult integrate_majorant(const RealFn& g, double k, const MajorantGrid& grid = {},
                                  const QuadratureSpec& spec = {},
                                  std::span<const double> extra_points = {});

/// Integral over [a, b] of sup_{t <= u <= b} g(u) on a uniform grid.
double integrate_majorant_finite(const RealFn& g, double a, double b, int points = 4096);

/// Geometric grid with the given number of points per decade, including both ends.
std::vector<double> geometric_grid(double lo, double hi, double per_decade);

}  // namespace multimono
