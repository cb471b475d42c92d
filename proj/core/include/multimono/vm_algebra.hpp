#pragma once

#include <utility>
#include <vector>

#include "multimono/monotone_check.hpp"
#include "multimono/profile.hpp"
#include "multimono/quadrature.hpp"

namespace multimono {

struct VmNorm {
  int m = 0;
  double sup_part = 0.0;
  double variation_part = 0.0;  // integral of t^m |df^{(m)}|
  double total = 0.0;           // +inf when the variation integral diverges
  double quadrature_error_estimate = 0.0;
  Convergence status = Convergence::converged;
  double tail_slope = 0.0;
  double jump_part = 0.0;  // share of variation_part from breakpoint jumps
  std::vector<double> cutoffs;
  std::vector<double> truncated_values;
};

/// sup|f| + integral over (0, inf) of t^m |f^{(m+1)}(t)| dt, plus
/// t_k^m |jump of f^{(m)}| at each breakpoint t_k.
VmNorm vm_norm(const Profile& p, int m, const QuadratureSpec& quad = {});

/// Integral of the nonincreasing majorant sup_{u >= t} |f'(u)|; +inf if divergent.
double v0star_norm(const Profile& p, const QuadratureSpec& quad = {});
MajorantResult v0star_details(const Profile& p, const QuadratureSpec& quad = {});

/// Segment norms on [0, b]: the weighted V_1 part
///   int_0^b t (1 - t/b) |df'(t)|
/// and the two-sided majorant part
///   int_0^b sup_{t <= u <= b} (|f'(u)| + |f'(b - u)|) dt.
std::pair<double, double> interval_norms(const Profile& p, double b, const QuadratureSpec& quad = {});

/// Double moving average (1/h^2) int_0^h int_0^h f(t + u1 + u2) du2 du1.
Profile steklov_smooth(const Profile& p, double h);

struct DecompositionPair {
  Profile f1;
  Profile f2;
  VmNorm norm_f;
  VmNorm norm_f1;
  VmNorm norm_f2;
  double reconstruction_error = 0.0;
  std::vector<double> test_grid;
};

/// f = f1 - f2 with
///   f1(t) = (-1)^m/m! int_t^inf (u - t)^m |df^{(m)}(u)|,
///   f2(t) = (-1)^m/m! int_t^inf (u - t)^m (|df^{(m)}| + df^{(m)})(u) - f(inf).
/// Both parts are evaluated from their own measures, so reconstruction_error
/// measures quadrature consistency. Throws DivergenceError if the V_m norm
/// is not finite and ParameterError for complex profiles.
DecompositionPair decompose(const Profile& p, int m, const QuadratureSpec& quad = {},
                            const GridSpec& test_grid = {1e-4, 1e4, 16, true});

}  // namespace multimono
