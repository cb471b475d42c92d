#pragma once

#include <optional>

#include "multimono/profile.hpp"
#include "multimono/quadrature.hpp"
#include "multimono/verdict.hpp"

namespace multimono {

/// Decay model f0^{(nu)}(t) = O(t^{-eps - nu delta}) with f0 = 0 on (0, a].
struct DecayParams {
  double eps = 0.0;
  double delta = 0.0;
  double a = 0.0;

  bool admissible(int d) const { return delta > 1.0 - 2.0 * eps / d; }
};

struct MembershipOptions {
  QuadratureSpec quad;
  MajorantGrid grid;
  double fit_tolerance = 0.05;   // condition C: params vs fitted exponents
  double average_margin = 0.01;  // condition C: distance from d/2
};

/// int_0^inf t^{d-1} sup_{u>=t} |f0^{(d)}(u)| dt < inf.
Verdict condition_A(const Profile& f, int d, const MembershipOptions& opt = {});

/// int_0^inf t^{dp-1} sup_{u>=t} u^{d(1-p)} |f0^{(d)}(u)| dt < inf, p in (0, 1).
Verdict condition_B(const Profile& f, int d, double p, const MembershipOptions& opt = {});

/// Binomial average 2^{-d} sum_nu C(d, nu) lambda_nu with
/// lambda_nu = eps + nu delta (delta <= 1) or nu + eps + delta - 1 (delta > 1).
double condition_C_average(int d, double eps, double delta);

/// Support and decay-exponent test. Without params, the fitted exponents and
/// the numerically found support cutoff are used.
Verdict condition_C(const Profile& f, int d, std::optional<DecayParams> params = std::nullopt,
                    const MembershipOptions& opt = {});

/// p in [1, inf]: V_d norm finite; p in (0, 1): V_{d+1} norm finite. Requires f(inf) = 0.
Verdict corollary_membership(const Profile& f, int d, double p, const MembershipOptions& opt = {});

/// V_m norm finite with m = 1 + floor(d/2) (p = 2).
Verdict proposition_p2(const Profile& f, int d, const MembershipOptions& opt = {});

/// (1/(d p)) int_0^inf t^d |f0^{(d+1)}(t)| dt.
double corollary2_bound(const Profile& f, int d, double p, const QuadratureSpec& quad = {});

/// Value of the condition B integral (+inf when divergent).
double condition_B_integral(const Profile& f, int d, double p, const MembershipOptions& opt = {});

/// alpha > 0 and alpha beta > gamma >= 0.
bool example1_classifier(double gamma, double alpha, double beta);

/// p >= 1 (including inf): 2 beta > d alpha; p in (0, 1): beta > d alpha.
bool example2_classifier(double alpha, double beta, int d, double p);

}  // namespace multimono
