#include "multimono/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "multimono/errors.hpp"
#include "multimono/vm_algebra.hpp"

namespace multimono {
namespace {

void require_order(const Profile& f, int order, const char* op) {
  if (order > f.max_order()) {
    std::ostringstream os;
    os << op << ": " << f.descriptor() << " supports derivatives up to order " << f.max_order() << ", need "
       << order;
    throw CapabilityError(os.str());
  }
}

Verdict from_majorant(const MajorantResult& r, Condition c) {
  Verdict v;
  v.condition = c;
  v.status = status_from(r.status);
  v.evidence.cutoffs = r.cutoffs;
  v.evidence.truncated_values = r.truncated_values;
  v.evidence.fitted_exponents["tail_slope"] = r.tail_slope;
  v.evidence.parameters["integral"] = r.value;
  if (!r.note.empty()) v.evidence.notes.push_back(r.note);
  std::ostringstream os;
  os << "majorant integral " << to_string(r.status) << ", fitted tail slope " << r.tail_slope;
  v.reason = os.str();
  return v;
}

MajorantResult condition_B_majorant(const Profile& f, int d, double p, const MembershipOptions& opt) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("condition_B: p must be in (0, 1)");
  require_order(f, d, "condition_B");
  const double w = d * (1.0 - p);
  const auto bps = f.breakpoints();
  return integrate_majorant([&](double u) { return std::pow(u, w) * std::abs(f.derivative(d, u)); }, d * p - 1.0,
                            opt.grid, opt.quad, bps);
}

// Local power-law exponent -dlog|g|/dlog t between t1 and t2; +inf once |g| vanishes.
double decay_exponent(double g1, double g2, double t1, double t2) {
  if (g2 == 0.0 || g1 == 0.0) return kInf;
  return -std::log(g2 / g1) / std::log(t2 / t1);
}

bool vanishes(const Profile& f, double lo, double hi, double scale) {
  for (double t : geometric_grid(lo, hi, 16))
    if (std::abs(f(t)) > 1e-14 * scale) return false;
  return true;
}

Verdict norm_verdict(const Profile& f, int m, Condition c, const MembershipOptions& opt) {
  Verdict v;
  v.condition = c;
  v.evidence.parameters["m"] = m;
  const Complex at_inf = f.value_at_infinity();
  v.evidence.parameters["f_at_infinity"] = std::abs(at_inf);
  if (!std::isfinite(std::abs(at_inf)) || std::abs(at_inf) > 1e-8) {
    v.status = Status::fails;
    std::ostringstream os;
    os << "C0 precondition fails: |f(inf)| = " << std::abs(at_inf);
    v.reason = os.str();
    return v;
  }
  const VmNorm n = vm_norm(f, m, opt.quad);
  v.status = status_from(n.status);
  v.evidence.cutoffs = n.cutoffs;
  v.evidence.truncated_values = n.truncated_values;
  v.evidence.fitted_exponents["tail_slope"] = n.tail_slope;
  v.evidence.parameters["sup_part"] = n.sup_part;
  v.evidence.parameters["variation_part"] = n.variation_part;
  v.evidence.parameters["total"] = n.total;
  std::ostringstream os;
  os << "V_" << m << " norm " << (std::isfinite(n.total) ? "= " : "") << n.total << " ("
     << to_string(n.status) << ")";
  v.reason = os.str();
  return v;
}

bool strictly_greater(double a, double b) {
  const double tie = 8.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
  return a - b > tie;
}

}  // namespace

Verdict condition_A(const Profile& f, int d, const MembershipOptions& opt) {
  if (d < 1) throw ParameterError("condition_A: d must be >= 1");
  require_order(f, d, "condition_A");
  const auto bps = f.breakpoints();
  const auto r = integrate_majorant([&](double u) { return std::abs(f.derivative(d, u)); }, d - 1.0, opt.grid,
                                    opt.quad, bps);
  Verdict v = from_majorant(r, Condition::A);
  v.evidence.parameters["d"] = d;
  return v;
}

Verdict condition_B(const Profile& f, int d, double p, const MembershipOptions& opt) {
  if (d < 1) throw ParameterError("condition_B: d must be >= 1");
  Verdict v = from_majorant(condition_B_majorant(f, d, p, opt), Condition::B);
  v.evidence.parameters["d"] = d;
  v.evidence.parameters["p"] = p;
  return v;
}

double condition_B_integral(const Profile& f, int d, double p, const MembershipOptions& opt) {
  return condition_B_majorant(f, d, p, opt).value;
}

double condition_C_average(int d, double eps, double delta) {
  double s = 0.0;
  for (int nu = 0; nu <= d; ++nu) {
    const double lambda = delta <= 1.0 ? eps + nu * delta : (nu == 0 ? eps : nu + eps + delta - 1.0);
    s += binomial(d, nu) * lambda;
  }
  return s / std::ldexp(1.0, d);
}

Verdict condition_C(const Profile& f, int d, std::optional<DecayParams> params, const MembershipOptions& opt) {
  if (d < 1) throw ParameterError("condition_C: d must be >= 1");
  require_order(f, d, "condition_C");
  Verdict v;
  v.condition = Condition::C;

  double scale = 0.0;
  for (double t : geometric_grid(1e-6, 1e4, 16)) scale = std::max(scale, std::abs(f(t)));
  if (scale == 0.0) scale = 1.0;

  double a = 0.0;
  if (params) {
    a = params->a;
    if (!(a > 0.0) || !vanishes(f, a * 1e-6, a, scale)) {
      v.status = Status::fails;
      v.reason = "support condition: profile does not vanish on (0, a] for the given a";
      v.evidence.parameters["a"] = a;
      return v;
    }
  } else {
    for (double t : geometric_grid(1e-6, 1e4, 32)) {
      if (std::abs(f(t)) > 1e-14 * scale) break;
      a = t;
    }
    if (!(a > 0.0)) {
      v.status = Status::fails;
      v.reason = "support condition: profile does not vanish near 0";
      return v;
    }
  }
  v.evidence.parameters["a"] = a;

  const double t1 = 1e6, t2 = 1e8;
  std::vector<double> e(d + 1);
  for (int nu = 0; nu <= d; ++nu) {
    e[nu] = decay_exponent(std::abs(f.derivative(nu, t1)), std::abs(f.derivative(nu, t2)), t1, t2);
    v.evidence.fitted_exponents["e" + std::to_string(nu)] = e[nu];
  }
  const double eps_hat = e[0];
  double delta_hat = kInf;
  for (int nu = 1; nu <= d; ++nu) delta_hat = std::min(delta_hat, (e[nu] - eps_hat) / nu);
  v.evidence.fitted_exponents["eps_hat"] = eps_hat;
  v.evidence.fitted_exponents["delta_hat"] = delta_hat;

  double eps, delta;
  if (params) {
    eps = params->eps;
    delta = params->delta;
    const double tol = opt.fit_tolerance;
    bool supported = eps <= eps_hat + tol;
    for (int nu = 1; nu <= d; ++nu) supported = supported && eps + nu * delta <= e[nu] + tol * nu;
    if (!(eps > 0.0)) supported = false;
    if (!supported) {
      v.status = Status::inconclusive;
      v.reason = "fitted decay exponents do not support the given eps and delta";
      v.evidence.parameters["eps"] = eps;
      v.evidence.parameters["delta"] = delta;
      return v;
    }
  } else {
    eps = std::isfinite(eps_hat) ? eps_hat : d;
    delta = std::isfinite(delta_hat) ? delta_hat : 1.0;
    if (!(eps > 0.0)) {
      v.status = Status::fails;
      v.reason = "profile does not decay at infinity";
      return v;
    }
  }
  const double avg = condition_C_average(d, eps, delta);
  v.evidence.parameters["eps"] = eps;
  v.evidence.parameters["delta"] = delta;
  v.evidence.parameters["average"] = avg;
  v.evidence.parameters["threshold"] = 0.5 * d;
  std::ostringstream os;
  os << "binomial average " << avg << " vs d/2 = " << 0.5 * d;
  if (avg > 0.5 * d + opt.average_margin) {
    v.status = Status::holds;
  } else if (avg < 0.5 * d - opt.average_margin) {
    v.status = Status::fails;
  } else {
    v.status = Status::inconclusive;
    os << " (within margin " << opt.average_margin << ")";
  }
  v.reason = os.str();
  return v;
}

Verdict corollary_membership(const Profile& f, int d, double p, const MembershipOptions& opt) {
  if (d < 1) throw ParameterError("corollary_membership: d must be >= 1");
  if (!(p > 0.0)) throw ParameterError("corollary_membership: p must be > 0");
  const bool small_p = p < 1.0;
  Verdict v = norm_verdict(f, small_p ? d + 1 : d, small_p ? Condition::Corollary2 : Condition::Corollary1, opt);
  v.evidence.parameters["d"] = d;
  v.evidence.parameters["p"] = p;
  return v;
}

Verdict proposition_p2(const Profile& f, int d, const MembershipOptions& opt) {
  if (d < 1) throw ParameterError("proposition_p2: d must be >= 1");
  Verdict v = norm_verdict(f, 1 + d / 2, Condition::Proposition, opt);
  v.evidence.parameters["d"] = d;
  return v;
}

double corollary2_bound(const Profile& f, int d, double p, const QuadratureSpec& quad) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("corollary2_bound: p must be in (0, 1)");
  require_order(f, d + 1, "corollary2_bound");
  const Domain dom = f.domain();
  const auto r = integrate_improper([&](double t) { return std::pow(t, d) * std::abs(f.derivative(d + 1, t)); },
                                    dom.lo, dom.hi, f.breakpoints(), quad);
  if (r.status == Convergence::divergent) return kInf;
  return r.value / (d * p);
}

bool example1_classifier(double gamma, double alpha, double beta) {
  return alpha > 0.0 && gamma >= 0.0 && strictly_greater(alpha * beta, gamma);
}

bool example2_classifier(double alpha, double beta, int d, double p) {
  if (!(p > 0.0)) throw ParameterError("example2_classifier: p must be > 0");
  if (alpha < 0.0 || !(beta > 0.0)) return false;
  if (p >= 1.0) return strictly_greater(2.0 * beta, d * alpha);
  return strictly_greater(beta, d * alpha);
}

}  // namespace multimono
